#include "respose/dixon.h"

#include <algorithm>
#include <map>

namespace respose {

namespace {

// Quaternion with polynomial components, for expanding the Hamilton products
// of the constraint equations symbolically over the elimination variables.
struct QuatPoly {
    std::array<MPoly, 4> c;  // (w; x, y, z)
};

QuatPoly hamilton(const QuatPoly& a, const QuatPoly& b) {
    QuatPoly r;
    r.c[0] = a.c[0] * b.c[0] - a.c[1] * b.c[1] - a.c[2] * b.c[2] - a.c[3] * b.c[3];
    r.c[1] = a.c[0] * b.c[1] + a.c[1] * b.c[0] + a.c[2] * b.c[3] - a.c[3] * b.c[2];
    r.c[2] = a.c[0] * b.c[2] + a.c[2] * b.c[0] + a.c[3] * b.c[1] - a.c[1] * b.c[3];
    r.c[3] = a.c[0] * b.c[3] + a.c[3] * b.c[0] + a.c[1] * b.c[2] - a.c[2] * b.c[1];
    return r;
}

QuatPoly conjugate(const QuatPoly& a) {
    return {a.c[0], -a.c[1], -a.c[2], -a.c[3]};
}

QuatPoly pure_numeric(const Vec3& v) {
    return {MPoly(), MPoly::constant(v.x()), MPoly::constant(v.y()), MPoly::constant(v.z())};
}

}  // namespace

PolySystem build_system(std::span<const ConstraintCoefficients> constraints) {
    if (constraints.size() != 6)
        throw std::invalid_argument("build_system expects exactly 6 constraints");

    // q = (1, q2, q3, q4) with q2 hidden in the coefficients; d = (d1..d4).
    QuatPoly q{MPoly::constant(1.0), MPoly::constant(Q2Poly::variable()), MPoly::variable(kQ3),
               MPoly::variable(kQ4)};
    QuatPoly d{MPoly::variable(kD1), MPoly::variable(kD2), MPoly::variable(kD3),
               MPoly::variable(kD4)};
    const QuatPoly qc = conjugate(q);

    PolySystem sys;
    for (int k = 0; k < 6; ++k) {
        ConstraintCoefficients c = constraints[k];
        const double scale = std::max(c.s.norm(), c.b.norm());
        if (scale <= 0.0) throw std::invalid_argument("degenerate constraint (s = b = 0)");
        c.s /= scale;
        c.b /= scale;

        const QuatPoly p = pure_numeric(c.p);
        const QuatPoly dpq = hamilton(hamilton(d, p), qc);
        const QuatPoly qpq = hamilton(hamilton(q, p), qc);
        MPoly f;
        for (int i = 0; i < 3; ++i) {
            f = f + MPoly::constant(c.s[i]) * dpq.c[1 + i] +
                MPoly::constant(c.b[i]) * qpq.c[1 + i];
        }
        sys.polys[k] = std::move(f);
    }
    // d.q = 0 keeps the translation quaternion pure.
    sys.polys[6] = MPoly::variable(kD1) * q.c[0] + MPoly::variable(kD2) * q.c[1] +
                   MPoly::variable(kD3) * q.c[2] + MPoly::variable(kD4) * q.c[3];
    return sys;
}

std::vector<std::vector<MPoly>> build_dixon_matrix(const PolySystem& sys) {
    std::vector<std::vector<MPoly>> grid(7, std::vector<MPoly>(7));
    std::array<MPoly, 7> cur;
    for (int j = 0; j < 7; ++j) cur[j] = sys.polys[j];
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 7; ++j) {
            grid[i][j] = divided_difference(cur[j], i);
            cur[j] = substitute_x_with_y(cur[j], i);
        }
    }
    for (int j = 0; j < 7; ++j) grid[6][j] = cur[j];  // fully duplicated row
    return grid;
}

Eigen::MatrixXd DixonPencil::eval_full(double q2) const {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(rows(), cols());
    double p = 1.0;
    for (const auto& Mi : stack) {
        M += p * Mi;
        p *= q2;
    }
    return M;
}

Eigen::MatrixXcd DixonPencil::eval_full(std::complex<double> q2) const {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(rows(), cols());
    std::complex<double> p = 1.0;
    for (const auto& Mi : stack) {
        M += p * Mi;
        p *= q2;
    }
    return M;
}

std::vector<Eigen::MatrixXd> DixonPencil::square_coeffs() const {
    std::vector<Eigen::MatrixXd> out;
    out.reserve(stack.size());
    for (const auto& Mi : stack) {
        Eigen::MatrixXd S(rank, rank);
        for (int r = 0; r < rank; ++r) S.row(r) = Mi.row(selected_rows[r]).head(rank);
        out.push_back(std::move(S));
    }
    return out;
}

int DixonPencil::column_of(int a, int b) const {
    for (int i = 0; i < static_cast<int>(col_monomials.size()); ++i)
        if (col_monomials[i].first == a && col_monomials[i].second == b) return i;
    return -1;
}

DixonPencil collect_pencil(const MPoly& delta, double eps_col) {
    if (delta.is_zero()) throw PencilStructureError("Dixon polynomial is identically zero", 0);

    // Split each term key into (duplicate-variable part, original-variable part).
    constexpr MonomialKey kXMask = ~((MonomialKey(1) << (5 * 6)) - 1);
    std::map<MonomialKey, int, bool (*)(MonomialKey, MonomialKey)> row_index(monomial_less);
    std::map<MonomialKey, int, bool (*)(MonomialKey, MonomialKey)> col_index(monomial_less);
    for (const auto& [key, coeff] : delta.terms()) {
        row_index.emplace(key & ~kXMask, 0);
        col_index.emplace(key & kXMask, 0);
    }
    int idx = 0;
    for (auto& [k, v] : row_index) v = idx++;
    idx = 0;
    for (auto& [k, v] : col_index) v = idx++;

    const int n_rows = static_cast<int>(row_index.size());
    const int n_cols_raw = static_cast<int>(col_index.size());

    int max_deg = 0;
    double global_max = 0.0;
    for (const auto& [key, coeff] : delta.terms()) {
        global_max = std::max(global_max, coeff.max_abs());
    }
    // Hidden-variable degree with coefficients below the drop scale ignored.
    for (const auto& [key, coeff] : delta.terms()) {
        for (int k = static_cast<int>(coeff.coeffs.size()) - 1; k >= 0; --k) {
            if (std::abs(coeff.coeffs[k]) > 1e-12 * global_max) {
                max_deg = std::max(max_deg, k);
                break;
            }
        }
    }

    std::vector<Eigen::MatrixXd> raw(max_deg + 1,
                                     Eigen::MatrixXd::Zero(n_rows, n_cols_raw));
    std::vector<double> col_max(n_cols_raw, 0.0);
    for (const auto& [key, coeff] : delta.terms()) {
        const int r = row_index[key & ~kXMask];
        const int c = col_index[key & kXMask];
        for (int k = 0; k < static_cast<int>(coeff.coeffs.size()) && k <= max_deg; ++k) {
            raw[k](r, c) = coeff.coeffs[k];
            col_max[c] = std::max(col_max[c], std::abs(coeff.coeffs[k]));
        }
    }

    std::vector<int> keep_cols;
    for (int c = 0; c < n_cols_raw; ++c)
        if (col_max[c] > eps_col * global_max) keep_cols.push_back(c);

    if (static_cast<int>(keep_cols.size()) != 27) {
        throw PencilStructureError(
            "pencil collection produced " + std::to_string(keep_cols.size()) +
                " surviving columns instead of 27 (degenerate configuration?)",
            static_cast<int>(keep_cols.size()));
    }

    DixonPencil pencil;
    pencil.stack.assign(max_deg + 1, Eigen::MatrixXd::Zero(n_rows, 27));
    for (int k = 0; k <= max_deg; ++k)
        for (int c = 0; c < 27; ++c) pencil.stack[k].col(c) = raw[k].col(keep_cols[c]);

    pencil.row_monomials.resize(n_rows);
    for (const auto& [k, v] : row_index) pencil.row_monomials[v] = k;
    std::vector<MonomialKey> col_keys(n_cols_raw);
    for (const auto& [k, v] : col_index) col_keys[v] = k;
    for (int c : keep_cols) {
        const auto e = monomial_exponents(col_keys[c]);
        pencil.col_monomials.push_back({e[kQ3], e[kQ4]});
    }

    // Deterministic row selection: pivoted QR of the transposed evaluation at
    // fixed probe values; the probe with the larger numerical rank wins.
    const double probes[2] = {0.7310533, -1.1173089};
    int best_rank = 0;
    std::vector<int> best_rows;
    for (double p : probes) {
        const Eigen::MatrixXd E = pencil.eval_full(p);
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(E.transpose());
        const auto& Rd = qr.matrixR();
        const double d0 = std::abs(Rd(0, 0));
        int rank = 0;
        const int maxr = static_cast<int>(std::min(E.rows(), E.cols()));
        for (int i = 0; i < maxr; ++i) {
            if (std::abs(Rd(i, i)) > 1e-9 * d0) rank = i + 1;
        }
        if (rank > best_rank) {
            best_rank = rank;
            best_rows.assign(qr.colsPermutation().indices().data(),
                             qr.colsPermutation().indices().data() + rank);
        }
    }
    if (best_rank == 0)
        throw PencilStructureError("pencil evaluates to zero at the probe values", 27);
    std::sort(best_rows.begin(), best_rows.end());
    pencil.rank = best_rank;
    pencil.selected_rows = std::move(best_rows);
    return pencil;
}

nlohmann::json pencil_to_json(const DixonPencil& pencil) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["size"] = pencil.rank;
    j["degree"] = pencil.degree();
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& [a, b] : pencil.col_monomials) cols.push_back({a, b});
    j["col_monomials"] = cols;
    nlohmann::json mats = nlohmann::json::array();
    for (const auto& Mi : pencil.square_coeffs()) {
        nlohmann::json m = nlohmann::json::array();
        for (int r = 0; r < Mi.rows(); ++r)
            for (int c = 0; c < Mi.cols(); ++c) m.push_back(Mi(r, c));
        mats.push_back(std::move(m));
    }
    j["matrices"] = mats;
    return j;
}

}  // namespace respose
