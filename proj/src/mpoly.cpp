#include "respose/mpoly.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace respose {

namespace {
constexpr int kFieldBits = 5;
constexpr MonomialKey kFieldMask = (1u << kFieldBits) - 1;

int field_shift(int var_index) { return kFieldBits * (kNumVars - 1 - var_index); }

int get_exp(MonomialKey key, int var_index) {
    return static_cast<int>((key >> field_shift(var_index)) & kFieldMask);
}

MonomialKey set_exp(MonomialKey key, int var_index, int e) {
    const int sh = field_shift(var_index);
    key &= ~(kFieldMask << sh);
    key |= static_cast<MonomialKey>(e) << sh;
    return key;
}
}  // namespace

MonomialKey monomial_of_variable(int var_index) { return set_exp(0, var_index, 1); }

std::array<int, kNumVars> monomial_exponents(MonomialKey key) {
    std::array<int, kNumVars> e{};
    for (int i = 0; i < kNumVars; ++i) e[i] = get_exp(key, i);
    return e;
}

MonomialKey monomial_from_exponents(const std::array<int, kNumVars>& e) {
    MonomialKey key = 0;
    for (int i = 0; i < kNumVars; ++i) {
        if (e[i] < 0 || e[i] > kMaxExponent) throw std::invalid_argument("exponent out of range");
        key = set_exp(key, i, e[i]);
    }
    return key;
}

int monomial_total_degree(MonomialKey key) {
    int d = 0;
    for (int i = 0; i < kNumVars; ++i) d += get_exp(key, i);
    return d;
}

bool monomial_less(MonomialKey a, MonomialKey b) {
    const int da = monomial_total_degree(a), db = monomial_total_degree(b);
    if (da != db) return da < db;
    return a > b;
}

double Q2Poly::max_abs() const {
    double m = 0.0;
    for (double c : coeffs) m = std::max(m, std::abs(c));
    return m;
}

double Q2Poly::eval(double q2) const {
    double v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * q2 + *it;
    return v;
}

void Q2Poly::trim() {
    while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
}

Q2Poly& Q2Poly::operator+=(const Q2Poly& o) {
    if (o.coeffs.size() > coeffs.size()) coeffs.resize(o.coeffs.size(), 0.0);
    for (std::size_t i = 0; i < o.coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    trim();
    return *this;
}

Q2Poly Q2Poly::operator-() const {
    Q2Poly r = *this;
    for (double& c : r.coeffs) c = -c;
    return r;
}

Q2Poly Q2Poly::operator*(const Q2Poly& o) const {
    if (is_zero() || o.is_zero()) return {};
    Q2Poly r;
    r.coeffs.assign(coeffs.size() + o.coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const double a = coeffs[i];
        if (a == 0.0) continue;
        for (std::size_t j = 0; j < o.coeffs.size(); ++j) r.coeffs[i + j] += a * o.coeffs[j];
    }
    r.trim();
    return r;
}

Q2Poly Q2Poly::operator*(double s) const {
    Q2Poly r = *this;
    for (double& c : r.coeffs) c *= s;
    r.trim();
    return r;
}

MPoly MPoly::constant(Q2Poly c) {
    MPoly f;
    if (!c.is_zero()) f.terms_.push_back({0, std::move(c)});
    return f;
}

MPoly MPoly::variable(int var_index) {
    MPoly f;
    f.terms_.push_back({monomial_of_variable(var_index), Q2Poly::constant(1.0)});
    return f;
}

double MPoly::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [key, c] : terms_) m = std::max(m, c.max_abs());
    return m;
}

int MPoly::max_hidden_degree() const {
    int d = -1;
    for (const auto& [key, c] : terms_) d = std::max(d, c.degree());
    return d;
}

MPoly MPoly::from_terms(std::vector<Term> terms, bool already_sorted) {
    MPoly f;
    f.terms_ = std::move(terms);
    if (!already_sorted) {
        std::sort(f.terms_.begin(), f.terms_.end(),
                  [](const Term& a, const Term& b) { return monomial_less(a.first, b.first); });
    }
    f.prune();
    return f;
}

void MPoly::prune() {
    const double tol = kDropTol * max_abs_coeff();
    std::vector<Term> kept;
    kept.reserve(terms_.size());
    for (auto& [key, c] : terms_) {
        while (!c.coeffs.empty() && std::abs(c.coeffs.back()) <= tol) c.coeffs.pop_back();
        if (!c.coeffs.empty() && c.max_abs() > tol) kept.push_back({key, std::move(c)});
    }
    terms_ = std::move(kept);
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() ||
            (i < terms_.size() && monomial_less(terms_[i].first, o.terms_[j].first))) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || monomial_less(o.terms_[j].first, terms_[i].first)) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Q2Poly c = terms_[i].second;
            c += o.terms_[j].second;
            if (!c.is_zero()) r.terms_.push_back({terms_[i].first, std::move(c)});
            ++i, ++j;
        }
    }
    r.prune();
    return r;
}

MPoly MPoly::operator-() const {
    MPoly r = *this;
    for (auto& [key, c] : r.terms_) c = -c;
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::unordered_map<MonomialKey, Q2Poly> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : o.terms_) {
            acc[ka + kb] += ca * cb;  // packed fields add without carry while exponents stay small
        }
    }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [k, c] : acc) {
        if (!c.is_zero()) terms.push_back({k, std::move(c)});
    }
    return from_terms(std::move(terms));
}

MPoly substitute_x_with_y(const MPoly& f, int var_index) {
    std::unordered_map<MonomialKey, Q2Poly> acc;
    for (const auto& [key, c] : f.terms_) {
        const int a = get_exp(key, var_index);
        MonomialKey k2 = key;
        if (a > 0) {
            k2 = set_exp(k2, var_index, 0);
            k2 = set_exp(k2, 6 + var_index, get_exp(k2, 6 + var_index) + a);
        }
        acc[k2] += c;
    }
    std::vector<MPoly::Term> terms;
    for (auto& [k, c] : acc)
        if (!c.is_zero()) terms.push_back({k, std::move(c)});
    return MPoly::from_terms(std::move(terms));
}

MPoly divided_difference(const MPoly& f, int var_index) {
    std::unordered_map<MonomialKey, Q2Poly> acc;
    for (const auto& [key, c] : f.terms_) {
        const int a = get_exp(key, var_index);
        if (a == 0) continue;  // constant in x_i, cancels exactly
        // x^a - y^a contributes x^{a-1-k} y^k for k = 0..a-1
        for (int k = 0; k < a; ++k) {
            MonomialKey k2 = set_exp(key, var_index, a - 1 - k);
            k2 = set_exp(k2, 6 + var_index, get_exp(k2, 6 + var_index) + k);
            acc[k2] += c;
        }
    }
    std::vector<MPoly::Term> terms;
    for (auto& [k, c] : acc)
        if (!c.is_zero()) terms.push_back({k, std::move(c)});
    return MPoly::from_terms(std::move(terms));
}

double eval(const MPoly& f, const std::array<double, kNumVars>& point, double q2) {
    double total = 0.0;
    for (const auto& [key, c] : f.terms()) {
        double v = c.eval(q2);
        const auto e = monomial_exponents(key);
        for (int i = 0; i < kNumVars; ++i) {
            for (int k = 0; k < e[i]; ++k) v *= point[i];
        }
        total += v;
    }
    return total;
}

MPoly det_memoized_laplace(const std::vector<std::vector<MPoly>>& grid) {
    const int m = static_cast<int>(grid.size());
    if (m == 0) return MPoly::constant(1.0);
    if (m > 7) throw std::invalid_argument("det_memoized_laplace supports size <= 7");
    for (const auto& row : grid)
        if (static_cast<int>(row.size()) != m) throw std::invalid_argument("grid must be square");

    // minors[mask] = det of rows 0..popcount(mask)-1, columns in mask
    std::vector<MPoly> minors(std::size_t(1) << m);
    minors[0] = MPoly::constant(1.0);

    // process masks in order of increasing popcount
    std::vector<std::vector<std::uint32_t>> by_count(m + 1);
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask)
        by_count[__builtin_popcount(mask)].push_back(mask);

    for (int k = 1; k <= m; ++k) {
        for (std::uint32_t mask : by_count[k]) {
            MPoly acc;
            int pos = 0;
            for (int col = 0; col < m; ++col) {
                if (!(mask & (1u << col))) continue;
                const MPoly& entry = grid[k - 1][col];
                if (!entry.is_zero()) {
                    const MPoly term = entry * minors[mask & ~(1u << col)];
                    acc = ((k - 1 + pos) % 2 == 0) ? acc + term : acc - term;
                }
                ++pos;
            }
            minors[mask] = std::move(acc);
        }
    }
    return minors[(1u << m) - 1];
}

}  // namespace respose
