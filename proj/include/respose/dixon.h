#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "respose/geometry.h"
#include "respose/mpoly.h"

#include "json.hpp"

namespace respose {

// Elimination variable order for the resultant construction. The hidden
// variable is the first imaginary quaternion component; the real part is
// fixed to 1. This order determines which monomials survive in the pencil
// (in particular the top pure power of x5 is absent).
enum EliminationVar : int { kD1 = 0, kD2 = 1, kD3 = 2, kD4 = 3, kQ3 = 4, kQ4 = 5 };

/// The seven quadratic polynomials of the pose system: six epipolar
/// constraints in (d, q) plus the orthogonality constraint d.q = 0, with the
/// quaternion real part fixed to 1 and one imaginary component hidden inside
/// the coefficients.
struct PolySystem {
    std::array<MPoly, 7> polys;
};

/// Thrown when the pencil collection does not produce the expected column
/// structure (degenerate or invalid input configuration).
class PencilStructureError : public std::runtime_error {
  public:
    PencilStructureError(const std::string& what, int surviving_columns)
        : std::runtime_error(what), surviving_columns(surviving_columns) {}
    int surviving_columns;
};

/// Matrix pencil M(q2) = M0 + q2 M1 + ... + q2^k Mk collected from the Dixon
/// polynomial. Rows are indexed by duplicate-variable monomials, columns by
/// the surviving original-variable monomials (powers of q3, q4 only). The
/// full rectangular stack is kept; `selected_rows` names a deterministic
/// subset that forms a generically nonsingular square subsystem (27 rows in
/// general position, 23 when four matches share one camera).
struct DixonPencil {
    std::vector<Eigen::MatrixXd> stack;              // per hidden-variable power, n_rows x n_cols
    std::vector<MonomialKey> row_monomials;          // all collected rows, term order
    std::vector<std::pair<int, int>> col_monomials;  // (q3, q4) exponents per column
    std::vector<int> selected_rows;                  // ascending indices, size == rank
    int rank = 0;                                    // generic rank of the pencil

    int degree() const { return static_cast<int>(stack.size()) - 1; }
    int rows() const { return stack.empty() ? 0 : static_cast<int>(stack[0].rows()); }
    int cols() const { return stack.empty() ? 0 : static_cast<int>(stack[0].cols()); }

    Eigen::MatrixXd eval_full(double q2) const;
    Eigen::MatrixXcd eval_full(std::complex<double> q2) const;
    /// Selected rows by the leading `rank` columns: the square pencil fed to
    /// the eigenvalue solver.
    std::vector<Eigen::MatrixXd> square_coeffs() const;
    /// Column index of the monomial q3^a q4^b, or -1.
    int column_of(int a, int b) const;
};

/// Builds the seven system polynomials from six constraints. Each constraint
/// is rescaled so max(|s|, |b|) = 1 to bound pencil entry magnitudes.
PolySystem build_system(std::span<const ConstraintCoefficients> constraints);

/// The 7x7 Cayley-Dixon grid: rows 1..6 hold exact divided differences in
/// the elimination variables (taken in the fixed order d1, d2, d3, d4, q3,
/// q4), row 7 holds the polynomials with every variable duplicated. Its
/// determinant is the Dixon polynomial.
std::vector<std::vector<MPoly>> build_dixon_matrix(const PolySystem& sys);

/// Collects the Dixon polynomial into the matrix pencil: drops columns whose
/// coefficients all fall below eps_col (relative to the global maximum),
/// verifies that exactly 27 columns survive with monomials 1, q3, q4 first,
/// and selects a deterministic full-rank row subset.
/// Throws PencilStructureError when the surviving column count is not 27.
DixonPencil collect_pencil(const MPoly& delta, double eps_col = 1e-9);

/// Debug dump of the square pencil coefficient matrices as JSON
/// (array of row-major matrices), used by cross-language oracle tests.
nlohmann::json pencil_to_json(const DixonPencil& pencil);

}  // namespace respose
