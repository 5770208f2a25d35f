#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace respose {

// Sparse polynomial ring in 12 elimination variables x1..x6, y1..y6 whose
// coefficients are dense univariate polynomials in one hidden variable.
// Exponents are packed 5 bits per variable into a 64-bit key, x1 in the most
// significant field, so comparing keys compares exponent tuples
// lexicographically.

inline constexpr int kNumVars = 12;       // x1..x6 then y1..y6
inline constexpr int kMaxExponent = 31;   // 5-bit fields
inline constexpr double kDropTol = 1e-13; // relative coefficient drop tolerance

using MonomialKey = std::uint64_t;

MonomialKey monomial_of_variable(int var_index);  // 0..11
std::array<int, kNumVars> monomial_exponents(MonomialKey key);
MonomialKey monomial_from_exponents(const std::array<int, kNumVars>& e);
int monomial_total_degree(MonomialKey key);

/// Term order: graded, and within a degree the lexicographically larger
/// exponent tuple comes first. Ascending enumeration of monomials in
/// (x5, x6) is then 1, x5, x6, x5^2, x5 x6, x6^2, ...
bool monomial_less(MonomialKey a, MonomialKey b);

/// Dense polynomial in the hidden variable, coefficients ascending by power.
struct Q2Poly {
    std::vector<double> coeffs;

    Q2Poly() = default;
    explicit Q2Poly(std::vector<double> c) : coeffs(std::move(c)) { trim(); }
    static Q2Poly constant(double v) { return v == 0.0 ? Q2Poly() : Q2Poly({v}); }
    static Q2Poly variable() { return Q2Poly({0.0, 1.0}); }

    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }  // -1 if zero
    double max_abs() const;
    double eval(double q2) const;  // Horner
    void trim();                   // drop trailing exact zeros

    Q2Poly& operator+=(const Q2Poly& o);
    Q2Poly operator-() const;
    Q2Poly operator*(const Q2Poly& o) const;  // convolution
    Q2Poly operator*(double s) const;
};

/// Sparse multivariate polynomial: sorted term list monomial -> Q2Poly.
/// Terms whose coefficient magnitude falls below kDropTol times the largest
/// coefficient of the polynomial are dropped after each arithmetic operation.
class MPoly {
  public:
    using Term = std::pair<MonomialKey, Q2Poly>;

    MPoly() = default;
    static MPoly constant(Q2Poly c);
    static MPoly constant(double v) { return constant(Q2Poly::constant(v)); }
    static MPoly variable(int var_index);

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    double max_abs_coeff() const;
    int max_hidden_degree() const;

    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& o) const;

    /// Drops terms (and trailing hidden-variable coefficients) small relative
    /// to the largest coefficient.
    void prune();

    friend MPoly substitute_x_with_y(const MPoly& f, int var_index);
    friend MPoly divided_difference(const MPoly& f, int var_index);
    static MPoly from_terms(std::vector<Term> terms, bool already_sorted = false);

  private:
    std::vector<Term> terms_;  // sorted by monomial_less
};

/// Renames x_i to y_i (exponent transfer) for i in 0..5.
MPoly substitute_x_with_y(const MPoly& f, int var_index);

/// Exact divided difference (f - f[x_i -> y_i]) / (x_i - y_i), expanded
/// per term via x^a - y^a = (x - y)(x^{a-1} + x^{a-2} y + ... + y^{a-1}).
/// Never produces a remainder.
MPoly divided_difference(const MPoly& f, int var_index);

/// Evaluates at a point (12 elimination variables plus the hidden variable).
double eval(const MPoly& f, const std::array<double, kNumVars>& point, double q2);

/// Determinant of an m x m grid (m <= 7) by Laplace expansion along rows,
/// memoized over column subsets so each minor is computed once.
MPoly det_memoized_laplace(const std::vector<std::vector<MPoly>>& grid);

}  // namespace respose
