#pragma once

#include <optional>
#include <string>
#include <vector>

#include "castml/cas/expr.hpp"

namespace castml::cas {

/// Dense univariate polynomial over Q. Coefficients are in ascending degree
/// with no trailing zeros; the zero polynomial has no coefficients.
struct Poly {
  std::string variable = "x";
  std::vector<Rational> coefficients;

  Poly() = default;
  Poly(std::string var, std::vector<Rational> coeffs);

  static Poly monomial(std::string var, const Rational& c, std::size_t degree);

  [[nodiscard]] bool is_zero() const { return coefficients.empty(); }
  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  [[nodiscard]] Rational leading() const { return is_zero() ? Rational(0) : coefficients.back(); }
  [[nodiscard]] Rational evaluate(const Rational& at) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) = default;
};

struct PolyDivision {
  Poly quotient;
  Poly remainder;
};

/// Euclidean division; throws DivisionByZero for a zero divisor.
PolyDivision divide(const Poly& dividend, const Poly& divisor);

/// Positive rational c such that p/c has coprime integer coefficients; its
/// sign follows the leading coefficient. Zero for the zero polynomial.
Rational content(const Poly& p);
Poly scale(const Poly& p, const Rational& factor);

/// Largest degree accepted when converting expressions to polynomials.
inline constexpr int kMaxPolyDegree = 10000;

/// Reads an expression as a polynomial in `variable`, after expansion.
/// Returns nullopt when it is not one (other symbols, negative or
/// non-integer powers, function calls).
std::optional<Poly> to_poly(const Expr& e, const std::string& variable);

/// Canonical expression for `p` (descending degree).
Expr to_expr(const Poly& p);

}  // namespace castml::cas
