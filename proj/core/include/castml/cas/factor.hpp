#pragma once

#include <string>
#include <vector>

#include "castml/cas/poly.hpp"

namespace castml::cas {

struct Factorization {
  /// Product equals the input exactly. A constant factor, when not 1, comes
  /// first; repeated factors appear once per multiplicity.
  std::vector<Poly> factors;
  /// False when a factor of degree >= 4 is left that the supported methods
  /// could not split further.
  bool complete = true;
  std::vector<std::string> diagnostics;
};

/// Largest n for which x^n - 1 and x^n + 1 are split into cyclotomic factors.
inline constexpr int kMaxCyclotomicOrder = 64;

/// Cyclotomic polynomial of order n, by exact division of x^n - 1 by the
/// cyclotomic polynomials of the proper divisors of n.
Poly cyclotomic(int n, const std::string& variable = "x");

/// Factors over Q: powers of the variable, x^n +- 1 through cyclotomic
/// polynomials (n <= 64), then rational roots. Anything left of degree >= 4
/// is returned as one factor with a diagnostic.
Factorization factor_poly(const Poly& p);

}  // namespace castml::cas
