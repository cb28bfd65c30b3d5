#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "castml/cas/expr.hpp"

// Reference computations written independently of the library code they
// check. None of them calls into castml::cas beyond building expressions.
namespace castml::testing {

using Coefficients = std::vector<cas::Rational>;  // ascending degree

/// Schoolbook product, trailing zeros trimmed.
Coefficients schoolbook_multiply(const Coefficients& a, const Coefficients& b);

/// Coefficients of x^n + c.
Coefficients binomial(int n, const cas::Rational& c);

/// Euler's totient by counting coprime residues.
int totient(int n);

std::vector<int> divisors(int n);

/// (f(x+h) - f(x-h)) / 2h.
double central_difference(const std::function<double(double)>& f, double x, double h);

/// Direct evaluation of an expression tree in one variable with <cmath>.
double reference_eval(const cas::Expr& e, const std::string& var, double x);

/// Random expressions from a bounded grammar: integers and small fractions,
/// the variable x, sums, products, quotients, small integer powers and the
/// six known functions. Exponents never depend on x.
class ExprGenerator {
 public:
  struct Options {
    int max_depth = 3;
    bool functions = true;
    bool quotients = true;
    std::vector<std::string> symbols = {"x"};
  };

  explicit ExprGenerator(std::uint32_t seed) : rng_(seed) {}
  ExprGenerator(std::uint32_t seed, Options options) : rng_(seed), options_(std::move(options)) {}

  cas::Expr next() { return gen(options_.max_depth); }

 private:
  cas::Expr gen(int depth);
  cas::Expr leaf();
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::mt19937 rng_;
  Options options_;
};

}  // namespace castml::testing
