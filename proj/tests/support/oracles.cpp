#include "oracles.hpp"

#include <cmath>
#include <numeric>

namespace castml::testing {

using cas::Expr;
using cas::ExprKind;
using cas::Function;
using cas::Rational;

Coefficients schoolbook_multiply(const Coefficients& a, const Coefficients& b) {
  if (a.empty() || b.empty()) return {};
  Coefficients out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

Coefficients binomial(int n, const Rational& c) {
  Coefficients out(static_cast<std::size_t>(n) + 1, Rational(0));
  out[0] += c;
  out[static_cast<std::size_t>(n)] += 1;
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

int totient(int n) {
  int count = 0;
  for (int k = 1; k <= n; ++k) {
    if (std::gcd(k, n) == 1) ++count;
  }
  return count;
}

std::vector<int> divisors(int n) {
  std::vector<int> out;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

double reference_eval(const Expr& e, const std::string& var, double x) {
  switch (e.kind()) {
    case ExprKind::Rational:
      return e.number().convert_to<double>();
    case ExprKind::Symbol:
      if (e.name() == var) return x;
      if (e.name() == "pi") return M_PI;
      return std::nan("");
    case ExprKind::Add: {
      double s = 0;
      for (const auto& t : e.operands()) s += reference_eval(t, var, x);
      return s;
    }
    case ExprKind::Mul: {
      double p = 1;
      for (const auto& f : e.operands()) p *= reference_eval(f, var, x);
      return p;
    }
    case ExprKind::Pow:
      return std::pow(reference_eval(e.base(), var, x), reference_eval(e.exponent(), var, x));
    case ExprKind::Call: {
      const double a = reference_eval(e.argument(), var, x);
      switch (e.function()) {
        case Function::Sin: return std::sin(a);
        case Function::Cos: return std::cos(a);
        case Function::Exp: return std::exp(a);
        case Function::Ln: return std::log(a);
        case Function::Sqrt: return std::sqrt(a);
        case Function::Abs: return std::fabs(a);
      }
    }
  }
  return std::nan("");
}

Expr ExprGenerator::leaf() {
  switch (pick(5)) {
    case 0:
      return Expr::integer(pick(9) - 4);
    case 1:
      return Expr::number(Rational(pick(7) - 3, pick(4) + 1));
    default:
      return Expr::symbol(options_.symbols[static_cast<std::size_t>(pick(static_cast<int>(options_.symbols.size())))]);
  }
}

Expr ExprGenerator::gen(int depth) {
  if (depth <= 0 || pick(4) == 0) return leaf();
  const int kinds = options_.functions ? 6 : 5;
  switch (pick(kinds)) {
    case 0:
      return Expr::add({gen(depth - 1), gen(depth - 1)});
    case 1:
      return Expr::mul({gen(depth - 1), gen(depth - 1)});
    case 2:
      return Expr::add({gen(depth - 1), Expr::mul({Expr::integer(-1), gen(depth - 1)})});
    case 3:
      if (options_.quotients) return Expr::mul({gen(depth - 1), Expr::pow(gen(depth - 1), Expr::integer(-1))});
      return Expr::mul({gen(depth - 1), gen(depth - 1)});
    case 4:
      return Expr::pow(gen(depth - 1), Expr::integer(pick(4) + 1));
    default: {
      static constexpr Function fns[] = {Function::Sin, Function::Cos, Function::Exp,
                                         Function::Ln,  Function::Sqrt, Function::Abs};
      return Expr::call(fns[pick(6)], gen(depth - 1));
    }
  }
}

}  // namespace castml::testing
