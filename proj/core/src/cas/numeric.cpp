#include "castml/cas/numeric.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace castml::cas {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double to_double(const Rational& r) { return r.convert_to<double>(); }

double power(double base, const Expr& exponent, double x) {
  // Real odd roots of negative numbers: (-8)^(1/3) = -2.
  if (base < 0 && exponent.is_number() && !exponent.is_integer()) {
    const Rational& q = exponent.number();
    const Integer den = boost::multiprecision::denominator(q);
    if (den % 2 == 1) {
      const double magnitude = std::pow(-base, x);
      const bool odd_numerator = boost::multiprecision::numerator(q) % 2 != 0;
      return odd_numerator ? -magnitude : magnitude;
    }
    return kNaN;
  }
  if (base == 0 && x < 0) return kNaN;
  return std::pow(base, x);
}

double eval(const Expr& e, const Bindings& bindings) {
  switch (e.kind()) {
    case ExprKind::Rational:
      return to_double(e.number());
    case ExprKind::Symbol: {
      if (auto it = bindings.find(e.name()); it != bindings.end()) return it->second;
      if (e.name() == "pi") return std::numbers::pi;
      if (e.name() == "e") return std::numbers::e;
      throw CasError(CasErrorCode::UnboundSymbol, "no value for symbol '" + e.name() + "'");
    }
    case ExprKind::Add: {
      double sum = 0;
      for (const auto& t : e.operands()) sum += eval(t, bindings);
      return sum;
    }
    case ExprKind::Mul: {
      double product = 1;
      for (const auto& f : e.operands()) product *= eval(f, bindings);
      return product;
    }
    case ExprKind::Pow: {
      const double b = eval(e.base(), bindings);
      const double x = eval(e.exponent(), bindings);
      return power(b, e.exponent(), x);
    }
    case ExprKind::Call: {
      const double a = eval(e.argument(), bindings);
      switch (e.function()) {
        case Function::Sin: return std::sin(a);
        case Function::Cos: return std::cos(a);
        case Function::Exp: return std::exp(a);
        case Function::Ln: return a > 0 ? std::log(a) : kNaN;
        case Function::Sqrt: return a >= 0 ? std::sqrt(a) : kNaN;
        case Function::Abs: return std::fabs(a);
      }
    }
  }
  return kNaN;
}

}  // namespace

double eval_numeric(const Expr& e, const Bindings& bindings) { return eval(e, bindings); }

}  // namespace castml::cas
