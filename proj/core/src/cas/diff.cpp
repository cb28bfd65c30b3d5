#include <fmt/format.h>

#include "castml/cas/simplify.hpp"

namespace castml::cas {

Expr diff(const Expr& e, std::string_view x) {
  if (!depends_on(e, x)) return Expr::integer(0);
  switch (e.kind()) {
    case ExprKind::Rational:
      return Expr::integer(0);
    case ExprKind::Symbol:
      return Expr::integer(1);
    case ExprKind::Add: {
      std::vector<Expr> terms;
      for (const auto& t : e.operands()) terms.push_back(diff(t, x));
      return make_add(std::move(terms));
    }
    case ExprKind::Mul: {
      const auto ops = e.operands();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        if (!depends_on(ops[i], x)) continue;
        std::vector<Expr> factors(ops.begin(), ops.end());
        factors[i] = diff(ops[i], x);
        terms.push_back(make_mul(std::move(factors)));
      }
      return make_add(std::move(terms));
    }
    case ExprKind::Pow: {
      const Expr& u = e.base();
      const Expr& v = e.exponent();
      if (!depends_on(v, x)) {
        return make_mul({v, make_pow(u, make_add({v, Expr::integer(-1)})), diff(u, x)});
      }
      if (!depends_on(u, x)) {
        return make_mul({e, make_call(Function::Ln, u), diff(v, x)});
      }
      throw CasError(CasErrorCode::UnsupportedDerivative,
                     fmt::format("cannot differentiate {} : base and exponent both depend on {}", to_text(e), x));
    }
    case ExprKind::Call: {
      const Expr& u = e.argument();
      const Expr du = diff(u, x);
      switch (e.function()) {
        case Function::Sin:
          return make_mul({make_call(Function::Cos, u), du});
        case Function::Cos:
          return make_mul({Expr::integer(-1), make_call(Function::Sin, u), du});
        case Function::Exp:
          return make_mul({e, du});
        case Function::Ln:
          return make_mul({make_pow(u, Expr::integer(-1)), du});
        case Function::Sqrt:
          return make_mul({Expr::number(Rational(1, 2)), make_pow(e, Expr::integer(-1)), du});
        case Function::Abs:
          return make_mul({u, make_pow(e, Expr::integer(-1)), du});
      }
      break;
    }
  }
  return Expr::integer(0);
}

}  // namespace castml::cas
