#include "castml/cas/tex.hpp"

#include <array>
#include <cctype>

#include "castml/cas/poly.hpp"

namespace castml::cas {

namespace mp = boost::multiprecision;

namespace {

constexpr std::array kGreek = {"alpha", "beta",  "gamma", "delta", "epsilon", "zeta",  "eta", "theta",
                               "iota",  "kappa", "lambda", "mu",   "nu",      "xi",    "pi",  "rho",
                               "sigma", "tau",   "upsilon", "phi", "chi",     "psi",   "omega"};

std::string symbol_tex(const std::string& name) {
  for (std::string_view g : kGreek) {
    if (g == name) return "\\" + name;
  }
  return name;
}

std::string integer_text(const Integer& n) { return n.str(); }

std::string rational_tex(const Rational& r) {
  const Integer num = mp::numerator(r);
  const Integer den = mp::denominator(r);
  if (den == 1) return integer_text(num);
  const std::string frac = "\\frac{" + integer_text(abs(num)) + "}{" + integer_text(den) + "}";
  return num < 0 ? "-" + frac : frac;
}

bool negative_number(const Expr& e) { return e.is_number() && e.number() < 0; }

std::string tex(const Expr& e);

// Operand of a product, parenthesized when a sum or a signed number.
std::string factor_tex(const Expr& f) {
  if (f.is(ExprKind::Add) || negative_number(f) || (f.is_number() && !f.is_integer())) return "(" + tex(f) + ")";
  if (f.is(ExprKind::Mul)) return "(" + tex(f) + ")";
  return tex(f);
}

std::string join_product(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += "\\cdot ";
    out += parts[i];
  }
  return out;
}

std::string base_tex(const Expr& b) {
  if (b.is(ExprKind::Symbol)) return tex(b);
  if (b.is_number() && b.is_integer() && b.number() >= 0) return tex(b);
  if (b.is(ExprKind::Call) && (b.function() == Function::Sqrt || b.function() == Function::Abs)) return tex(b);
  return "(" + tex(b) + ")";
}

std::string power_tex(const Expr& base, const Expr& exponent) {
  if (exponent.is_one()) return factor_tex(base);
  return base_tex(base) + "^{" + tex(exponent) + "}";
}

std::string mul_tex(const Expr& e) {
  Rational coef = 1;
  std::vector<Expr> numerator;
  std::vector<Expr> denominator;
  for (const auto& f : e.operands()) {
    if (f.is_number() && coef == 1 && numerator.empty() && denominator.empty()) {
      coef = f.number();
    } else if (f.is(ExprKind::Pow) && negative_number(f.exponent())) {
      denominator.push_back(Expr::pow(f.base(), Expr::number(-f.exponent().number())));
    } else {
      numerator.push_back(f);
    }
  }
  const bool negative = coef < 0;
  const std::string sign = negative ? "-" : "";
  if (negative) coef = -coef;

  auto render = [](const std::vector<Expr>& fs) {
    std::vector<std::string> parts;
    for (const auto& f : fs) {
      parts.push_back(f.is(ExprKind::Pow) ? power_tex(f.base(), f.exponent()) : factor_tex(f));
    }
    return join_product(parts);
  };

  if (!denominator.empty()) {
    std::string num = render(numerator);
    const Integer cn = mp::numerator(coef);
    const Integer cd = mp::denominator(coef);
    if (cn != 1 || num.empty()) num = num.empty() ? integer_text(cn) : integer_text(cn) + "\\cdot " + num;
    std::string den = render(denominator);
    if (cd != 1) den = integer_text(cd) + "\\cdot " + den;
    return sign + "\\frac{" + num + "}{" + den + "}";
  }
  std::string rest = render(numerator);
  if (coef == 1) return sign + (rest.empty() ? "1" : rest);
  std::string c = rational_tex(coef);
  if (rest.empty()) return sign + c;
  const bool needs_dot = std::isdigit(static_cast<unsigned char>(rest.front())) || rest.front() == '-' ||
                         rest.rfind("\\frac", 0) == 0;
  return sign + c + (needs_dot ? "\\cdot " : "") + rest;
}

std::string add_tex(const Expr& e) {
  std::string out;
  bool first = true;
  for (const auto& t : e.operands()) {
    std::string s = tex(t);
    if (!first && (s.empty() || s.front() != '-')) out += '+';
    out += s;
    first = false;
  }
  return out;
}

std::string call_tex(const Expr& e) {
  const std::string arg = tex(e.argument());
  switch (e.function()) {
    case Function::Sqrt:
      return "\\sqrt{" + arg + "}";
    case Function::Abs:
      return "\\left|" + arg + "\\right|";
    default:
      return "\\" + std::string(to_string(e.function())) + "(" + arg + ")";
  }
}

std::string tex(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Rational:
      return rational_tex(e.number());
    case ExprKind::Symbol:
      return symbol_tex(e.name());
    case ExprKind::Add:
      return add_tex(e);
    case ExprKind::Mul:
      return mul_tex(e);
    case ExprKind::Pow:
      if (negative_number(e.exponent())) return mul_tex(Expr::mul({e}));
      return power_tex(e.base(), e.exponent());
    case ExprKind::Call:
      return call_tex(e);
  }
  return {};
}

struct FactorGroup {
  Expr expr;
  bool multi_term = false;
  int multiplicity = 1;
};

template <typename Render>
std::string render_factors(const Factorization& f, Render render, const std::string& times,
                           const std::string& open_exp, const std::string& close_exp) {
  std::optional<Rational> constant;
  std::vector<FactorGroup> groups;
  for (const auto& p : f.factors) {
    if (p.degree() <= 0) {
      constant = constant.value_or(Rational(1)) * p.leading();
      continue;
    }
    Expr e = to_expr(p);
    if (!groups.empty() && groups.back().expr == e) {
      ++groups.back().multiplicity;
      continue;
    }
    const bool multi = e.is(ExprKind::Add);
    groups.push_back({std::move(e), multi, 1});
  }
  if (groups.empty()) return render(Expr::number(constant.value_or(Rational(1))));

  const bool bare_single = groups.size() == 1 && groups.front().multiplicity == 1 && !constant;
  std::string out;
  if (constant) {
    if (*constant == -1) {
      out = "-";
    } else {
      out = render(Expr::number(*constant)) + times;
    }
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const auto& g = groups[i];
    if (i) out += times;
    std::string body = render(g.expr);
    const bool wrap = g.multi_term ? !bare_single : g.multiplicity > 1 && g.expr.is(ExprKind::Pow);
    if (wrap) body = "(" + body + ")";
    out += body;
    if (g.multiplicity > 1) out += open_exp + std::to_string(g.multiplicity) + close_exp;
  }
  return out;
}

}  // namespace

std::string expr_to_tex(const Expr& e) { return tex(e); }

std::string factors_to_tex(const Factorization& f) {
  return render_factors(f, [](const Expr& e) { return tex(e); }, "\\cdot ", "^{", "}");
}

std::string factors_to_text(const Factorization& f) {
  return render_factors(f, [](const Expr& e) { return to_text(e); }, "*", "^", "");
}

}  // namespace castml::cas
