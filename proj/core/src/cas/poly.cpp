#include "castml/cas/poly.hpp"

#include <fmt/format.h>

#include "castml/cas/simplify.hpp"

namespace castml::cas {

namespace mp = boost::multiprecision;

namespace {
void trim(std::vector<Rational>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}
}  // namespace

Poly::Poly(std::string var, std::vector<Rational> coeffs) : variable(std::move(var)), coefficients(std::move(coeffs)) {
  trim(coefficients);
}

Poly Poly::monomial(std::string var, const Rational& c, std::size_t degree) {
  std::vector<Rational> coeffs(degree + 1);
  coeffs[degree] = c;
  return {std::move(var), std::move(coeffs)};
}

Rational Poly::evaluate(const Rational& at) const {
  Rational acc = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * at + *it;
  return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> c(std::max(a.coefficients.size(), b.coefficients.size()));
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) c[i] += a.coefficients[i];
  for (std::size_t i = 0; i < b.coefficients.size(); ++i) c[i] += b.coefficients[i];
  return {a.variable, std::move(c)};
}

Poly operator-(const Poly& a, const Poly& b) { return a + scale(b, -1); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {a.variable, {}};
  std::vector<Rational> c(a.coefficients.size() + b.coefficients.size() - 1);
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
    if (a.coefficients[i] == 0) continue;
    for (std::size_t j = 0; j < b.coefficients.size(); ++j) c[i + j] += a.coefficients[i] * b.coefficients[j];
  }
  return {a.variable, std::move(c)};
}

PolyDivision divide(const Poly& dividend, const Poly& divisor) {
  if (divisor.is_zero()) throw CasError(CasErrorCode::DivisionByZero, "polynomial division by zero");
  std::vector<Rational> rem = dividend.coefficients;
  const int dd = divisor.degree();
  std::vector<Rational> quo(std::max(0, dividend.degree() - dd + 1));
  const Rational lead = divisor.leading();
  for (int k = static_cast<int>(rem.size()) - 1; k >= dd; --k) {
    if (rem[k] == 0) continue;
    const Rational q = rem[k] / lead;
    quo[k - dd] = q;
    for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= q * divisor.coefficients[j];
  }
  return {Poly(dividend.variable, std::move(quo)), Poly(dividend.variable, std::move(rem))};
}

Rational content(const Poly& p) {
  if (p.is_zero()) return 0;
  Integer g = 0;
  Integer l = 1;
  for (const auto& c : p.coefficients) {
    if (c == 0) continue;
    g = mp::gcd(g, mp::numerator(c));
    l = mp::lcm(l, mp::denominator(c));
  }
  Rational result(abs(g), l);
  return p.leading() < 0 ? -result : result;
}

Poly scale(const Poly& p, const Rational& factor) {
  std::vector<Rational> c = p.coefficients;
  for (auto& x : c) x *= factor;
  return {p.variable, std::move(c)};
}

std::optional<Poly> to_poly(const Expr& e, const std::string& variable) {
  const Expr expanded = expand(e);
  const auto terms = expanded.is(ExprKind::Add) ? std::vector<Expr>(expanded.operands().begin(), expanded.operands().end())
                                                : std::vector<Expr>{expanded};
  std::vector<Rational> coeffs;
  for (const auto& term : terms) {
    Rational c = 1;
    std::vector<Expr> rest;
    if (term.is(ExprKind::Mul)) {
      rest.assign(term.operands().begin(), term.operands().end());
    } else {
      rest.push_back(term);
    }
    std::size_t degree = 0;
    for (const auto& f : rest) {
      if (f.is_number()) {
        c *= f.number();
      } else if (f.is(ExprKind::Symbol) && f.name() == variable) {
        degree += 1;
      } else if (f.is(ExprKind::Pow) && f.base().is(ExprKind::Symbol) && f.base().name() == variable &&
                 f.exponent().is_integer() && f.exponent().number() > 0) {
        if (f.exponent().number() > kMaxPolyDegree) {
          throw CasError(CasErrorCode::ExprTooLarge, fmt::format("polynomial degree exceeds {}", kMaxPolyDegree));
        }
        degree += static_cast<std::size_t>(mp::numerator(f.exponent().number()));
      } else {
        return std::nullopt;
      }
    }
    if (degree > static_cast<std::size_t>(kMaxPolyDegree)) {
      throw CasError(CasErrorCode::ExprTooLarge, fmt::format("polynomial degree exceeds {}", kMaxPolyDegree));
    }
    if (coeffs.size() <= degree) coeffs.resize(degree + 1);
    coeffs[degree] += c;
  }
  return Poly(variable, std::move(coeffs));
}

Expr to_expr(const Poly& p) {
  std::vector<Expr> terms;
  const Expr x = Expr::symbol(p.variable);
  for (std::size_t i = 0; i < p.coefficients.size(); ++i) {
    if (p.coefficients[i] == 0) continue;
    terms.push_back(make_mul({Expr::number(p.coefficients[i]), make_pow(x, Expr::integer(static_cast<long long>(i)))}));
  }
  return make_add(std::move(terms));
}

}  // namespace castml::cas
