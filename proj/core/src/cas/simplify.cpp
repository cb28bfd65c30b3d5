#include "castml/cas/simplify.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace castml::cas {

namespace {

namespace mp = boost::multiprecision;

constexpr std::size_t kMaxPowerBits = std::size_t{1} << 20;

void check_size(std::size_t n) {
  if (n > kMaxNodes) throw CasError(CasErrorCode::ExprTooLarge, fmt::format("expression exceeds {} nodes", kMaxNodes));
}

std::size_t bit_length(const Integer& n) { return n == 0 ? 1 : mp::msb(abs(n)) + 1; }

Rational rational_power(const Rational& base, const Rational& exponent) {
  const Integer n = mp::numerator(exponent);
  const Integer magnitude = abs(n);
  const std::size_t base_bits = std::max(bit_length(mp::numerator(base)), bit_length(mp::denominator(base)));
  if (magnitude > Integer(kMaxPowerBits) || static_cast<std::size_t>(magnitude) * base_bits > kMaxPowerBits) {
    throw CasError(CasErrorCode::ExprTooLarge, "exact power is too large");
  }
  const auto e = static_cast<unsigned>(magnitude);
  Rational result(mp::pow(mp::numerator(base), e), mp::pow(mp::denominator(base), e));
  if (n < 0) result = 1 / result;
  return result;
}

// A term `c*rest` split into its rational coefficient and the rest.
std::pair<Rational, Expr> split_coefficient(const Expr& term) {
  if (term.is(ExprKind::Mul) && term.operands()[0].is_number()) {
    const auto ops = term.operands();
    if (ops.size() == 2) return {ops[0].number(), ops[1]};
    return {ops[0].number(), Expr::mul(std::vector<Expr>(ops.begin() + 1, ops.end()))};
  }
  return {Rational(1), term};
}

Expr with_coefficient(const Rational& c, const Expr& rest) {
  if (c == 1) return rest;
  if (rest.is(ExprKind::Mul)) {
    std::vector<Expr> ops{Expr::number(c)};
    ops.insert(ops.end(), rest.operands().begin(), rest.operands().end());
    return Expr::mul(std::move(ops));
  }
  return Expr::mul({Expr::number(c), rest});
}

// Polynomial-style degree used to order the terms of a sum.
Rational term_degree(const Expr& rest) {
  auto factor_degree = [](const Expr& f) -> Rational {
    if (f.is(ExprKind::Pow) && f.exponent().is_number()) return f.exponent().number();
    if (f.is_number()) return 0;
    return 1;
  };
  if (rest.is(ExprKind::Mul)) {
    Rational d = 0;
    for (const auto& f : rest.operands()) d += factor_degree(f);
    return d;
  }
  return factor_degree(rest);
}

bool term_less(const Expr& a, const Expr& b) {
  const auto [ca, ra] = split_coefficient(a);
  const auto [cb, rb] = split_coefficient(b);
  const Rational da = term_degree(ra);
  const Rational db = term_degree(rb);
  if (da != db) return da > db;
  if (const int c = compare(ra, rb); c != 0) return c < 0;
  return ca < cb;
}

// g such that sum/g has coprime integer coefficients and a positive first
// coefficient.
Rational add_content(const Expr& sum) {
  Integer numerators = 0;
  Integer denominators = 1;
  Rational first = 0;
  for (const auto& t : sum.operands()) {
    const Rational c = t.is_number() ? t.number() : split_coefficient(t).first;
    if (first == 0) first = c;
    numerators = mp::gcd(numerators, Integer(abs(mp::numerator(c))));
    denominators = mp::lcm(denominators, mp::denominator(c));
  }
  Rational g(numerators, denominators);
  return first < 0 ? Rational(-g) : g;
}

// Term order survives scaling: distinct terms never differ only by coefficient.
Expr scale_add(const Expr& sum, const Rational& k) {
  std::vector<Expr> terms;
  terms.reserve(sum.operands().size());
  for (const auto& t : sum.operands()) {
    if (t.is_number()) {
      terms.push_back(Expr::number(t.number() * k));
    } else {
      const auto [c, rest] = split_coefficient(t);
      terms.push_back(with_coefficient(c * k, rest));
    }
  }
  return Expr::add(std::move(terms));
}

bool is_perfect_square(const Integer& n, Integer& root) {
  if (n < 0) return false;
  root = mp::sqrt(n);
  return root * root == n;
}

}  // namespace

Expr make_add(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  flat.reserve(terms.size());
  for (auto& t : terms) {
    if (t.is(ExprKind::Add)) {
      flat.insert(flat.end(), t.operands().begin(), t.operands().end());
    } else {
      flat.push_back(std::move(t));
    }
  }
  check_size(flat.size());

  Rational constant = 0;
  std::vector<std::pair<Expr, Rational>> collected;
  for (const auto& t : flat) {
    if (t.is_number()) {
      constant += t.number();
      continue;
    }
    auto [c, rest] = split_coefficient(t);
    collected.emplace_back(std::move(rest), std::move(c));
  }
  std::stable_sort(collected.begin(), collected.end(),
                   [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });

  std::vector<Expr> out;
  for (std::size_t k = 0; k < collected.size();) {
    Rational c = collected[k].second;
    std::size_t j = k + 1;
    while (j < collected.size() && compare(collected[j].first, collected[k].first) == 0) c += collected[j++].second;
    if (c != 0) out.push_back(with_coefficient(c, collected[k].first));
    k = j;
  }
  std::sort(out.begin(), out.end(), term_less);
  if (constant != 0) out.push_back(Expr::number(constant));
  if (out.empty()) return Expr::integer(0);
  if (out.size() == 1) return out.front();
  return Expr::add(std::move(out));
}

Expr make_mul(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  flat.reserve(factors.size());
  for (auto& f : factors) {
    if (f.is(ExprKind::Mul)) {
      flat.insert(flat.end(), f.operands().begin(), f.operands().end());
    } else {
      flat.push_back(std::move(f));
    }
  }
  check_size(flat.size());

  Rational coef = 1;
  std::vector<std::pair<Expr, Expr>> powers;  // base, exponent
  for (const auto& f : flat) {
    if (f.is_number()) {
      coef *= f.number();
    } else if (f.is(ExprKind::Add)) {
      const Rational g = add_content(f);
      coef *= g;
      powers.emplace_back(g == 1 ? f : scale_add(f, 1 / g), Expr::integer(1));
    } else if (f.is(ExprKind::Pow)) {
      powers.emplace_back(f.base(), f.exponent());
    } else {
      powers.emplace_back(f, Expr::integer(1));
    }
  }
  if (coef == 0) return Expr::integer(0);
  std::stable_sort(powers.begin(), powers.end(),
                   [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });

  std::vector<Expr> out;
  bool reflatten = false;
  for (std::size_t k = 0; k < powers.size();) {
    std::vector<Expr> exponents{powers[k].second};
    std::size_t j = k + 1;
    while (j < powers.size() && compare(powers[j].first, powers[k].first) == 0) exponents.push_back(powers[j++].second);
    const Expr& base = powers[k].first;
    Expr p = base;
    if (exponents.size() > 1) {
      p = make_pow(base, make_add(std::move(exponents)));
    } else if (!exponents.front().is_one()) {
      p = make_pow(base, exponents.front());
    }
    if (p.is_number()) {
      coef *= p.number();
    } else {
      if (p.is(ExprKind::Mul)) reflatten = true;
      out.push_back(std::move(p));
    }
    k = j;
  }
  if (coef == 0) return Expr::integer(0);
  if (reflatten) {
    out.push_back(Expr::number(coef));
    return make_mul(std::move(out));
  }
  std::sort(out.begin(), out.end(), ExprLess{});
  if (out.empty()) return Expr::number(coef);
  if (coef == 1 && out.size() == 1) return out.front();
  if (out.size() == 1 && out.front().is(ExprKind::Add)) return scale_add(out.front(), coef);  // c*(a+b) -> c*a+c*b
  if (coef != 1) out.insert(out.begin(), Expr::number(coef));
  return Expr::mul(std::move(out));
}

Expr make_pow(Expr base, Expr exponent) {
  if (exponent.is_number()) {
    const Rational& r = exponent.number();
    if (r == 0) return Expr::integer(1);
    if (r == 1) return base;
    const bool integral = exponent.is_integer();
    if (integral && base.is(ExprKind::Add)) {
      const Rational g = add_content(base);
      if (g != 1) {
        return make_mul({Expr::number(rational_power(g, r)), make_pow(scale_add(base, 1 / g), std::move(exponent))});
      }
    }
    if (base.is_number()) {
      const Rational& b = base.number();
      if (b == 0) {
        if (r < 0) throw CasError(CasErrorCode::DivisionByZero, "division by zero");
        return Expr::integer(0);
      }
      if (b == 1) return Expr::integer(1);
      if (integral) return Expr::number(rational_power(b, r));
      return Expr::pow(std::move(base), std::move(exponent));
    }
    if (integral && base.is(ExprKind::Pow)) {
      return make_pow(base.base(), make_mul({base.exponent(), exponent}));
    }
    if (integral && base.is(ExprKind::Mul)) {
      std::vector<Expr> parts;
      for (const auto& f : base.operands()) parts.push_back(make_pow(f, exponent));
      return make_mul(std::move(parts));
    }
    return Expr::pow(std::move(base), std::move(exponent));
  }
  if (base.is_one()) return base;
  return Expr::pow(std::move(base), std::move(exponent));
}

Expr make_call(Function fn, Expr argument) {
  switch (fn) {
    case Function::Sin:
      if (argument.is_zero()) return Expr::integer(0);
      break;
    case Function::Cos:
      if (argument.is_zero()) return Expr::integer(1);
      break;
    case Function::Exp:
      if (argument.is_zero()) return Expr::integer(1);
      if (argument.is(ExprKind::Call) && argument.function() == Function::Ln) return argument.argument();
      break;
    case Function::Ln:
      if (argument.is_one()) return Expr::integer(0);
      if (argument.is(ExprKind::Call) && argument.function() == Function::Exp) return argument.argument();
      break;
    case Function::Sqrt:
      if (argument.is_number() && argument.number() >= 0) {
        Integer rn;
        Integer rd;
        if (is_perfect_square(mp::numerator(argument.number()), rn) &&
            is_perfect_square(mp::denominator(argument.number()), rd)) {
          return Expr::number(Rational(rn, rd));
        }
      }
      break;
    case Function::Abs:
      if (argument.is_number()) return Expr::number(abs(argument.number()));
      if (argument.is(ExprKind::Call) && argument.function() == Function::Abs) return argument;
      break;
  }
  return Expr::call(fn, std::move(argument));
}

Expr negate(const Expr& e) { return make_mul({Expr::integer(-1), e}); }

Expr simplify(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Rational:
    case ExprKind::Symbol:
      return e;
    case ExprKind::Add:
    case ExprKind::Mul: {
      std::vector<Expr> ops;
      ops.reserve(e.operands().size());
      for (const auto& op : e.operands()) ops.push_back(simplify(op));
      return e.is(ExprKind::Add) ? make_add(std::move(ops)) : make_mul(std::move(ops));
    }
    case ExprKind::Pow:
      return make_pow(simplify(e.base()), simplify(e.exponent()));
    case ExprKind::Call:
      return make_call(e.function(), simplify(e.argument()));
  }
  return e;
}

}  // namespace castml::cas
