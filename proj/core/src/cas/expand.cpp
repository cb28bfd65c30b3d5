#include <map>
#include <optional>

#include <fmt/format.h>

#include "castml/cas/simplify.hpp"

namespace castml::cas {

namespace {

inline constexpr std::size_t kMaxTermProducts = 4'000'000;

std::vector<Expr> terms_of(const Expr& e) {
  if (e.is(ExprKind::Add)) return {e.operands().begin(), e.operands().end()};
  return {e};
}

// Sums of monomials in plain symbols are multiplied as sparse polynomials.
// Exponent vectors are indexed by `Sparse::vars`; the value is
// scale * sum(terms) with integer coefficients.
struct Sparse {
  std::vector<std::string> vars;
  std::map<std::vector<long long>, Integer> terms;
  Rational scale = 1;
};

long long var_index(std::vector<std::string>& vars, const std::string& name) {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] == name) return static_cast<long long>(i);
  }
  vars.push_back(name);
  return static_cast<long long>(vars.size() - 1);
}

void bump(std::vector<long long>& m, long long index, long long by) {
  if (m.size() <= static_cast<std::size_t>(index)) m.resize(static_cast<std::size_t>(index) + 1, 0);
  m[static_cast<std::size_t>(index)] += by;
}

bool add_monomial_factor(const Expr& f, Rational& coef, std::vector<long long>& m, std::vector<std::string>& vars) {
  if (f.is_number()) {
    coef *= f.number();
    return true;
  }
  if (f.is(ExprKind::Symbol)) {
    bump(m, var_index(vars, f.name()), 1);
    return true;
  }
  if (f.is(ExprKind::Pow) && f.base().is(ExprKind::Symbol) && f.exponent().is_integer() && f.exponent().number() > 0 &&
      f.exponent().number() <= Rational(kMaxNodes)) {
    bump(m, var_index(vars, f.base().name()),
         static_cast<long long>(boost::multiprecision::numerator(f.exponent().number())));
    return true;
  }
  return false;
}

std::optional<Sparse> to_sparse(const Expr& e, std::vector<std::string> vars = {}) {
  std::vector<std::pair<std::vector<long long>, Rational>> raw;
  for (const auto& t : terms_of(e)) {
    Rational coef = 1;
    std::vector<long long> m;
    if (t.is(ExprKind::Mul)) {
      for (const auto& f : t.operands()) {
        if (!add_monomial_factor(f, coef, m, vars)) return std::nullopt;
      }
    } else if (!add_monomial_factor(t, coef, m, vars)) {
      return std::nullopt;
    }
    raw.emplace_back(std::move(m), std::move(coef));
  }
  Integer denominator = 1;
  for (const auto& [m, c] : raw) denominator = boost::multiprecision::lcm(denominator, boost::multiprecision::denominator(c));
  Sparse out;
  out.scale = Rational(Integer(1), denominator);
  for (auto& [m, c] : raw) {
    m.resize(vars.size(), 0);
    out.terms[std::move(m)] += boost::multiprecision::numerator(c) * (denominator / boost::multiprecision::denominator(c));
  }
  out.vars = std::move(vars);
  return out;
}

void pad(Sparse& p, std::size_t n) {
  if (p.vars.size() == n) return;
  std::map<std::vector<long long>, Integer> terms;
  for (auto& [m, c] : p.terms) {
    auto key = m;
    key.resize(n, 0);
    terms.emplace(std::move(key), c);
  }
  p.terms = std::move(terms);
}

void check_products(std::size_t a, std::size_t b) {
  if (b != 0 && a > kMaxTermProducts / b) {
    throw CasError(CasErrorCode::ExprTooLarge,
                   fmt::format("expansion needs more than {} term products", kMaxTermProducts));
  }
}

// Both operands must share `vars`.
Sparse multiply(const Sparse& a, const Sparse& b) {
  check_products(a.terms.size(), b.terms.size());
  Sparse out;
  out.vars = a.vars;
  out.scale = a.scale * b.scale;
  std::vector<long long> m(a.vars.size());
  Integer product;
  for (const auto& [ma, ca] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      product = ca * cb;
      auto [it, inserted] = out.terms.try_emplace(m, product);
      if (!inserted) {
        it->second += product;
        if (it->second == 0) out.terms.erase(it);
      }
    }
  }
  if (out.terms.size() > kMaxNodes) {
    throw CasError(CasErrorCode::ExprTooLarge, fmt::format("expansion exceeds {} terms", kMaxNodes));
  }
  return out;
}

Expr from_sparse(const Sparse& p) {
  std::vector<Expr> terms;
  terms.reserve(p.terms.size());
  for (const auto& [m, c] : p.terms) {
    if (c == 0) continue;
    std::vector<Expr> factors{Expr::number(p.scale * c)};
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] != 0) factors.push_back(make_pow(Expr::symbol(p.vars[i]), Expr::integer(m[i])));
    }
    terms.push_back(make_mul(std::move(factors)));
  }
  return make_add(std::move(terms));
}

std::optional<Expr> sparse_product(const Expr& a, const Expr& b) {
  auto sa = to_sparse(a);
  if (!sa) return std::nullopt;
  auto sb = to_sparse(b, sa->vars);
  if (!sb) return std::nullopt;
  pad(*sa, sb->vars.size());
  sa->vars = sb->vars;
  return from_sparse(multiply(*sa, *sb));
}

std::optional<Expr> sparse_power(const Expr& base, std::size_t count) {
  auto b = to_sparse(base);
  if (!b) return std::nullopt;
  Sparse result;
  result.vars = b->vars;
  result.terms.emplace(std::vector<long long>(b->vars.size(), 0), Integer(1));
  Sparse square = std::move(*b);
  for (std::size_t bits = count; bits > 0; bits >>= 1) {
    if ((bits & 1U) != 0) result = multiply(result, square);
    if (bits > 1) square = multiply(square, square);
  }
  return from_sparse(result);
}

bool expandable_factor(const Expr& f) {
  if (f.is(ExprKind::Add)) return true;
  return f.is(ExprKind::Pow) && f.base().is(ExprKind::Add) && f.exponent().is_integer() && f.exponent().number() >= 2;
}

bool needs_expansion(const Expr& p) {
  if (p.is(ExprKind::Mul)) {
    for (const auto& f : p.operands()) {
      if (expandable_factor(f)) return true;
    }
    return false;
  }
  return expandable_factor(p);
}

Expr multiply_out(const Expr& a, const Expr& b) {
  const auto ta = terms_of(a);
  const auto tb = terms_of(b);
  check_products(ta.size(), tb.size());
  if (ta.size() > 1 && tb.size() > 1) {
    if (auto fast = sparse_product(a, b)) return *fast;
  }
  std::vector<Expr> products;
  products.reserve(ta.size() * tb.size());
  for (const auto& x : ta) {
    for (const auto& y : tb) {
      Expr p = make_mul({x, y});
      // a monomial times a monomial can still hold a sum, e.g. c*(u+v)^-1 * (u+v)^2
      if (needs_expansion(p)) p = expand(p);
      products.push_back(std::move(p));
    }
  }
  return make_add(std::move(products));
}

// Number of monomials in (t_1 + ... + t_k)^n, saturating above kMaxNodes.
std::size_t multinomial_terms(std::size_t k, const Integer& n) {
  if (n > Integer(kMaxNodes)) return kMaxNodes + 1;
  const auto exponent = static_cast<std::size_t>(n);
  // C(n + k - 1, k - 1)
  double count = 1;
  for (std::size_t i = 1; i < k; ++i) {
    count = count * static_cast<double>(exponent + i) / static_cast<double>(i);
    if (count > static_cast<double>(kMaxNodes)) return kMaxNodes + 1;
  }
  return static_cast<std::size_t>(count);
}

// Runs the square-and-multiply schedule on term counts alone, so an
// oversized power fails before any arithmetic.
void estimate_power_work(std::size_t k, std::size_t count) {
  std::size_t result_terms = 1;
  std::size_t result_exp = 0;
  std::size_t square_terms = k;
  std::size_t square_exp = 1;
  std::size_t total = 0;
  for (std::size_t bits = count; bits > 0; bits >>= 1) {
    if ((bits & 1U) != 0) {
      check_products(result_terms, square_terms);
      total += result_terms * square_terms;
      result_exp += square_exp;
      result_terms = multinomial_terms(k, Integer(result_exp));
    }
    if (bits > 1) {
      check_products(square_terms, square_terms);
      total += square_terms * square_terms;
      square_exp *= 2;
      square_terms = multinomial_terms(k, Integer(square_exp));
    }
    check_products(total, 1);
  }
}

}  // namespace

Expr expand(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Rational:
    case ExprKind::Symbol:
      return e;
    case ExprKind::Add: {
      std::vector<Expr> terms;
      for (const auto& t : e.operands()) terms.push_back(expand(t));
      return make_add(std::move(terms));
    }
    case ExprKind::Mul: {
      Expr acc = Expr::integer(1);
      for (const auto& f : e.operands()) acc = multiply_out(acc, expand(f));
      return acc;
    }
    case ExprKind::Pow: {
      const Expr base = expand(e.base());
      const Expr exponent = expand(e.exponent());
      if (base.is(ExprKind::Add) && exponent.is_integer() && exponent.number() >= 2) {
        const Integer n = boost::multiprecision::numerator(exponent.number());
        if (multinomial_terms(base.operands().size(), n) > kMaxNodes) {
          throw CasError(CasErrorCode::ExprTooLarge, fmt::format("expansion exceeds {} terms", kMaxNodes));
        }
        const auto count = static_cast<std::size_t>(n);
        estimate_power_work(base.operands().size(), count);
        if (auto fast = sparse_power(base, count)) return *fast;
        // square-and-multiply keeps the intermediate sums small
        Expr result = Expr::integer(1);
        Expr square = base;
        for (std::size_t bits = count; bits > 0; bits >>= 1) {
          if ((bits & 1U) != 0) result = multiply_out(result, square);
          if (bits > 1) square = multiply_out(square, square);
        }
        return result;
      }
      Expr p = make_pow(base, exponent);
      if (p.is(ExprKind::Mul)) return expand(p);
      return p;
    }
    case ExprKind::Call:
      return make_call(e.function(), expand(e.argument()));
  }
  return e;
}

}  // namespace castml::cas
