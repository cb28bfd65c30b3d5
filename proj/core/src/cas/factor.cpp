#include "castml/cas/factor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

namespace castml::cas {

namespace mp = boost::multiprecision;

namespace {

// Rational-root search is skipped when the constant or leading coefficient
// exceeds this bound, and when the candidate list grows past kMaxCandidates.
const Integer kMaxRootSearchCoefficient = Integer(1000000000000LL);
constexpr std::size_t kMaxCandidates = 20000;
// Candidate count times degree; bounds the cost of the evaluations.
constexpr std::size_t kMaxRootSearchWork = 4'000'000;

std::vector<int> divisors(int n) {
  std::vector<int> out;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

class CyclotomicCache {
 public:
  explicit CyclotomicCache(std::string variable) : variable_(std::move(variable)) {}

  const Poly& get(int n) {
    if (auto it = cache_.find(n); it != cache_.end()) return it->second;
    Poly quotient = Poly::monomial(variable_, 1, static_cast<std::size_t>(n)) - Poly(variable_, {Rational(1)});
    for (int d : divisors(n)) {
      if (d == n) continue;
      auto division = divide(quotient, get(d));
      if (!division.remainder.is_zero()) throw std::logic_error("cyclotomic division left a remainder");
      quotient = std::move(division.quotient);
    }
    return cache_.emplace(n, std::move(quotient)).first->second;
  }

 private:
  std::string variable_;
  std::map<int, Poly> cache_;
};

std::vector<long long> positive_divisors(const Integer& value) {
  const long long n = abs(value).convert_to<long long>();
  std::vector<long long> small;
  std::vector<long long> large;
  for (long long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// x^n - 1 -> (n, -1), x^n + 1 -> (n, +1) for a monic primitive polynomial.
std::optional<std::pair<int, int>> binomial_shape(const Poly& p) {
  const int n = p.degree();
  if (n < 1 || p.leading() != 1) return std::nullopt;
  const Rational& c0 = p.coefficients[0];
  if (c0 != 1 && c0 != -1) return std::nullopt;
  for (int k = 1; k < n; ++k) {
    if (p.coefficients[k] != 0) return std::nullopt;
  }
  return std::make_pair(n, c0 == 1 ? 1 : -1);
}

Poly product(const std::vector<Poly>& factors, const std::string& variable) {
  Poly acc(variable, {Rational(1)});
  for (const auto& f : factors) acc = acc * f;
  return acc;
}

}  // namespace

Poly cyclotomic(int n, const std::string& variable) {
  if (n < 1) throw CasError(CasErrorCode::InvalidArgument, "cyclotomic order must be positive");
  CyclotomicCache cache(variable);
  return cache.get(n);
}

Factorization factor_poly(const Poly& p) {
  Factorization result;
  const std::string& var = p.variable;
  if (p.degree() <= 0) {
    result.factors.push_back(p);
    return result;
  }

  const Rational c = content(p);
  Poly rest = scale(p, 1 / c);  // integer coefficients, positive leading
  if (c != 1) result.factors.push_back(Poly(var, {c}));

  // Powers of the variable.
  std::size_t zeros = 0;
  while (zeros < rest.coefficients.size() && rest.coefficients[zeros] == 0) ++zeros;
  for (std::size_t k = 0; k < zeros; ++k) result.factors.push_back(Poly(var, {Rational(0), Rational(1)}));
  rest.coefficients.erase(rest.coefficients.begin(), rest.coefficients.begin() + static_cast<std::ptrdiff_t>(zeros));

  if (const auto shape = binomial_shape(rest); shape && shape->first <= kMaxCyclotomicOrder) {
    const auto [n, sign] = *shape;
    CyclotomicCache cache(var);
    if (sign < 0) {
      for (int d : divisors(n)) result.factors.push_back(cache.get(d));
    } else {
      // x^n + 1 = (x^2n - 1) / (x^n - 1)
      for (int d : divisors(2 * n)) {
        if (n % d != 0) result.factors.push_back(cache.get(d));
      }
    }
    rest = Poly(var, {Rational(1)});
  } else if (rest.degree() >= 2) {
    const Integer a0 = mp::numerator(rest.coefficients.front());
    const Integer an = mp::numerator(rest.leading());
    if (abs(a0) > kMaxRootSearchCoefficient || abs(an) > kMaxRootSearchCoefficient) {
      result.diagnostics.push_back("coefficients too large for the rational root search");
    } else {
      std::vector<Rational> candidates;
      for (const auto& q : positive_divisors(an)) {
        for (const auto& num : positive_divisors(a0)) {
          candidates.emplace_back(Integer(num), Integer(q));
          if (candidates.size() > kMaxCandidates) break;
        }
        if (candidates.size() > kMaxCandidates) break;
      }
      if (candidates.size() > kMaxCandidates ||
          candidates.size() * static_cast<std::size_t>(rest.degree()) > kMaxRootSearchWork) {
        result.diagnostics.push_back("too many rational root candidates; search skipped");
      } else {
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const auto& r : candidates) {
          for (const Rational root : {r, Rational(-r)}) {
            while (rest.degree() >= 1 && rest.evaluate(root) == 0) {
              const Poly linear(var, {-mp::numerator(root), mp::denominator(root)});
              auto division = divide(rest, linear);
              rest = std::move(division.quotient);
              result.factors.push_back(linear);
            }
          }
        }
      }
    }
  }

  if (rest.degree() >= 1) {
    result.factors.push_back(rest);
    if (rest.degree() >= 4) {
      result.complete = false;
      result.diagnostics.push_back(
          fmt::format("not fully factored: a factor of degree {} has no rational roots", rest.degree()));
    }
  }
  if (result.factors.empty()) result.factors.push_back(Poly(var, {Rational(1)}));

  if (product(result.factors, var) != p) throw std::logic_error("factor product does not match the input");
  return result;
}

}  // namespace castml::cas
