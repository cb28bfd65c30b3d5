#include <algorithm>
#include <map>

#include <gtest/gtest.h>

#include "castml/cas/command.hpp"
#include "castml/cas/factor.hpp"
#include "castml/cas/poly.hpp"
#include "castml/cas/simplify.hpp"
#include "castml/cas/tex.hpp"
#include "oracles.hpp"

namespace castml::cas {
namespace {

Poly poly_of(std::string_view text) {
  auto p = to_poly(simplify(parse_expression(text)), "x");
  if (!p) throw std::runtime_error("not a polynomial");
  return *p;
}

Poly product(const Factorization& f) {
  Poly acc("x", {1});
  for (const auto& p : f.factors) acc = acc * p;
  return acc;
}

std::vector<int> degrees(const Factorization& f) {
  std::vector<int> d;
  for (const auto& p : f.factors) d.push_back(p.degree());
  std::sort(d.begin(), d.end());
  return d;
}

Poly from_coefficients(const testing::Coefficients& c) { return Poly("x", c); }

TEST(Factor, TenthPowerMinusOne) {
  const auto f = factor_poly(poly_of("x^10-1"));
  EXPECT_TRUE(f.complete);
  EXPECT_EQ(product(f), poly_of("x^10-1"));
  EXPECT_EQ(degrees(f), (std::vector<int>{1, 1, 4, 4}));
  EXPECT_EQ(factors_to_tex(f),
            "(x-1)\\cdot (x+1)\\cdot (x^{4}+x^{3}+x^{2}+x+1)\\cdot (x^{4}-x^{3}+x^{2}-x+1)");
  EXPECT_EQ(factors_to_text(f), "(x-1)*(x+1)*(x^4+x^3+x^2+x+1)*(x^4-x^3+x^2-x+1)");
}

TEST(Factor, CyclotomicDegreesAreTotients) {
  for (int n = 1; n <= 30; ++n) {
    const Poly p = from_coefficients(testing::binomial(n, -1));
    const auto f = factor_poly(p);
    EXPECT_EQ(product(f), p) << n;
    std::vector<int> want;
    for (int d : testing::divisors(n)) want.push_back(testing::totient(d));
    std::sort(want.begin(), want.end());
    EXPECT_EQ(degrees(f), want) << n;
    EXPECT_TRUE(f.complete) << n;
  }
}

TEST(Factor, CyclotomicPolynomialsAreMonicWithTotientDegree) {
  for (int n = 1; n <= 40; ++n) {
    const Poly c = cyclotomic(n);
    EXPECT_EQ(c.degree(), testing::totient(n)) << n;
    EXPECT_EQ(c.leading(), 1) << n;
  }
}

TEST(Factor, PowerPlusOne) {
  for (int n = 1; n <= 30; ++n) {
    const Poly p = from_coefficients(testing::binomial(n, 1));
    const auto f = factor_poly(p);
    EXPECT_EQ(product(f), p) << n;
    // x^n+1 = prod over d | 2n, d not dividing n, of Phi_d.
    std::vector<int> want;
    for (int d : testing::divisors(2 * n)) {
      if (n % d != 0) want.push_back(testing::totient(d));
    }
    std::sort(want.begin(), want.end());
    EXPECT_EQ(degrees(f), want) << n;
  }
}

TEST(Factor, RationalRoots) {
  const auto f = factor_poly(poly_of("6*x^3-11*x^2+6*x-1"));
  EXPECT_EQ(product(f), poly_of("6*x^3-11*x^2+6*x-1"));
  EXPECT_EQ(degrees(f), (std::vector<int>{1, 1, 1}));
  EXPECT_TRUE(f.complete);
}

TEST(Factor, ContentAndRepeatedFactors) {
  const auto f = factor_poly(poly_of("2*x^3-4*x^2+2*x"));
  EXPECT_EQ(product(f), poly_of("2*x^3-4*x^2+2*x"));
  EXPECT_EQ(factors_to_text(f), "2*x*(x-1)^2");
}

TEST(Factor, IrreducibleQuadraticStays) {
  const auto f = factor_poly(poly_of("x^2+1"));
  EXPECT_EQ(degrees(f), (std::vector<int>{2}));
  EXPECT_TRUE(f.complete);
}

TEST(Factor, IncompleteIsReported) {
  // (x^2+x+1)(x^2+2) has no rational roots and is no binomial.
  const Poly p = poly_of("(x^2+x+1)*(x^2+2)");
  const auto f = factor_poly(p);
  EXPECT_EQ(product(f), p);
  EXPECT_FALSE(f.complete);
  ASSERT_FALSE(f.diagnostics.empty());
  EXPECT_NE(f.diagnostics[0].find("not fully factored"), std::string::npos);
}

TEST(Factor, RandomProductsOfLinearFactors) {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> root(-9, 9);
  std::uniform_int_distribution<int> lead(1, 4);
  for (int round = 0; round < 100; ++round) {
    testing::Coefficients c{1};
    const int k = std::uniform_int_distribution<int>(1, 6)(rng);
    for (int i = 0; i < k; ++i) c = testing::schoolbook_multiply(c, {-root(rng), lead(rng)});
    const Poly p = from_coefficients(c);
    const auto f = factor_poly(p);
    EXPECT_EQ(product(f), p);
    int linear = 0;
    for (const auto& q : f.factors) linear += q.degree() == 1;
    EXPECT_EQ(linear, k);
  }
}

TEST(Factor, ConstantAndZero) {
  EXPECT_EQ(product(factor_poly(Poly("x", {7}))), Poly("x", {7}));
  EXPECT_NO_THROW(factor_poly(Poly()));
}

}  // namespace
}  // namespace castml::cas
