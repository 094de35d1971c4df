#include <gtest/gtest.h>

#include <random>

#include "fthresh/polyring.hpp"
#include "support/oracles.hpp"

using namespace fthresh;

namespace {

Ambient xy(std::uint32_t p) { return Ambient({"x", "y"}, p); }

Polynomial random_poly(const Ambient& amb, std::mt19937& rng, unsigned terms, unsigned deg) {
  Polynomial f(amb);
  for (unsigned t = 0; t < terms; ++t) {
    std::vector<std::uint32_t> u(amb.nvars());
    for (auto& x : u) x = std::uniform_int_distribution<std::uint32_t>(0, deg)(rng);
    f = f + Polynomial::monomial(amb, Monomial::from(u), std::uniform_int_distribution<std::uint32_t>(1, amb.p() - 1)(rng));
  }
  return f;
}

}  // namespace

TEST(Ambient, Validation) {
  EXPECT_THROW(Ambient({"x", "y"}, 6), std::invalid_argument);
  EXPECT_THROW(Ambient({"x", "x"}, 5), std::invalid_argument);
  EXPECT_THROW(Ambient({}, 5), std::invalid_argument);
  EXPECT_EQ(xy(5).index_of("y"), std::optional<std::size_t>(1));
  EXPECT_FALSE(xy(5).index_of("z").has_value());
}

TEST(Parse, FrozenExamples) {
  auto amb = xy(7);
  auto f = parse_poly("x^2+y^3", amb);
  EXPECT_EQ(oracle::to_dense(f), (oracle::Dense{{{2, 0}, 1}, {{0, 3}, 1}}));
  EXPECT_EQ(oracle::to_dense(parse_poly("7*x + y", amb)), (oracle::Dense{{{0, 1}, 1}}));
  EXPECT_EQ(parse_poly("x^5+y^4+x^3*y^2", xy(11)).size(), 3u);
}

TEST(Parse, ImplicitProductsParenthesesAndSigns) {
  auto amb = xy(5);
  EXPECT_EQ(parse_poly("2xy - (x+y)^2", amb).str(), parse_poly("-x^2-y^2", amb).str());
  EXPECT_EQ(parse_poly("-1", amb).str(), "4");
  EXPECT_TRUE(parse_poly("5*x", amb).is_zero());
}

TEST(Parse, Errors) {
  auto amb = xy(5);
  EXPECT_THROW(parse_poly("x^", amb), ParseError);
  EXPECT_THROW(parse_poly("x+z", amb), ParseError);
  EXPECT_THROW(parse_poly("(x+y", amb), ParseError);
  EXPECT_THROW(parse_poly("", amb), ParseError);
}

TEST(Parse, InferVariablesNaturalOrder) {
  EXPECT_EQ(infer_variables({"x10*x2 + x1"}), (std::vector<std::string>{"x1", "x2", "x10"}));
  EXPECT_EQ(infer_variables({"y^3+x^2"}), (std::vector<std::string>{"x", "y"}));
}

TEST(Mul, FrozenExamples) {
  auto f5 = xy(5);
  EXPECT_EQ((parse_poly("x+y", f5) * parse_poly("x-y", f5)).str(), parse_poly("x^2+4*y^2", f5).str());
  EXPECT_TRUE((parse_poly("x+y", f5) * Polynomial(f5)).is_zero());
  auto f2 = xy(2);
  EXPECT_EQ(poly_pow(parse_poly("x+y", f2), 2).str(), parse_poly("x^2+y^2", f2).str());
}

TEST(Mul, MatchesNaiveProduct) {
  std::mt19937 rng(11);
  for (std::uint32_t p : {2u, 3u, 7u, 101u}) {
    auto amb = xy(p);
    for (int k = 0; k < 30; ++k) {
      auto a = random_poly(amb, rng, 1 + k % 9, 6);
      auto b = random_poly(amb, rng, 1 + (k * 7) % 90, 9);
      ASSERT_EQ(oracle::to_dense(a * b), oracle::mul(oracle::to_dense(a), oracle::to_dense(b), p));
    }
  }
}

TEST(Mul, ExponentOverflowThrows) {
  auto amb = xy(3);
  auto big = Polynomial::monomial(amb, Monomial::var(0, 4000000000u));
  EXPECT_THROW(big * big, std::overflow_error);
}

TEST(Pow, FrozenExamples) {
  auto f5 = xy(5);
  EXPECT_EQ(poly_pow(parse_poly("x^2+y^3", f5), 5).str(), parse_poly("x^10+y^15", f5).str());
  EXPECT_EQ(poly_pow(parse_poly("x^2+y^3", f5), 0).str(), "1");
  auto g = poly_pow(parse_poly("x+y", f5), 4);
  EXPECT_EQ(oracle::to_dense(g),
            (oracle::Dense{{{4, 0}, 1}, {{3, 1}, 4}, {{2, 2}, 1}, {{1, 3}, 4}, {{0, 4}, 1}}));
}

TEST(Pow, MatchesRepeatedMultiplication) {
  std::mt19937 rng(5);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    auto amb = xy(p);
    for (int k = 0; k < 8; ++k) {
      auto f = random_poly(amb, rng, 3, 3);
      unsigned r = 1 + k * 3;
      ASSERT_EQ(oracle::to_dense(poly_pow(f, r)), oracle::power(oracle::to_dense(f), r, 2, p)) << f.str() << "^" << r;
    }
  }
}

TEST(Frobenius, FrozenExamples) {
  EXPECT_EQ(frobenius_scale(parse_poly("x+y", xy(3)), 1).str(), parse_poly("x^3+y^3", xy(3)).str());
  EXPECT_EQ(frobenius_scale(parse_poly("x^2*y", xy(5)), 2).str(), parse_poly("x^50*y^25", xy(5)).str());
}

TEST(Frobenius, AgreesWithPower) {
  std::mt19937 rng(3);
  int count = 0;
  for (std::uint32_t p : {3u, 7u})
    for (int k = 0; k < 10; ++k, ++count) {
      auto amb = xy(p);
      auto f = random_poly(amb, rng, 4, 4);
      ASSERT_EQ(frobenius_scale(f, 1).str(), poly_pow(f, p).str());
    }
  EXPECT_EQ(count, 20);
}

TEST(Polynomial, CanonicalString) {
  auto amb = xy(7);
  EXPECT_EQ(parse_poly("y^3 + 3 + x^2", amb).str(), "y^3+x^2+3");
  EXPECT_EQ(Polynomial(amb).str(), "0");
}

TEST(IntPoly, LosesTermsModP) {
  auto ip = parse_int_poly("2*x^2 + 3*y", {"x", "y"});
  EXPECT_TRUE(ip.loses_terms_mod(2));
  EXPECT_TRUE(ip.loses_terms_mod(3));
  EXPECT_FALSE(ip.loses_terms_mod(5));
}
