#include <gtest/gtest.h>

#include <random>

#include "fthresh/exactnum.hpp"
#include "support/oracles.hpp"

using namespace fthresh;

namespace {

Rational q(long long n, long long d = 1) { return Rational(BigInt(n), BigInt(d)); }

}  // namespace

TEST(Rational, CanonicalForm) {
  EXPECT_EQ(q(10, 12).str(), "5/6");
  EXPECT_EQ(q(-4, 2).str(), "-2");
  EXPECT_EQ(q(3, -9).str(), "-1/3");
  EXPECT_THROW(q(1, 0), std::domain_error);
}

TEST(Rational, FloorCeilOnNegatives) {
  EXPECT_EQ(q(-7, 2).floor(), -4);
  EXPECT_EQ(q(-7, 2).ceil(), -3);
  EXPECT_EQ(q(7, 2).floor(), 3);
  EXPECT_EQ(q(7, 2).ceil(), 4);
  EXPECT_EQ(q(6, 2).ceil(), 3);
}

TEST(Rational, ParseAcceptsFractionsAndRejectsJunk) {
  EXPECT_EQ(Rational::parse("5/6"), q(5, 6));
  EXPECT_EQ(Rational::parse("-3"), q(-3));
  EXPECT_THROW(Rational::parse("5/"), ParseError);
  EXPECT_THROW(Rational::parse("0.83"), ParseError);
  EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
}

TEST(Rational, DivisionByZeroThrows) { EXPECT_THROW(q(1) / q(0), std::domain_error); }

TEST(Primes, SmallPrimality) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_FALSE(is_prime(91));
  EXPECT_TRUE(is_prime(97));
  auto ps = primes_in_range(5, 31);
  EXPECT_EQ(ps, (std::vector<std::uint32_t>{5, 7, 11, 13, 17, 19, 23, 29, 31}));
}

TEST(Arith, CheckedPowAndLog) {
  EXPECT_EQ(checked_pow(7, 3, 1000), 343u);
  EXPECT_THROW(checked_pow(7, 4, 1000), std::overflow_error);
  EXPECT_EQ(log_p(343, 7), 3u);
  EXPECT_FALSE(log_p(344, 7).has_value());
}

TEST(Arith, ModularHelpers) {
  EXPECT_EQ(mul_mod(6, 5, 7), 2u);
  EXPECT_EQ(pow_mod(3, 6, 7), 1u);
  EXPECT_EQ(mul_mod(inv_mod(5, 11), 5, 11), 1u);
  EXPECT_THROW(inv_mod(0, 11), std::domain_error);
  EXPECT_EQ(reduce_mod(BigInt(-1), 7), 6u);
}

TEST(BinomModP, FrozenValues) {
  EXPECT_EQ(binom_mod_p(7, 3, 7), 0u);
  EXPECT_EQ(binom_mod_p(12, 0, 5), 1u);
  EXPECT_EQ(binom_mod_p(10, 4, 3), 0u);
  EXPECT_EQ(binom_mod_p(3, 5, 7), 0u);
}

TEST(BinomModP, MatchesPascalTriangle) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u})
    for (unsigned m = 0; m <= 60; ++m)
      for (unsigned k = 0; k <= m + 1; ++k) ASSERT_EQ(binom_mod_p(m, k, p), oracle::binom_pascal(m, k, p)) << m << " " << k;
}

TEST(SmallestDenominator, FrozenValues) {
  EXPECT_EQ(smallest_denominator_in(Interval(q(285, 343), q(286, 343))), q(5, 6));
  EXPECT_EQ(smallest_denominator_in(Interval(q(0), q(1))), q(1));
  EXPECT_EQ(smallest_denominator_in(Interval(q(1, 3), q(1, 2))), q(1, 2));
}

TEST(SmallestDenominator, MatchesExhaustiveScan) {
  std::mt19937 rng(7);
  for (int k = 0; k < 300; ++k) {
    long long d1 = std::uniform_int_distribution<long long>(1, 400)(rng);
    long long n1 = std::uniform_int_distribution<long long>(0, 2 * d1)(rng);
    long long d2 = std::uniform_int_distribution<long long>(1, 400)(rng);
    long long n2 = std::uniform_int_distribution<long long>(0, 2 * d2)(rng);
    if (n1 * d2 >= n2 * d1) continue;
    auto [n, d] = oracle::smallest_fraction_scan(n1, d1, n2, d2);
    auto got = smallest_denominator_in(Interval(q(n1, d1), q(n2, d2)));
    ASSERT_EQ(got.denominator(), d) << n1 << "/" << d1 << " " << n2 << "/" << d2;
    ASSERT_EQ(got, q(n, d));
  }
}

TEST(Interval, HalfOpenMembership) {
  Interval iv(q(1, 3), q(1, 2));
  EXPECT_FALSE(iv.contains(q(1, 3)));
  EXPECT_TRUE(iv.contains(q(1, 2)));
  EXPECT_THROW(Interval(q(1), q(1)), std::invalid_argument);
}

TEST(RationalPoly, EvaluateFrozenValues) {
  EXPECT_EQ(eval_rational_poly({q(-7, 6), q(5, 6)}, q(5)), q(3));
  EXPECT_EQ(eval_rational_poly({q(0), q(0)}, q(9)), q(0));
  auto b = parse_rational_poly("(s+1)*(s+5/6)*(s+7/6)");
  EXPECT_EQ(b(q(3)), q(575, 9));
}

TEST(RationalPoly, ParseForms) {
  auto b = parse_rational_poly("s^2 - 1/4");
  EXPECT_EQ(b(q(1, 2)), q(0));
  EXPECT_EQ(b.str("s"), "s^2 - 1/4");
  EXPECT_EQ(parse_rational_poly("(s+1)^2")(q(2)), q(9));
  EXPECT_THROW(parse_rational_poly("s+"), ParseError);
  EXPECT_THROW(parse_rational_poly("t+1"), ParseError);
}
