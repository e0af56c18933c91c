#include "thompson/exact_number.hpp"

#include <gmpxx.h>
#include <gtest/gtest.h>

#include <random>
#include <string>

namespace thompson {
namespace {

ExactNumber q(long long p, long long d) { return ExactNumber(BigInt(p), BigInt(d)); }

TEST(ParseNumber, Literals) {
  EXPECT_EQ(parse_number("3/4"), q(3, 4));
  EXPECT_EQ(parse_number("6/8"), q(3, 4));
  EXPECT_EQ(parse_number("6/8").str(), "3/4");
  EXPECT_EQ(parse_number("7/2^3"), q(7, 8));
  EXPECT_EQ(parse_number("0"), ExactNumber(0));
  EXPECT_EQ(parse_number("1"), ExactNumber(1));
  EXPECT_EQ(parse_number("-5/10"), q(-1, 2));
  EXPECT_EQ(parse_number("4/2^2"), ExactNumber(1));
  EXPECT_EQ(parse_number("123456789012345678901234567890/2^100").denominator(), BigInt(1) << 99);
}

TEST(ParseNumber, Malformed) {
  for (const char* bad : {"", "/", "1/", "/2", "1 /2", "1/ 2", "a", "1/0", "1/2^", "1/2^x", "0x10", "1.5", "--1", "1/-2",
                          "1/2^9999999"}) {
    try {
      parse_number(bad);
      ADD_FAILURE() << "accepted \"" << bad << "\"";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::malformed_number) << bad;
    }
  }
}

TEST(ParseNumber, CoordinateRange) {
  EXPECT_EQ(parse_coordinate("1"), ExactNumber(1));
  try {
    parse_coordinate("5/4");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::out_of_range);
  }
  EXPECT_THROW(parse_coordinate("-1/2"), Error);
}

TEST(AsDyadic, Examples) {
  EXPECT_EQ(q(3, 4).as_dyadic(), (DyadicForm{3, 2}));
  EXPECT_EQ(q(1, 3).as_dyadic(), std::nullopt);
  EXPECT_EQ(ExactNumber(0).as_dyadic(), (DyadicForm{0, 0}));
  EXPECT_EQ(ExactNumber(1).as_dyadic(), (DyadicForm{1, 0}));
  EXPECT_EQ(q(6, 8).as_dyadic(), (DyadicForm{3, 2}));
  EXPECT_THROW((void)q(-1, 2).as_dyadic(), Error);
}

TEST(AsDyadic, SucceedsExactlyForPowerOfTwoDenominators) {
  for (long long d = 1; d <= 256; ++d) {
    for (long long p = 0; p <= d; ++p) {
      const ExactNumber x = q(p, d);
      const auto form = x.as_dyadic();
      mpz_class den(x.denominator().str());
      const bool pow2 = mpz_popcount(den.get_mpz_t()) == 1;
      ASSERT_EQ(form.has_value(), pow2) << x;
      if (form) {
        EXPECT_EQ(ExactNumber::dyadic(form->p, form->q), x);
        EXPECT_TRUE(form->q == 0 || boost::multiprecision::bit_test(form->p, 0));
      }
    }
  }
}

TEST(Arith, Examples) {
  EXPECT_EQ(midpoint(q(1, 2), ExactNumber(1)), q(3, 4));
  EXPECT_EQ(ExactNumber(1) - q(1, 8), q(7, 8));
  EXPECT_LT(q(5, 8), q(2, 3));
  EXPECT_EQ(min(q(5, 8), q(2, 3)), q(5, 8));
  EXPECT_EQ(max(q(5, 8), q(2, 3)), q(2, 3));
  EXPECT_EQ(q(1, 3) + q(1, 6), q(1, 2));
  EXPECT_TRUE((q(1, 3) + q(1, 6)).is_dyadic());
  EXPECT_EQ(q(3, 4) / q(3, 8), ExactNumber(2));
}

TEST(Arith, DivisionByZero) {
  try {
    (void)(ExactNumber(1) / ExactNumber(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::division_by_zero);
  }
}

TEST(Arith, Log2Exact) {
  EXPECT_EQ(ExactNumber(1).log2_exact(), 0);
  EXPECT_EQ(ExactNumber(8).log2_exact(), 3);
  EXPECT_EQ(q(1, 4).log2_exact(), -2);
  EXPECT_EQ(q(3, 4).log2_exact(), std::nullopt);
  EXPECT_EQ(ExactNumber(6).log2_exact(), std::nullopt);
  EXPECT_EQ(ExactNumber(0).log2_exact(), std::nullopt);
  EXPECT_EQ(q(-1, 2).log2_exact(), std::nullopt);
}

// Independent cross-check against GMP rationals on 10^4 random pairs, half of
// them dyadic (the fast path) and half general.
TEST(Arith, MatchesGmpOnRandomPairs) {
  std::mt19937_64 rng(20240611);
  auto draw = [&](bool dyadic) {
    const long long num = static_cast<long long>(rng() % 2000001) - 1000000;
    if (dyadic) {
      const unsigned e = static_cast<unsigned>(rng() % 70);
      mpq_class g(mpz_class(static_cast<long>(num)), mpz_class(1) << e);
      g.canonicalize();
      return std::pair{ExactNumber::dyadic(BigInt(num), e), g};
    }
    const long long den = static_cast<long long>(rng() % 100000) + 1;
    mpq_class g(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    g.canonicalize();
    return std::pair{ExactNumber(BigInt(num), BigInt(den)), g};
  };
  auto same = [](const ExactNumber& a, const mpq_class& b) { return a.str() == b.get_str(); };
  for (int i = 0; i < 10000; ++i) {
    const auto [a, ga] = draw(i % 2 == 0);
    const auto [b, gb] = draw(i % 3 == 0);
    ASSERT_TRUE(same(a, ga)) << a << " vs " << ga.get_str();
    ASSERT_TRUE(same(a + b, mpq_class(ga + gb))) << a << " + " << b;
    ASSERT_TRUE(same(a - b, mpq_class(ga - gb))) << a << " - " << b;
    ASSERT_TRUE(same(a * b, mpq_class(ga * gb))) << a << " * " << b;
    ASSERT_TRUE(same(midpoint(a, b), mpq_class((ga + gb) / 2))) << a << " mid " << b;
    if (!b.is_zero()) {
      ASSERT_TRUE(same(a / b, mpq_class(ga / gb))) << a << " / " << b;
    }
    const int c = cmp(ga, gb);
    ASSERT_EQ(a < b, c < 0);
    ASSERT_EQ(a == b, c == 0);
    ASSERT_EQ(a.is_dyadic(), mpz_popcount(ga.get_den().get_mpz_t()) == 1);
  }
}

TEST(Format, RoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const ExactNumber x(BigInt(static_cast<long long>(rng() % 100000) - 50000), BigInt(static_cast<long long>(rng() % 5000) + 1));
    EXPECT_EQ(parse_number(format(x)), x);
  }
  EXPECT_EQ(format(ExactNumber(0)), "0");
  EXPECT_EQ(format(ExactNumber(1)), "1");
}

}  // namespace
}  // namespace thompson
