#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "phaseop/numerics.hpp"

using namespace phaseop;

TEST(Precision, RejectsBelowDouble) {
  EXPECT_THROW(Precision(52), std::invalid_argument);
  EXPECT_EQ(Precision(53).bits(), 53);
  EXPECT_EQ(Precision().bits(), 113);
}

TEST(LnFactorial, SmallValues) {
  EXPECT_EQ(ln_factorial(0u), 0.0);
  EXPECT_EQ(ln_factorial(1u), 0.0);
  EXPECT_NEAR(ln_factorial(5u), std::log(120.0), 1e-14);
}

TEST(LnFactorial, MatchesExactBigint) {
  // ln(20!) and ln(170!) from an independent 60-digit evaluation
  EXPECT_NEAR(ln_factorial(20u), 42.33561646075348503, 1e-13);
  EXPECT_NEAR(ln_factorial(170u), 706.57306224578734711, 1e-12);
  for (unsigned n : {0u, 3u, 17u, 40u, 90u}) {
    const Precision prec(200);
    const mp::Real exact = mp::log(mp::Real(factorial(n), 400));
    const mp::Real got = ln_factorial(n, prec);
    EXPECT_LT(mp::abs(exact - got).to_double(), 1e-55) << n;
  }
}

TEST(Factorial, Exact) {
  EXPECT_EQ(factorial(0), BigInt(1));
  EXPECT_EQ(factorial(20), BigInt("2432902008176640000"));
  EXPECT_EQ(factorial(25), BigInt("15511210043330985984000000"));
}

TEST(Binomial, ExactAndOutOfRange) {
  EXPECT_EQ(binomial(5, 2), BigInt(10));
  EXPECT_EQ(binomial(60, 30), BigInt("118264581564861424"));
  EXPECT_EQ(binomial(5, -1), BigInt(0));
  EXPECT_EQ(binomial(5, 6), BigInt(0));
  EXPECT_EQ(binomial(0, 0), BigInt(1));
}

TEST(Stirling, SmallRows) {
  EXPECT_EQ(stirling_first_unsigned(0, 0), BigInt(1));
  EXPECT_EQ(stirling_first_unsigned(3, 1), BigInt(2));
  EXPECT_EQ(stirling_first_unsigned(3, 2), BigInt(3));
  EXPECT_EQ(stirling_first_unsigned(3, 3), BigInt(1));
  EXPECT_EQ(stirling_first_unsigned(4, 5), BigInt(0));
  EXPECT_EQ(stirling_first_unsigned(4, 0), BigInt(0));
}

TEST(Stirling, RowTwelveFromSymbolicExpansion) {
  const std::vector<long> row{0,        39916800, 120543840, 150917976, 105258076, 45995730, 13339535,
                              2637558, 357423,   32670,     1925,      66,        1};
  const StirlingTable t(12);
  for (unsigned k = 0; k <= 12; ++k) EXPECT_EQ(t(12, k), BigInt(row[k])) << k;
}

TEST(Stirling, RowSumsAreFactorials) {
  const StirlingTable t(30);
  for (unsigned l = 0; l <= 30; ++l) {
    BigInt sum = 0;
    for (unsigned k = 0; k <= l; ++k) sum += t(l, k);
    EXPECT_EQ(sum, factorial(l)) << l;
  }
}

TEST(Stirling, TableBounds) {
  const StirlingTable t(4);
  EXPECT_EQ(t.max_l(), 4u);
  EXPECT_EQ(t(2, 9), BigInt(0));
  EXPECT_THROW(t(5, 1), std::out_of_range);
}

TEST(SignedLog, ProductAddsLogs) {
  const auto a = to_signed_log(-3.0);
  const auto b = to_signed_log(4.0);
  const auto c = a * b;
  EXPECT_EQ(c.sign, -1);
  EXPECT_NEAR(to_value(c), -12.0, 1e-14);
  EXPECT_NEAR(to_value(a / b), -0.75, 1e-15);
}

TEST(SignedLog, ZeroAbsorbs) {
  const auto z = to_signed_log(0.0);
  EXPECT_EQ(z.sign, 0);
  EXPECT_EQ(to_value(z * to_signed_log(5.0)), 0.0);
  EXPECT_THROW(to_signed_log(5.0) / z, std::domain_error);
}

TEST(SignedLog, RoundTripRelative) {
  for (double x : {1e-300, 2.5e-17, 0.1, 7.0, 6.02e23, 1.7e308, -4.4e-200}) {
    EXPECT_NEAR(to_value(to_signed_log(x)) / x, 1.0, 1e-15) << x;
  }
}

TEST(SignedLog, CarriesBeyondDoubleRange) {
  // sqrt(300!) / sqrt(299!) = sqrt(300), although sqrt(300!) alone overflows
  const Precision prec(113);
  const auto big = SignedLogReal::from_log(1, ln_factorial(300, prec) * mp::Real(0.5, 113));
  const auto less = SignedLogReal::from_log(1, ln_factorial(299, prec) * mp::Real(0.5, 113));
  EXPECT_NEAR(to_value(big / less, prec).to_double(), std::sqrt(300.0), 1e-13);
  const auto r = to_signed_log(mp::Real(-2.0, 113));
  EXPECT_EQ(r.sign, -1);
  EXPECT_NEAR(to_value(r, prec).to_double(), -2.0, 1e-30);
}
