#include <gtest/gtest.h>

#include "vmpt/decimal.hpp"

using vmpt::Decimal;

TEST(Decimal, ParsesAndPrintsShortestForm) {
  EXPECT_EQ(Decimal::parse("12").to_string(), "12");
  EXPECT_EQ(Decimal::parse("3.250").to_string(), "3.25");
  EXPECT_EQ(Decimal::parse("-0.5").to_string(), "-0.5");
  EXPECT_EQ(Decimal::parse("0.000001").micros(), 1);
  EXPECT_EQ(Decimal(7).to_string(), "7");
}

TEST(Decimal, RejectsMalformedText) {
  for (const char* bad : {"", "-", "1.", ".5", "1e3", "1.2.3", "1.0000001", "abc", "1.-2"}) {
    EXPECT_THROW(Decimal::parse(bad), vmpt::ValidationError) << bad;
  }
}

TEST(Decimal, FromDoubleRequiresMicroGrid) {
  EXPECT_EQ(Decimal::from_double(1.25), Decimal::parse("1.25"));
  EXPECT_EQ(Decimal::from_double(150.0), Decimal(150));
  EXPECT_THROW(Decimal::from_double(0.1234567), vmpt::ValidationError);
}

TEST(Decimal, RatioRoundsHalfEven) {
  EXPECT_EQ(Decimal::ratio(Decimal(14), Decimal(13), 4).to_string(), "1.0769");
  EXPECT_EQ(Decimal::ratio(Decimal(1), Decimal(8), 2).to_string(), "0.12");  // 0.125
  EXPECT_EQ(Decimal::ratio(Decimal(3), Decimal(8), 2).to_string(), "0.38");  // 0.375
  EXPECT_EQ(Decimal::ratio(Decimal(5), Decimal(5), 4).to_string(), "1");
}

TEST(Decimal, BasisPointScaling) {
  EXPECT_EQ(Decimal(10).scaled_by_basis_points(2500, 0), Decimal(12));   // 12.5 -> 12
  EXPECT_EQ(Decimal(14).scaled_by_basis_points(2500, 0), Decimal(18));   // 17.5 -> 18
  EXPECT_EQ(Decimal(10).scaled_by_basis_points(-1000, 0), Decimal(9));
  EXPECT_EQ(Decimal(3).scaled_by_basis_points(1000, 1).to_string(), "3.3");
}

TEST(Decimal, ArithmeticAndOrdering) {
  const Decimal a = Decimal::parse("1.5");
  const Decimal b = Decimal::parse("2.25");
  EXPECT_EQ((a + b).to_string(), "3.75");
  EXPECT_EQ((a - b).to_string(), "-0.75");
  EXPECT_EQ((a * 4).to_string(), "6");
  EXPECT_LT(a, b);
  EXPECT_EQ(vmpt::min(a, b), a);
  EXPECT_EQ(vmpt::max(a, b), b);
  EXPECT_EQ(Decimal::parse("2.5").rounded(0), Decimal(2));
  EXPECT_EQ(Decimal::parse("3.5").rounded(0), Decimal(4));
}
