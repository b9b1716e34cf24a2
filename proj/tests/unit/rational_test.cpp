#include <gtest/gtest.h>

#include "recipro/errors.hpp"
#include "recipro/rational.hpp"

using recipro::parse_rational;
using recipro::Rational;
using recipro::ValidationError;

TEST(Rational, ParsesFractionsAndIntegers) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational(" 2/3 "), Rational(2, 3));
  EXPECT_EQ(parse_rational("-4/-8"), Rational(1, 2));
}

TEST(Rational, ParsesDecimalsExactly) {
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("-1.25"), Rational(-5, 4));
  EXPECT_EQ(parse_rational("2.5e-3"), Rational(1, 400));
  EXPECT_EQ(parse_rational("1E2"), Rational(100));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "1e", "--1", "1/2/3", "nan", "inf"}) {
    EXPECT_THROW(parse_rational(bad), ValidationError) << bad;
  }
}

TEST(Rational, DoubleConversions) {
  // The binary value of 0.1 is not 1/10; the decimal reading is.
  EXPECT_NE(recipro::rational_from_double(0.1), Rational(1, 10));
  EXPECT_EQ(recipro::rational_from_decimal_double(0.1), Rational(1, 10));
  EXPECT_EQ(recipro::rational_from_double(0.375), Rational(3, 8));
  EXPECT_THROW(recipro::rational_from_double(std::numeric_limits<double>::infinity()), ValidationError);
}

TEST(Rational, PrintsCanonicalForm) {
  EXPECT_EQ(recipro::to_string(recipro::ratio(6, 4)), "3/2");
  EXPECT_EQ(recipro::ratio(6, 4), Rational(3, 2));
  EXPECT_THROW(recipro::ratio(1, 0), ValidationError);
  EXPECT_EQ(recipro::to_string(recipro::ratio(4, -2)), "-2");
  EXPECT_EQ(recipro::to_string(Rational(0)), "0");
  for (const char* s : {"17/3", "-1/7", "12"}) EXPECT_EQ(recipro::to_string(parse_rational(s)), s);
}
