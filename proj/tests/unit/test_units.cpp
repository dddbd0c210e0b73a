#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "dlcz/error.hpp"
#include "dlcz/units.hpp"

using namespace dlcz;

TEST(ParseQuantity, ConvertsToSi) {
    EXPECT_DOUBLE_EQ(parse_quantity("0.6 mW", Dimension::power), 0.6e-3);
    EXPECT_DOUBLE_EQ(parse_quantity("7.5 cm", Dimension::length), 0.075);
    EXPECT_DOUBLE_EQ(parse_quantity("-1.3 GHz", Dimension::frequency), -1.3e9);
    EXPECT_DOUBLE_EQ(parse_quantity("10 Torr", Dimension::pressure), 10.0 * 101325.0 / 760.0);
    EXPECT_DOUBLE_EQ(parse_quantity("37 C", Dimension::temperature), 310.15);
    EXPECT_DOUBLE_EQ(parse_quantity("6 mrad", Dimension::angle), 6e-3);
    EXPECT_DOUBLE_EQ(parse_quantity("1us", Dimension::time), 1e-6);
    EXPECT_DOUBLE_EQ(parse_quantity("60 %", Dimension::dimensionless), 0.6);
    EXPECT_DOUBLE_EQ(parse_quantity("0.25", Dimension::dimensionless), 0.25);
}

TEST(ParseQuantity, RejectsMissingOrForeignUnits) {
    EXPECT_THROW(parse_quantity("0.6", Dimension::power), UnitError);
    EXPECT_THROW(parse_quantity("0.6 furlong", Dimension::length), UnitError);
    EXPECT_THROW(parse_quantity("1 GHz", Dimension::time), UnitError);
    EXPECT_THROW(parse_quantity("abc mW", Dimension::power), ParseError);
    EXPECT_THROW(parse_quantity("", Dimension::power), ParseError);
}

TEST(Extent, UnboundedHasNoValue) {
    const Extent e = Extent::unbounded();
    EXPECT_TRUE(e.is_unbounded());
    EXPECT_EQ(e.rate(), 0.0);
    EXPECT_EQ(e.or_infinity(), std::numeric_limits<double>::infinity());
    EXPECT_THROW((void)e.value(), DomainError);
    EXPECT_EQ(Extent::finite(2.0).rate(), 0.5);
    EXPECT_EQ(parse_extent("unbounded", Dimension::time), Extent::unbounded());
    EXPECT_EQ(parse_extent("2 us", Dimension::time), Extent::finite(2e-6));
}

TEST(FormatQuantity, RoundTripsRandomValues) {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> mantissa(-10.0, 10.0);
    std::uniform_int_distribution<int> exponent(-30, 30);
    for (Dimension d : {Dimension::length, Dimension::time, Dimension::frequency,
                        Dimension::pressure, Dimension::dimensionless, Dimension::angle}) {
        for (int i = 0; i < 500; ++i) {
            const double v = std::ldexp(mantissa(gen), exponent(gen));
            EXPECT_EQ(parse_quantity(format_quantity(v, d), d), v);
        }
    }
    for (int i = 0; i < 500; ++i) {
        const double t = std::uniform_real_distribution<double>(1.0, 1000.0)(gen);
        EXPECT_EQ(parse_quantity(format_quantity(t, Dimension::temperature), Dimension::temperature),
                  t);
    }
}
