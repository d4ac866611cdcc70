#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rootdyn/extended_complex.hpp"

using rootdyn::Chart;
using rootdyn::Complex;
using rootdyn::ExtendedComplex;

TEST(ExtendedComplex, NormalizesIntoUnitChartValue) {
  const ExtendedComplex big(Complex(3.0, 4.0));
  EXPECT_EQ(big.chart(), Chart::inverted);
  EXPECT_LE(std::abs(big.value()), 1.0);
  EXPECT_NEAR(std::abs(big.to_complex() - Complex(3.0, 4.0)), 0.0, 1e-15);

  const ExtendedComplex small(Complex(0.3, -0.4));
  EXPECT_EQ(small.chart(), Chart::standard);
  EXPECT_EQ(small.value(), Complex(0.3, -0.4));
}

TEST(ExtendedComplex, InfinityAndZero) {
  const ExtendedComplex inf = ExtendedComplex::infinity();
  EXPECT_TRUE(inf.is_infinity());
  EXPECT_FALSE(inf.is_zero());
  EXPECT_TRUE(std::isinf(inf.to_complex().real()));
  EXPECT_TRUE(inf.reciprocal().is_zero());
  EXPECT_TRUE(ExtendedComplex(0.0).reciprocal().is_infinity());
  EXPECT_TRUE(ExtendedComplex(Complex(INFINITY, 0.0)).is_infinity());
}

TEST(ExtendedComplex, ReciprocalIsExactChartFlip) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const ExtendedComplex z(Complex(u(rng), u(rng)));
    const ExtendedComplex r = z.reciprocal();
    EXPECT_EQ(r.value(), z.value());
    EXPECT_NE(r.chart(), z.chart());
    EXPECT_EQ(r.reciprocal(), z);
  }
}

TEST(ExtendedComplex, FromRatioPicksChartAndHonorsTie) {
  const ExtendedComplex a = ExtendedComplex::from_ratio(Complex(1.0, 0.0), Complex(4.0, 0.0));
  EXPECT_EQ(a.chart(), Chart::standard);
  EXPECT_DOUBLE_EQ(a.value().real(), 0.25);
  const ExtendedComplex b = ExtendedComplex::from_ratio(Complex(4.0, 0.0), Complex(1.0, 0.0));
  EXPECT_EQ(b.chart(), Chart::inverted);
  EXPECT_DOUBLE_EQ(b.value().real(), 0.25);
  const ExtendedComplex t = ExtendedComplex::from_ratio(Complex(0.0, 2.0), Complex(2.0, 0.0), Chart::inverted);
  EXPECT_EQ(t.chart(), Chart::inverted);
  EXPECT_TRUE(ExtendedComplex::from_ratio(Complex(1.0, 0.0), Complex(0.0, 0.0)).is_infinity());
  EXPECT_TRUE(ExtendedComplex::from_ratio(Complex(0.0, 0.0), Complex(0.0, 0.0)).is_nan());
}

TEST(ExtendedComplex, ChordalDistance) {
  EXPECT_NEAR(rootdyn::chordal_distance(ExtendedComplex(0.0), ExtendedComplex::infinity()), 2.0, 1e-15);
  EXPECT_NEAR(rootdyn::chordal_distance(ExtendedComplex(1.0), ExtendedComplex(-1.0)), 2.0, 1e-15);
  EXPECT_NEAR(rootdyn::chordal_distance(ExtendedComplex(Complex(0.0, 1.0)), ExtendedComplex(1.0)), std::sqrt(2.0),
              1e-15);
  // Mixed charts agree with the standard-chart formula.
  const Complex u(0.7, 0.2), v(3.0, -1.0);
  const double expected = 2.0 * std::abs(u - v) / std::sqrt((1.0 + std::norm(u)) * (1.0 + std::norm(v)));
  EXPECT_NEAR(rootdyn::chordal_distance(ExtendedComplex(u), ExtendedComplex(v)), expected, 1e-14);
  EXPECT_TRUE(rootdyn::sphere_equal(ExtendedComplex(v), ExtendedComplex(v + 1e-13), 1e-12));
}

TEST(ExtendedComplex, RelativeDistanceHandlesInfinity) {
  EXPECT_EQ(rootdyn::relative_distance(ExtendedComplex::infinity(), ExtendedComplex::infinity()), 0.0);
  EXPECT_EQ(rootdyn::relative_distance(ExtendedComplex(0.0), ExtendedComplex::infinity()), 1.0);
  const double d = rootdyn::relative_distance(ExtendedComplex(Complex(1e9, 0.0)), ExtendedComplex(Complex(1e9 + 1.0, 0.0)));
  EXPECT_NEAR(d, 1e-9, 1e-12);
}

TEST(ExtendedComplex, UnaryOperations) {
  const ExtendedComplex z(Complex(2.0, 1.0));
  EXPECT_NEAR(std::abs(z.negated().to_complex() - Complex(-2.0, -1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(z.conjugated().to_complex() - Complex(2.0, -1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(z.squared().to_complex() - Complex(3.0, 4.0)), 0.0, 1e-14);
  const ExtendedComplex r = z.squared().sqrt();
  EXPECT_NEAR(std::abs(r.squared().to_complex() - Complex(3.0, 4.0)), 0.0, 1e-14);
  EXPECT_NEAR(z.projected_to_unit_circle().modulus(), 1.0, 1e-15);
  EXPECT_NEAR(z.modulus(), std::sqrt(5.0), 1e-15);
}
