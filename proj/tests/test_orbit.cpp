#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rootdyn/orbit.hpp"

using namespace rootdyn;

TEST(Orbit, EscapeConfigValidation) {
  EXPECT_NO_THROW(EscapeConfig{}.validate());
  EXPECT_THROW((EscapeConfig{0}.validate()), DynamicsError);
  EXPECT_THROW((EscapeConfig{100, 2.0, 1e8}.validate()), DynamicsError);
}

TEST(Orbit, CriticalOrbitExamples) {
  const auto near_zero = classify_critical_orbit(GeneralParams{0.1, 4, 1});
  EXPECT_TRUE(near_zero.outcome == Outcome::to_zero || near_zero.outcome == Outcome::to_infinity);
  EXPECT_LE(near_zero.iterations, 100);
  EXPECT_EQ(classify_critical_orbit(GeneralParams{5.0 / 3.0, 4, 1}).outcome, Outcome::undecided);
  const auto antenna = classify_critical_orbit(GeneralParams{1.2, 4, 1});
  EXPECT_EQ(antenna.outcome, Outcome::undecided);
  EXPECT_NEAR(antenna.witness.modulus(), 1.0, 1e-9);
}

TEST(Orbit, DegenerateParametersAreFlagged) {
  for (const GeneralParams& p : {GeneralParams{0.0, 4, 1}, GeneralParams{1.0, 4, 1}, GeneralParams{-1.0, 3, 2}}) {
    const auto c = classify_critical_orbit(p);
    EXPECT_TRUE(c.degenerate);
    EXPECT_EQ(c.outcome, Outcome::to_zero);
    EXPECT_EQ(c.iterations, 0);
  }
  for (double b : {1.0, -3.0, -1.0, 1.0 + 2.0 * std::sqrt(2.0), 3.0 + 2.0 * std::sqrt(5.0)}) {
    EXPECT_TRUE(classify_critical_orbit(BehlParams{b}).degenerate) << b;
  }
}

TEST(Orbit, CriticalPairing) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 300; ++t) {
    const GeneralParams p{Complex(u(rng), u(rng)), 4, 1};
    const auto plus = classify_critical_orbit(p);
    const auto minus = classify_critical_orbit_minus(p);
    EXPECT_EQ(plus.outcome == Outcome::to_zero, minus.outcome == Outcome::to_infinity) << p.a;
    EXPECT_EQ(plus.outcome == Outcome::to_infinity, minus.outcome == Outcome::to_zero) << p.a;
  }
}

TEST(Orbit, SeedExamples) {
  const GeneralParams p{0.5, 4, 1};
  const auto small = classify_seed(p, ExtendedComplex(1e-4));
  EXPECT_EQ(small.outcome, Outcome::to_zero);
  EXPECT_LE(small.iterations, 2);
  EXPECT_EQ(classify_seed(p, ExtendedComplex(1e4)).outcome, Outcome::to_infinity);

  const GeneralParams q{5.0 / 3.0, 4, 1};
  const auto attractors = known_attractors(q);
  ASSERT_FALSE(attractors.empty());
  const auto s = classify_seed(q, ExtendedComplex(1.01), {}, attractors);
  EXPECT_EQ(s.outcome, Outcome::to_strange);
  ASSERT_GE(s.attractor_id, 0);
  EXPECT_LT(chordal_distance(attractors[static_cast<std::size_t>(s.attractor_id)], ExtendedComplex(1.0)), 1e-6);
  // Without attractors the same orbit stays undecided.
  EXPECT_EQ(classify_seed(q, ExtendedComplex(1.01)).outcome, Outcome::undecided);
}

TEST(Orbit, InversionPairing) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int t = 0; t < 300; ++t) {
    const GeneralParams p{Complex(u(rng), u(rng)), 3, 2};
    const ExtendedComplex z(Complex(u(rng), u(rng)));
    const auto a = classify_seed(p, z);
    const auto b = classify_seed(p, z.reciprocal());
    EXPECT_EQ(a.iterations, b.iterations);
    if (a.outcome == Outcome::to_zero) {
      EXPECT_EQ(b.outcome, Outcome::to_infinity);
    }
    if (a.outcome == Outcome::to_infinity) {
      EXPECT_EQ(b.outcome, Outcome::to_zero);
    }
    if (a.outcome == Outcome::undecided) {
      EXPECT_EQ(b.outcome, Outcome::undecided);
    }
  }
}

TEST(Orbit, CycleDetection) {
  const auto one = detect_cycle(GeneralParams{5.0 / 3.0, 4, 1}, ExtendedComplex(Complex(0.9, 0.1)));
  ASSERT_TRUE(one.cycle.has_value());
  EXPECT_EQ(one.cycle->period, 1);
  EXPECT_NEAR(std::abs(one.cycle->representative - 1.0), 0.0, 1e-9);

  const auto escaped = detect_cycle(GeneralParams{0.5, 4, 1}, ExtendedComplex(2.0));
  EXPECT_FALSE(escaped.cycle.has_value());
  EXPECT_TRUE(escaped.escaped);

  const BehlParams b{-25.0};
  const auto c = critical_points_b(b.b);
  const auto two = detect_cycle(b, ExtendedComplex(c.plus));
  ASSERT_TRUE(two.cycle.has_value());
  EXPECT_EQ(two.cycle->period, 2);
  EXPECT_LT(std::abs(two.cycle->multiplier), 1.0);

  EXPECT_THROW(detect_cycle(b, ExtendedComplex(1.0), CycleSearchConfig{-1, 8, 1e-9}), DynamicsError);
}

TEST(Orbit, EmpiricalOrder) {
  const double quad = empirical_order<Complex>([](Complex z) { return z * z; }, Complex(0.0, 0.0),
                                               Complex(0.5, 0.0), 12);
  EXPECT_NEAR(quad, 2.0, 0.05);
  EXPECT_NEAR(behl_order_high_precision(2.0, 1.0, Complex(0.0, 0.9)), 4.0, 0.3);
  EXPECT_NEAR(behl_order_high_precision(Complex(0.5, 0.5), 1.0, Complex(0.0, 0.95)), 4.0, 0.3);
  using HP = HighPrecisionComplex;
  const HP s5 = boost::multiprecision::sqrt(HP(5));
  EXPECT_NEAR(behl_order_high_precision(HP(3) + HP(2) * s5, HP(1), HP(0, 0.95)), 5.0, 0.3);
  EXPECT_NEAR(behl_order_high_precision(HP(3) - HP(2) * s5, HP(1), HP(0, 0.95)), 5.0, 0.3);
  EXPECT_THROW(empirical_order<Complex>([](Complex z) { return 2.0 * z; }, Complex(0.0, 0.0), Complex(0.5, 0.0), 10),
               DynamicsError);
}

TEST(Orbit, OrderIsFourForGenericParameters) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  int measured = 0;
  while (measured < 20) {
    const Complex b(u(rng), u(rng));
    if (std::abs(b * b - 6.0 * b - 11.0) < 1.0 || std::abs(b - 1.0) < 0.5 || std::abs(b + 3.0) < 0.5) continue;
    const double order = behl_order_high_precision(b, 1.0, Complex(0.0, 0.95));
    EXPECT_GE(order, 3.7) << b;
    EXPECT_LE(order, 4.3) << b;
    ++measured;
  }
}

TEST(Orbit, UnitCircleDrift) {
  EXPECT_LT(unit_circle_drift(1.3, 4, 1, 1024, 50), 1e-8);
  EXPECT_LT(unit_circle_drift(0.0, 3, 2, 256, 50), 1e-12);
  EXPECT_GT(unit_circle_drift(Complex(0.5, 0.1), 4, 1, 256, 5), 1e-3);
}
