#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rootdyn/operators.hpp"

using namespace rootdyn;

namespace {

double rel(const ExtendedComplex& a, const ExtendedComplex& b) { return relative_distance(a, b); }

Complex fd_ank(const GeneralParams& p, Complex z, double h = 1e-6) {
  return (eval_ank(p, ExtendedComplex(z + h)).to_complex() - eval_ank(p, ExtendedComplex(z - h)).to_complex()) /
         (2.0 * h);
}

Complex fd_b(const BehlParams& p, Complex z, double h = 1e-6) {
  return (eval_b(p, ExtendedComplex(z + h)).to_complex() - eval_b(p, ExtendedComplex(z - h)).to_complex()) / (2.0 * h);
}

}  // namespace

TEST(Operators, GeneralExamples) {
  EXPECT_NEAR(std::abs(eval_ank({0.0, 4, 1}, ExtendedComplex(2.0)).to_complex() - 32.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(eval_ank({1.0, 4, 1}, ExtendedComplex(2.0)).to_complex() + 16.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(eval_ank({-1.0, 4, 1}, ExtendedComplex(2.0)).to_complex() - 16.0), 0.0, 1e-12);
  const ExtendedComplex w = eval_ank({0.5, 4, 1}, ExtendedComplex(std::polar(1.0, std::numbers::pi / 3)));
  EXPECT_NEAR(w.modulus(), 1.0, 1e-14);
}

TEST(Operators, GeneralSpecialPoints) {
  const GeneralParams p{Complex(0.4, 0.3), 5, 2};
  EXPECT_TRUE(eval_ank(p, ExtendedComplex(0.0)).is_zero());
  EXPECT_TRUE(eval_ank(p, ExtendedComplex::infinity()).is_infinity());
  EXPECT_TRUE(eval_ank(p, ExtendedComplex(1.0 / p.a)).is_infinity());
  EXPECT_TRUE(eval_ank(p, ExtendedComplex(p.a)).is_zero());
}

TEST(Operators, Degeneracy) {
  EXPECT_EQ(degeneracy(GeneralParams{1.0, 4, 1}), Degeneracy::reduced_at_plus);
  EXPECT_EQ(degeneracy(GeneralParams{-1.0, 4, 1}), Degeneracy::reduced_at_minus);
  EXPECT_EQ(degeneracy(GeneralParams{0.0, 4, 1}), Degeneracy::monomial);
  EXPECT_EQ(degeneracy(GeneralParams{1.0 + 1e-15, 4, 1}), Degeneracy::none);
  EXPECT_EQ(degree(GeneralParams{1.0, 4, 2}), 4);
  EXPECT_EQ(degree(GeneralParams{0.5, 4, 2}), 6);
  EXPECT_EQ(degeneracy(BehlParams{1.0}), BehlDegeneracy::cubic);
  EXPECT_EQ(degeneracy(BehlParams{-3.0}), BehlDegeneracy::cubic);
  EXPECT_EQ(degeneracy(BehlParams{-1.0}), BehlDegeneracy::quartic);
  EXPECT_EQ(degeneracy(BehlParams{1.0 + 2.0 * std::sqrt(2.0)}), BehlDegeneracy::quartic_negated);
  EXPECT_EQ(degeneracy(BehlParams{1.0 - 2.0 * std::sqrt(2.0)}), BehlDegeneracy::quartic_negated);
  EXPECT_THROW((GeneralParams{0.5, 1, 1}.validate()), DynamicsError);
  EXPECT_THROW((GeneralParams{0.5, 4, 0}.validate()), DynamicsError);
  EXPECT_THROW(QuadraticTarget{0.0}.validate(), DynamicsError);
}

TEST(Operators, BehlExamples) {
  EXPECT_NEAR(std::abs(eval_b({1.0}, ExtendedComplex(2.0)).to_complex() - 8.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(eval_b({-1.0}, ExtendedComplex(2.0)).to_complex() - 16.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(eval_b({1.0 + 2.0 * std::sqrt(2.0)}, ExtendedComplex(2.0)).to_complex() + 16.0), 0.0, 1e-12);
  const Complex b(2.0, 1.0);
  const ExtendedComplex z(Complex(0.4, 0.3));
  EXPECT_LT(rel(eval_b({b}, z), eval_ank({reparam_a_of_b(b), 4, 1}, z)), 1e-12);
}

TEST(Operators, DerivativeExamples) {
  EXPECT_EQ(eval_ank_deriv({Complex(0.3, 0.1), 4, 2}, ExtendedComplex(0.0)), Complex(0.0, 0.0));
  EXPECT_NEAR(std::abs(eval_ank_deriv({5.0 / 3.0, 4, 1}, ExtendedComplex(1.0))), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(eval_b_deriv({-7.0 + 2.0 * std::sqrt(10.0)}, ExtendedComplex(-1.0))), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(eval_b_deriv({3.0}, ExtendedComplex(1.0))), 0.0, 1e-14);

  const GeneralParams p{Complex(0.3, 0.2), 5, 2};
  const Complex z(0.7, -0.1);
  const Complex exact = eval_ank_deriv(p, ExtendedComplex(z));
  EXPECT_LT(std::abs(exact - fd_ank(p, z)) / std::abs(exact), 1e-6);

  const BehlParams pb{Complex(0.5, 0.5)};
  const Complex eb = eval_b_deriv(pb, ExtendedComplex(1.2));
  EXPECT_LT(std::abs(eb - fd_b(pb, 1.2)) / std::abs(eb), 1e-6);
}

TEST(Operators, DerivativeErrors) {
  const GeneralParams p{0.5, 4, 1};
  EXPECT_THROW(eval_ank_deriv(p, ExtendedComplex(2.0)), DynamicsError);
  EXPECT_THROW(eval_ank_deriv(p, ExtendedComplex::infinity()), DynamicsError);
  try {
    eval_ank_deriv(p, ExtendedComplex(2.0));
  } catch (const DynamicsError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::derivative_at_pole);
  }
}

TEST(Operators, DerivativeMatchesFiniteDifferencesAtRandom) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> ni(2, 6), ki(1, 4);
  int checked = 0;
  while (checked < 300) {
    const GeneralParams p{Complex(u(rng), u(rng)), ni(rng), ki(rng)};
    const Complex z(u(rng), u(rng));
    if (std::abs(1.0 - p.a * z) < 0.1 * std::abs(p.a) || std::abs(z) > 1.5 || std::abs(z) < 0.2) continue;
    const Complex exact = eval_ank_deriv(p, ExtendedComplex(z));
    if (std::abs(exact) < 1e-3) continue;
    EXPECT_LT(std::abs(exact - fd_ank(p, z)) / std::abs(exact), 1e-6) << p.a << " " << p.n << " " << p.k << " " << z;
    ++checked;
  }
  checked = 0;
  while (checked < 200) {
    const BehlParams p{Complex(u(rng), u(rng))};
    const Complex z(u(rng), u(rng));
    const Complex den = -3.0 + 2.0 * p.b + p.b * p.b + (-11.0 - 6.0 * p.b + p.b * p.b) * z;
    if (std::abs(den) < 0.5 || std::abs(z) > 1.5) continue;
    const Complex exact = eval_b_deriv(p, ExtendedComplex(z));
    if (std::abs(exact) < 1e-3) continue;
    EXPECT_LT(std::abs(exact - fd_b(p, z)) / std::abs(exact), 1e-6);
    ++checked;
  }
}

TEST(Operators, InversionAndSignSymmetry) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> ni(2, 7), ki(1, 5);
  for (int t = 0; t < 500; ++t) {
    const GeneralParams p{Complex(u(rng), u(rng)), ni(rng), ki(rng)};
    const ExtendedComplex z(Complex(u(rng), u(rng)));
    EXPECT_LT(rel(eval_ank(p, z.reciprocal()), eval_ank(p, z).reciprocal()), 1e-10);
    if ((p.n + p.k) % 2 == 1) {
      const GeneralParams q{-p.a, p.n, p.k};
      EXPECT_LT(rel(eval_ank(q, z.negated()).negated(), eval_ank(p, z)), 1e-10);
    }
    const BehlParams pb{Complex(u(rng), u(rng))};
    EXPECT_LT(rel(eval_b(pb, z.reciprocal()), eval_b(pb, z).reciprocal()), 1e-10);
  }
}

TEST(Operators, UnitCircleInvariance) {
  for (double a : {0.3, 1.2, -1.4, 1.9, 0.999}) {
    for (auto [n, k] : {std::pair{4, 1}, {3, 2}, {6, 2}}) {
      double worst = 0.0;
      for (int j = 0; j < 4096; ++j) {
        const ExtendedComplex z(std::polar(1.0, 2.0 * std::numbers::pi * j / 4096));
        worst = std::max(worst, std::abs(eval_ank({a, n, k}, z).modulus() - 1.0));
      }
      EXPECT_LT(worst, 1e-10) << a << " " << n << " " << k;
    }
  }
}

TEST(Operators, ChartConsistency) {
  // The same point given in the other chart evaluates to the same point.
  const GeneralParams p{Complex(0.7, -0.4), 4, 2};
  for (Complex z : {Complex(0.9, 0.5), Complex(1.0, 0.0), Complex(-0.3, 1.1)}) {
    const ExtendedComplex standard = ExtendedComplex::from_chart(Chart::standard, z);
    const ExtendedComplex inverted = ExtendedComplex(1.0 / z).reciprocal();
    EXPECT_LT(chordal_distance(eval_ank(p, standard), eval_ank(p, inverted)), 1e-14);
  }
}

TEST(Operators, Reparametrization) {
  EXPECT_NEAR(std::abs(reparam_a_of_b(3.0) - 5.0 / 3.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(reparam_a_of_b(-1.0) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(reparam_a_of_b(-1e6) + 1.0), 0.0, 1e-5);
  EXPECT_THROW(reparam_a_of_b(1.0), DynamicsError);
  EXPECT_THROW(reparam_a_of_b(-3.0), DynamicsError);

  const BehlPreimages pre = reparam_b_of_a(5.0 / 3.0);
  ASSERT_TRUE(pre.second.has_value());
  const double d1 = std::abs(pre.first - 3.0) + std::abs(*pre.second + 2.0);
  const double d2 = std::abs(pre.first + 2.0) + std::abs(*pre.second - 3.0);
  EXPECT_LT(std::min(d1, d2), 1e-12);

  const BehlPreimages m = reparam_b_of_a(-5.0 / 3.0);
  const double s = 2.0 * std::sqrt(10.0);
  const double e1 = std::abs(m.first - (-7.0 + s)) + std::abs(*m.second - (-7.0 - s));
  const double e2 = std::abs(m.first - (-7.0 - s)) + std::abs(*m.second - (-7.0 + s));
  EXPECT_LT(std::min(e1, e2), 1e-12);

  const BehlPreimages u = reparam_b_of_a(-1.0);
  EXPECT_TRUE(u.unbounded_branch);
  EXPECT_FALSE(u.second.has_value());
  EXPECT_NEAR(std::abs(reparam_a_of_b(u.first) + 1.0), 0.0, 1e-14);
}

TEST(Operators, ReparametrizationRoundTripAndOperatorAgreement) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int t = 0; t < 300; ++t) {
    const Complex a(u(rng), u(rng));
    const BehlPreimages pre = reparam_b_of_a(a);
    for (Complex b : {pre.first, *pre.second}) {
      EXPECT_LT(std::abs(reparam_a_of_b(b) - a) / std::max(1.0, std::abs(a)), 1e-10);
      const ExtendedComplex z(Complex(u(rng), u(rng)));
      EXPECT_LT(rel(eval_b({b}, z), eval_ank({a, 4, 1}, z)), 1e-9);
    }
  }
}

TEST(Operators, BehlStepFixesRootAndIsConjugate) {
  const QuadraticTarget t{1.0};
  EXPECT_NEAR(std::abs(behl_step(BehlParams{2.0}, t, t.root()) - t.root()), 0.0, 1e-15);
  const ExtendedComplex lhs = moebius_h(t, ExtendedComplex(behl_step(BehlParams{2.0}, t, Complex(0.0, 0.9))));
  const ExtendedComplex rhs = eval_b({2.0}, moebius_h(t, ExtendedComplex(Complex(0.0, 0.9))));
  EXPECT_LT(rel(lhs, rhs), 1e-9);

  // The conjugacy holds for other targets too.
  const QuadraticTarget t2{Complex(2.0, -1.0)};
  const BehlParams p{Complex(0.7, 0.4)};
  for (Complex x : {Complex(1.0, 1.0), Complex(-0.5, 2.0), Complex(3.0, -0.2)}) {
    EXPECT_LT(rel(moebius_h(t2, ExtendedComplex(behl_step(p, t2, x))), eval_b(p, moebius_h(t2, ExtendedComplex(x)))),
              1e-9);
  }
  EXPECT_THROW(behl_step(BehlParams{2.0}, t, Complex(0.0, 0.0)), DynamicsError);
}

TEST(Operators, MoebiusH) {
  const QuadraticTarget t{1.0};
  EXPECT_TRUE(moebius_h(t, ExtendedComplex(Complex(0.0, 1.0))).is_zero());
  EXPECT_TRUE(moebius_h(t, ExtendedComplex(Complex(0.0, -1.0))).is_infinity());
  const QuadraticTarget t3{Complex(3.0, 1.0)};
  EXPECT_LT(chordal_distance(moebius_h(t3, ExtendedComplex::infinity()), ExtendedComplex(1.0)), 1e-15);
  const ExtendedComplex z(Complex(0.3, -2.0));
  EXPECT_LT(rel(moebius_h_inverse(t3, moebius_h(t3, z)), z), 1e-14);
}

TEST(Operators, ConjugatedMapR) {
  const GeneralParams p{0.4, 4, 1};
  const ExtendedComplex z(Complex(2.0, 1.0));
  const ExtendedComplex via = cayley_involution(eval_ank(p, cayley_involution(z)));
  EXPECT_LT(rel(eval_R(p, z), via), 1e-10);
  EXPECT_LT(rel(eval_R(p, z.negated()), eval_R(p, z).negated()), 1e-14);
  EXPECT_LT(chordal_distance(eval_R(p, ExtendedComplex(1.0)), ExtendedComplex(1.0)), 1e-15);

  // Local degree n at 1: R(1+h) - 1 = O(h^n).
  const GeneralParams q{Complex(0.4, 0.2), 4, 2};
  const double h1 = 1e-2, h2 = 5e-3;
  const double r1 = std::abs(eval_R(q, ExtendedComplex(1.0 + h1)).to_complex() - 1.0);
  const double r2 = std::abs(eval_R(q, ExtendedComplex(1.0 + h2)).to_complex() - 1.0);
  EXPECT_NEAR(std::log(r1 / r2) / std::log(h1 / h2), 4.0, 0.05);
}

TEST(Operators, SemiconjugacyS) {
  const GeneralParams p{0.4, 4, 1};
  const Complex z(1.3, -0.2);
  EXPECT_LT(rel(eval_S(p, ExtendedComplex(z * z)), eval_R(p, ExtendedComplex(z)).squared()), 1e-12);
  const ExtendedComplex w(Complex(0.0, 2.0));
  const ExtendedComplex r = w.sqrt();
  EXPECT_LT(rel(eval_R(p, r).squared(), eval_R(p, r.negated()).squared()), 1e-12);
  EXPECT_LT(chordal_distance(eval_S(p, ExtendedComplex(1.0)), ExtendedComplex(1.0)), 1e-15);
}

TEST(Operators, RAtMinusOneFallsBackToConjugation) {
  const GeneralParams p{-1.0, 3, 2};
  const ExtendedComplex z(Complex(0.2, 0.7));
  EXPECT_LT(rel(eval_R(p, z), cayley_involution(eval_ank(p, cayley_involution(z)))), 1e-12);
}
