#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "rootdyn/error.hpp"
#include "rootdyn/extended_complex.hpp"
#include "rootdyn/operators.hpp"
#include "rootdyn/polynomial.hpp"

namespace rootdyn {

enum class Stability { superattracting, attracting, indifferent, repelling };

inline const char* to_string(Stability s) {
  switch (s) {
    case Stability::superattracting: return "superattracting";
    case Stability::attracting: return "attracting";
    case Stability::indifferent: return "indifferent";
    case Stability::repelling: return "repelling";
  }
  return "?";
}

inline constexpr double kSuperattractingTolerance = 1e-9;
inline constexpr double kDefaultIndifferenceTolerance = 1e-9;
inline constexpr double kFixedPointResidual = 1e-8;

inline Stability classify_multiplier(Complex lambda, double tol_indiff = kDefaultIndifferenceTolerance) {
  const double m = std::abs(lambda);
  if (m < kSuperattractingTolerance) return Stability::superattracting;
  if (std::abs(m - 1.0) <= tol_indiff) return Stability::indifferent;
  return m < 1.0 ? Stability::attracting : Stability::repelling;
}

struct FixedPointReport {
  ExtendedComplex location;
  Complex multiplier{0.0, 0.0};
  Stability stability = Stability::repelling;
  bool strange = false;  // not one of the root images 0 and infinity
  int multiplicity = 1;
};

/// An ordered pair from a quadratic formula, + branch first.
struct PointPair {
  Complex plus;
  Complex minus;
};

namespace detail {

// Roots of a quadratic whose two roots multiply to 1, given as
// (m +- s) / d. The larger numerator is evaluated directly and the other root
// is its reciprocal, which keeps c+ c- = 1 to rounding.
inline PointPair reciprocal_pair(Complex m, Complex s, Complex d) {
  const Complex plus_num = m + s;
  const Complex minus_num = m - s;
  if (std::abs(plus_num) >= std::abs(minus_num)) {
    const Complex plus = plus_num / d;
    return {plus, 1.0 / plus};
  }
  const Complex minus = minus_num / d;
  return {1.0 / minus, minus};
}

/// Residual |O(z) - z| measured in z's own chart.
template <class Params>
double fixed_point_residual(const Params& p, const ExtendedComplex& z) {
  const ExtendedComplex image = apply_map(p, z);
  return std::abs(image.in_chart(z.chart()) - z.value());
}

template <class Params>
Complex multiplier_in_chart(const Params& p, const ExtendedComplex& z0) {
  // Both families satisfy O(1/w) = 1/O(w), so the map read in the inverted
  // chart is the same map: its derivative at the chart value is the multiplier.
  // At infinity this is the derivative of w -> 1/O(1/w) at w = 0.
  return map_derivative(p, ExtendedComplex(z0.value()));
}

template <class Params>
FixedPointReport multiplier_and_class_impl(const Params& p, const ExtendedComplex& z0, double tol_indiff) {
  const double residual = fixed_point_residual(p, z0);
  if (!(residual <= kFixedPointResidual)) {
    throw DynamicsError(ErrorKind::not_a_fixed_point, "residual " + std::to_string(residual));
  }
  FixedPointReport r;
  r.location = z0;
  r.multiplier = multiplier_in_chart(p, z0);
  r.stability = classify_multiplier(r.multiplier, tol_indiff);
  r.strange = !(z0.is_zero() || z0.is_infinity());
  return r;
}

inline std::vector<FixedPointReport> monomial_fixed_points(double sign, int degree,
                                                           double tol_indiff) {
  // sign * z^degree = z: 0, infinity and the (degree-1) roots of z^(degree-1) = 1/sign.
  std::vector<FixedPointReport> out;
  const double lambda0 = 0.0;
  out.push_back({ExtendedComplex(0.0), Complex(lambda0, 0.0), Stability::superattracting, false, 1});
  out.push_back({ExtendedComplex::infinity(), Complex(lambda0, 0.0), Stability::superattracting, false, 1});
  const int m = degree - 1;
  const double offset = sign > 0 ? 0.0 : std::numbers::pi;
  for (int j = 0; j < m; ++j) {
    const Complex z = std::polar(1.0, (offset + 2.0 * std::numbers::pi * j) / m);
    const Complex lambda = sign * static_cast<double>(degree) * ipow(z, degree - 1);
    out.push_back({ExtendedComplex(z), lambda, classify_multiplier(lambda, tol_indiff), true, 1});
  }
  return out;
}

}  // namespace detail

/// Multiplier and stability class of a fixed point; throws if z0 is not fixed.
inline FixedPointReport multiplier_and_class(const GeneralParams& p, const ExtendedComplex& z0,
                                             double tol_indiff = kDefaultIndifferenceTolerance) {
  return detail::multiplier_and_class_impl(p, z0, tol_indiff);
}

inline FixedPointReport multiplier_and_class(const BehlParams& p, const ExtendedComplex& z0,
                                             double tol_indiff = kDefaultIndifferenceTolerance) {
  return detail::multiplier_and_class_impl(p, z0, tol_indiff);
}

/// All fixed points of O_{a,n,k} on the sphere, counted with multiplicity.
///
/// Infinity and 0 are known; the rest are roots of
/// z^(n-1) (z - a)^k - (1 - a z)^k, found by the Aberth solver and clustered.
inline std::vector<FixedPointReport> fixed_points_ank(const GeneralParams& p,
                                                      const PolynomialRootConfig& cfg = {},
                                                      double tol_indiff = kDefaultIndifferenceTolerance) {
  p.validate();
  cfg.validate();
  switch (degeneracy(p)) {
    case Degeneracy::reduced_at_plus:
      return detail::monomial_fixed_points(p.k % 2 == 0 ? 1.0 : -1.0, p.n, tol_indiff);
    case Degeneracy::reduced_at_minus:
      return detail::monomial_fixed_points(1.0, p.n, tol_indiff);
    default: break;
  }

  Polynomial zn1(static_cast<std::size_t>(p.n), Complex(0.0, 0.0));
  zn1.back() = 1.0;  // z^(n-1)
  const Polynomial lhs = poly_multiply(zn1, poly_power({-p.a, 1.0}, p.k));
  const Polynomial rhs = poly_power({1.0, -p.a}, p.k);
  const Polynomial reduced = poly_subtract(lhs, rhs);
  const std::vector<Complex> roots = aberth_roots(reduced, cfg);
  const std::vector<RootCluster> clusters = cluster_roots(roots, cfg.cluster_radius);

  std::vector<FixedPointReport> out;
  out.push_back({ExtendedComplex(0.0), Complex(0.0, 0.0), Stability::superattracting, false, 1});
  out.push_back({ExtendedComplex::infinity(), Complex(0.0, 0.0), Stability::superattracting, false, 1});
  for (const RootCluster& c : clusters) {
    const ExtendedComplex z(c.location);
    FixedPointReport r;
    r.location = z;
    r.multiplier = detail::multiplier_in_chart(p, z);
    r.stability = classify_multiplier(r.multiplier, tol_indiff);
    r.strange = true;
    r.multiplicity = c.multiplicity;
    out.push_back(r);
  }
  return out;
}

/// z+- = (a +- sqrt(a^2 - 4)) / 2, the strange fixed points of O_{a,4,1} besides +-1.
inline PointPair strange_fixed_zpm_a(Complex a) {
  return detail::reciprocal_pair(a, std::sqrt(a * a - 4.0), Complex(2.0, 0.0));
}

/// The two strange fixed points z+- of O_b besides +-1; z+ z- = 1.
inline PointPair strange_fixed_zpm_b(Complex b) {
  const Complex d = 2.0 * (b - 1.0) * (b + 3.0);
  if (d == Complex(0.0, 0.0)) throw DynamicsError(ErrorKind::formula_undefined, "b in {1, -3}");
  const Complex m = 11.0 + 6.0 * b - b * b;
  const Complex s = std::sqrt((5.0 + 10.0 * b + b * b) * (17.0 + 2.0 * b - 3.0 * b * b));
  return detail::reciprocal_pair(m, s, d);
}

/// Fixed points of O_b from the closed forms (reduced monomials when degenerate).
inline std::vector<FixedPointReport> fixed_points_b(const BehlParams& p,
                                                    double tol_indiff = kDefaultIndifferenceTolerance) {
  switch (degeneracy(p)) {
    case BehlDegeneracy::cubic: return detail::monomial_fixed_points(1.0, 3, tol_indiff);
    case BehlDegeneracy::quartic: return detail::monomial_fixed_points(1.0, 4, tol_indiff);
    case BehlDegeneracy::quartic_negated: return detail::monomial_fixed_points(-1.0, 4, tol_indiff);
    case BehlDegeneracy::none: break;
  }
  std::vector<FixedPointReport> out;
  out.push_back({ExtendedComplex(0.0), Complex(0.0, 0.0), Stability::superattracting, false, 1});
  out.push_back({ExtendedComplex::infinity(), Complex(0.0, 0.0), Stability::superattracting, false, 1});
  const PointPair zpm = strange_fixed_zpm_b(p.b);
  for (Complex z : {Complex(1.0, 0.0), Complex(-1.0, 0.0), zpm.plus, zpm.minus}) {
    const Complex lambda = eval_b_deriv(p, ExtendedComplex(z));
    out.push_back({ExtendedComplex(z), lambda, classify_multiplier(lambda, tol_indiff), true, 1});
  }
  return out;
}

struct CriticalPoint {
  ExtendedComplex location;
  int multiplicity = 1;
};

struct CriticalSet {
  std::vector<CriticalPoint> fixed_critical;     // 0 and infinity
  std::vector<CriticalPoint> preimage_critical;  // a and 1/a (k > 1)
  std::optional<PointPair> free;                 // c+ and c-
  bool degenerate = false;

  int total_multiplicity() const {
    int total = free ? 2 : 0;
    for (const auto& c : fixed_critical) total += c.multiplicity;
    for (const auto& c : preimage_critical) total += c.multiplicity;
    return total;
  }
};

/// Free critical points of O_{a,n,k} from the closed form, + branch first.
/// Defined for every a != 0 (including the degenerate a = +-1).
inline PointPair free_critical_points_ank(const GeneralParams& p) {
  if (p.a == Complex(0.0, 0.0)) throw DynamicsError(ErrorKind::formula_undefined, "a = 0");
  const double n = p.n;
  const double k = p.k;
  const Complex a2 = p.a * p.a;
  const Complex m = (n + k) + (n - k) * a2;
  const Complex s = std::sqrt((a2 - 1.0) * ((n - k) * (n - k) * a2 - (n + k) * (n + k)));
  return detail::reciprocal_pair(m, s, 2.0 * n * p.a);
}

inline CriticalSet critical_set_ank(const GeneralParams& p) {
  p.validate();
  CriticalSet set;
  switch (degeneracy(p)) {
    case Degeneracy::monomial:
      // z^(n+k): only 0 and infinity, each of multiplicity n+k-1.
      set.degenerate = true;
      set.fixed_critical = {{ExtendedComplex(0.0), p.n + p.k - 1},
                            {ExtendedComplex::infinity(), p.n + p.k - 1}};
      return set;
    case Degeneracy::reduced_at_plus:
    case Degeneracy::reduced_at_minus:
      set.degenerate = true;
      set.fixed_critical = {{ExtendedComplex(0.0), p.n - 1}, {ExtendedComplex::infinity(), p.n - 1}};
      return set;
    case Degeneracy::none: break;
  }
  set.fixed_critical = {{ExtendedComplex(0.0), p.n - 1}, {ExtendedComplex::infinity(), p.n - 1}};
  if (p.k > 1) {
    set.preimage_critical = {{ExtendedComplex(p.a), p.k - 1},
                             {ExtendedComplex(p.a).reciprocal(), p.k - 1}};
  }
  set.free = free_critical_points_ank(p);
  return set;
}

/// Free critical points of O_b; c+ = 1/c-.
inline PointPair critical_points_b(Complex b) {
  const Complex den = (b - 1.0) * (b + 3.0) * (b * b - 6.0 * b - 11.0);
  if (den == Complex(0.0, 0.0)) throw DynamicsError(ErrorKind::formula_undefined, "b in {1, -3, 3 +- 2 sqrt 5}");
  const Complex m = -51.0 - 42.0 * b - 4.0 * b * b + 2.0 * ipow(b, 3) - ipow(b, 4);
  const Complex s = 2.0 * std::sqrt((b - 3.0) * (b + 1.0) * (b + 2.0) * (b * b - 2.0 * b - 7.0) *
                                    (b * b + 14.0 * b + 9.0));
  return detail::reciprocal_pair(m, s, den);
}

}  // namespace rootdyn
