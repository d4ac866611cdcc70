#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "rootdyn/error.hpp"
#include "rootdyn/extended_complex.hpp"
#include "rootdyn/fixed_points.hpp"
#include "rootdyn/operators.hpp"
#include "rootdyn/parallel.hpp"

namespace rootdyn {

enum class RegionClass { attracting, indifferent, repelling, not_fixed };

inline const char* to_string(RegionClass r) {
  switch (r) {
    case RegionClass::attracting: return "attracting";
    case RegionClass::indifferent: return "indifferent";
    case RegionClass::repelling: return "repelling";
    case RegionClass::not_fixed: return "not_fixed";
  }
  return "?";
}

inline constexpr double kRegionBand = 1e-9;

/// Negative inside the attracting region, zero on its boundary.
inline RegionClass region_from_value(double value, double tol) {
  if (std::abs(value) <= tol) return RegionClass::indifferent;
  return value < 0.0 ? RegionClass::attracting : RegionClass::repelling;
}

/// Signed membership value for z = 1 of O_{a,n,k}. The three regimes are a
/// disk (|n-k| >= 2), a half plane (|n-k| = 1) and a disk complement (n = k).
inline double region_z1_value(Complex a, int n, int k) {
  const int d = n - k;
  if (d == 0) return 2.0 * k - std::abs(a - 1.0);
  if (d == 1) return n - a.real();
  if (d == -1) return a.real() + n;
  const double denom = static_cast<double>(d * d - 1);
  const double center = static_cast<double>(n * n - k * k - 1) / denom;
  const double radius = 2.0 * k / denom;
  return std::abs(a - center) - radius;
}

inline RegionClass region_z1_ank(Complex a, int n, int k, double tol = kRegionBand) {
  return region_from_value(region_z1_value(a, n, k), tol);
}

/// z = -1 is fixed only for n+k odd, where O_{-a} is conjugate to O_a by z -> -z.
inline RegionClass region_zm1_ank(Complex a, int n, int k, double tol = kRegionBand) {
  if ((n + k) % 2 == 0) return RegionClass::not_fixed;
  return region_z1_ank(-a, n, k, tol);
}

/// beta^2 - nu(alpha)^2 with nu(alpha)^2 = -5 - alpha^2 + sqrt(1 + 20 alpha^2);
/// negative exactly when z+- of O_{a,4,1} attract.
inline double region_zpm_value(Complex a) {
  const double alpha = a.real();
  const double beta = a.imag();
  return beta * beta + 5.0 + alpha * alpha - std::sqrt(1.0 + 20.0 * alpha * alpha);
}

inline RegionClass region_zpm_a(Complex a, double tol = kRegionBand) {
  return region_from_value(region_zpm_value(a), tol);
}

/// Degree-8 real polynomial whose zero set is the indifference curve of z+-
/// for O_b, evaluated at b = alpha + i beta.
inline double behl_zpm_curve_polynomial(double alpha, double beta) {
  const double a = alpha;
  const double a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a, a6 = a5 * a;
  const double b2 = beta * beta, b4 = b2 * b2, b6 = b4 * b2, b8 = b4 * b4;
  return (5 + 10 * a + a2) * (-17 - 2 * a + 3 * a2) * (-67 - 204 * a - 26 * a2 + 36 * a3 + 5 * a4) +
         4 * (8259 + 5994 * a + 1225 * a2 - 4 * a3 + 709 * a4 + 186 * a5 + 15 * a6) * b2 +
         2 * (6069 + 1508 * a + 1606 * a2 + 372 * a3 + 45 * a4) * b4 +
         4 * (299 + 62 * a + 15 * a2) * b6 + 15 * b8;
}

struct BehlCurveValues {
  std::optional<double> v_m1;  // |O_b'(-1)| - 1; absent for b = -1
  std::optional<double> v_p1;  // |O_b'(1)| - 1; absent for b = 1 +- 2 sqrt 2
  std::optional<double> v_pm;  // curve polynomial; absent for b in {1, -3}
};

inline BehlCurveValues behl_curve_values(Complex b) {
  const BehlParams p{b};
  const BehlDegeneracy d = degeneracy(p);
  BehlCurveValues out;
  if (d != BehlDegeneracy::quartic) out.v_m1 = std::abs(eval_b_deriv(p, ExtendedComplex(-1.0))) - 1.0;
  if (d != BehlDegeneracy::quartic_negated) out.v_p1 = std::abs(eval_b_deriv(p, ExtendedComplex(1.0))) - 1.0;
  if (d != BehlDegeneracy::cubic) out.v_pm = behl_zpm_curve_polynomial(b.real(), b.imag());
  return out;
}

/// |O_b'(z+)| - 1, the direct multiplier test for the z+- region.
inline double behl_zpm_multiplier_value(Complex b) {
  const BehlParams p{b};
  if (degeneracy(p) == BehlDegeneracy::cubic) return std::numeric_limits<double>::infinity();
  const PointPair z = strange_fixed_zpm_b(b);
  return std::abs(eval_b_deriv(p, ExtendedComplex(z.plus))) - 1.0;
}

enum class ParameterPlane { a, b };

struct Interval {
  double lo;
  double hi;
  bool contains(double x) const { return lo < x && x < hi; }
};

struct AntennaIntervals {
  ParameterPlane plane = ParameterPlane::a;
  std::vector<Interval> intervals;  // disjoint, ordered

  bool contains(double x) const {
    return std::any_of(intervals.begin(), intervals.end(), [x](const Interval& i) { return i.contains(x); });
  }
};

/// Real parameters for which c+- of O_{a,n,k} lie on the unit circle.
inline AntennaIntervals antenna_intervals(int n, int k) {
  if (n == k) throw DynamicsError(ErrorKind::no_finite_antenna_bound, "n = k");
  const double bound = std::abs(static_cast<double>(n + k) / static_cast<double>(n - k));
  return {ParameterPlane::a, {{-bound, -1.0}, {1.0, bound}}};
}

/// Image of the (4,1) antenna in the b plane; the first interval is unbounded.
inline AntennaIntervals antenna_b_image() {
  const double inf = std::numeric_limits<double>::infinity();
  const double s10 = std::sqrt(10.0);
  return {ParameterPlane::b,
          {{-inf, -7.0 - 2.0 * s10},
           {-2.0, 1.0 - 2.0 * constants::sqrt2},
           {-1.0, -7.0 + 2.0 * s10},
           {3.0, 1.0 + 2.0 * constants::sqrt2}}};
}

enum class FixedPointKind { z1, zm1, zpm };
enum class Parametrization { a_general, b_behl };

inline const char* to_string(FixedPointKind k) {
  switch (k) {
    case FixedPointKind::z1: return "z1";
    case FixedPointKind::zm1: return "zm1";
    case FixedPointKind::zpm: return "zpm";
  }
  return "?";
}

struct StabilityRegionQuery {
  FixedPointKind which = FixedPointKind::z1;
  Parametrization family = Parametrization::a_general;
  int n = 4;
  int k = 1;
  Complex parameter{0.0, 0.0};

  void validate() const {
    if (family == Parametrization::a_general) {
      GeneralParams{parameter, n, k}.validate();
      if (which == FixedPointKind::zpm && !(n == 4 && k == 1)) {
        throw DynamicsError(ErrorKind::invalid_parameter, "z+- regions are defined for (n,k) = (4,1) only");
      }
    }
  }
};

/// Signed region value at `param` (negative = the point attracts).
inline double region_value(const StabilityRegionQuery& q, Complex param) {
  if (q.family == Parametrization::a_general) {
    switch (q.which) {
      case FixedPointKind::z1: return region_z1_value(param, q.n, q.k);
      case FixedPointKind::zm1: return region_z1_value(-param, q.n, q.k);
      case FixedPointKind::zpm: return region_zpm_value(param);
    }
  }
  const BehlParams p{param};
  switch (q.which) {
    case FixedPointKind::z1: return std::abs(eval_b_deriv(p, ExtendedComplex(1.0))) - 1.0;
    case FixedPointKind::zm1: return std::abs(eval_b_deriv(p, ExtendedComplex(-1.0))) - 1.0;
    case FixedPointKind::zpm: return behl_zpm_multiplier_value(param);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

inline RegionClass classify_region(const StabilityRegionQuery& q, double tol = kRegionBand) {
  q.validate();
  if (q.family == Parametrization::a_general) {
    switch (q.which) {
      case FixedPointKind::z1: return region_z1_ank(q.parameter, q.n, q.k, tol);
      case FixedPointKind::zm1: return region_zm1_ank(q.parameter, q.n, q.k, tol);
      case FixedPointKind::zpm: return region_zpm_a(q.parameter, tol);
    }
  }
  const BehlParams p{q.parameter};
  const BehlDegeneracy d = degeneracy(p);
  if (q.which == FixedPointKind::zm1 && d == BehlDegeneracy::quartic) return RegionClass::not_fixed;
  if (q.which == FixedPointKind::z1 && d == BehlDegeneracy::quartic_negated) return RegionClass::not_fixed;
  if (q.which == FixedPointKind::zpm && d == BehlDegeneracy::cubic) return RegionClass::not_fixed;
  return region_from_value(region_value(q, q.parameter), tol);
}

struct TraceConfig {
  double tolerance = 1e-10;     // bisection bracket width
  double radial_start = 1e-6;   // first radius probed from a center
  double radial_growth = 1.02;  // geometric step between probes
  double max_radius = 200.0;
  // Axis grid used when a region has no superattracting center.
  double x_min = -50.0, x_max = 50.0, y_min = -50.0, y_max = 50.0;
  int scan_steps = 4000;
  int threads = 0;
};

/// Boundary curves, one polyline per connected piece that was scanned.
struct BoundaryTrace {
  std::vector<std::vector<Complex>> components;

  std::size_t point_count() const {
    std::size_t n = 0;
    for (const auto& c : components) n += c.size();
    return n;
  }
};

namespace detail {

template <class F>
double bisect_sign_change(F&& f, double lo, double hi, bool lo_negative, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline std::vector<Complex> region_centers(const StabilityRegionQuery& q) {
  const double s5 = std::sqrt(5.0);
  if (q.family == Parametrization::a_general) {
    const int d = q.n - q.k;
    switch (q.which) {
      case FixedPointKind::z1:
        if (d == 0) return {Complex(1.0, 0.0)};
        if (std::abs(d) == 1) return {};
        return {Complex(static_cast<double>(q.n + q.k) / d, 0.0)};
      case FixedPointKind::zm1: return {};  // traced as the mirror of z1
      case FixedPointKind::zpm: return {Complex(-s5, 0.0), Complex(s5, 0.0)};
    }
  }
  const double s10 = std::sqrt(10.0);
  switch (q.which) {
    case FixedPointKind::z1: return {Complex(-2.0, 0.0), Complex(3.0, 0.0)};
    case FixedPointKind::zm1: return {Complex(-7.0 - 2.0 * s10, 0.0), Complex(-7.0 + 2.0 * s10, 0.0)};
    case FixedPointKind::zpm: {
      const double r1 = std::sqrt(10.0 - 2.0 * s5);
      const double r2 = std::sqrt(10.0 + 2.0 * s5);
      return {Complex(-2.0 - s5 - r2, 0.0), Complex(-2.0 - s5 + r2, 0.0),
              Complex(-2.0 + s5 - r1, 0.0), Complex(-2.0 + s5 + r1, 0.0)};
    }
  }
  return {};
}

inline std::vector<Complex> trace_radial(const StabilityRegionQuery& q, Complex center, int samples,
                                         const TraceConfig& cfg) {
  std::vector<std::optional<Complex>> hits(static_cast<std::size_t>(samples));
  const bool center_negative = region_value(q, center) < 0.0;
  parallel_for(samples, cfg.threads, [&](int j) {
    const Complex dir = std::polar(1.0, 2.0 * std::numbers::pi * j / samples);
    auto f = [&](double r) { return region_value(q, center + r * dir); };
    double prev = 0.0;
    for (double r = cfg.radial_start; r <= cfg.max_radius; r *= cfg.radial_growth) {
      if ((f(r) < 0.0) != center_negative) {
        const double root = bisect_sign_change(f, prev, r, center_negative, cfg.tolerance);
        hits[static_cast<std::size_t>(j)] = center + root * dir;
        return;
      }
      prev = r;
    }
  });
  std::vector<Complex> out;
  for (const auto& h : hits) {
    if (h) out.push_back(*h);
  }
  return out;
}

inline std::vector<Complex> trace_axis_grid(const StabilityRegionQuery& q, int samples,
                                            const TraceConfig& cfg) {
  std::vector<std::vector<Complex>> rows(static_cast<std::size_t>(samples));
  const double dx = (cfg.x_max - cfg.x_min) / cfg.scan_steps;
  parallel_for(samples, cfg.threads, [&](int j) {
    const double y = cfg.y_min + (cfg.y_max - cfg.y_min) * j / (samples - 1);
    auto f = [&](double x) { return region_value(q, Complex(x, y)); };
    double prev_x = cfg.x_min;
    bool prev_negative = f(prev_x) < 0.0;
    for (int s = 1; s <= cfg.scan_steps; ++s) {
      const double x = cfg.x_min + s * dx;
      const bool negative = f(x) < 0.0;
      if (negative != prev_negative) {
        rows[static_cast<std::size_t>(j)].emplace_back(
            bisect_sign_change(f, prev_x, x, prev_negative, cfg.tolerance), y);
      }
      prev_x = x;
      prev_negative = negative;
    }
  });
  std::vector<Complex> out;
  for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace detail

/// Samples the indifference curve of a stability region.
///
/// Regions with a superattracting center are scanned along `samples` rays
/// from each center; the rest (the half planes for |n-k| = 1) along
/// `samples` horizontal lines of the configured axis grid. Each crossing is
/// refined by bisection to cfg.tolerance.
inline BoundaryTrace trace_boundary(const StabilityRegionQuery& q, int samples, const TraceConfig& cfg = {}) {
  q.validate();
  if (samples < 16) throw DynamicsError(ErrorKind::invalid_parameter, "samples must be >= 16");
  BoundaryTrace trace;
  if (q.family == Parametrization::a_general && q.which == FixedPointKind::zm1) {
    if ((q.n + q.k) % 2 == 0) return trace;
    StabilityRegionQuery mirror = q;
    mirror.which = FixedPointKind::z1;
    mirror.parameter = -q.parameter;
    trace = trace_boundary(mirror, samples, cfg);
    for (auto& component : trace.components) {
      for (auto& z : component) z = -z;
    }
    return trace;
  }
  const std::vector<Complex> centers = detail::region_centers(q);
  if (centers.empty()) {
    auto pts = detail::trace_axis_grid(q, samples, cfg);
    if (!pts.empty()) trace.components.push_back(std::move(pts));
    return trace;
  }
  for (Complex c : centers) {
    auto pts = detail::trace_radial(q, c, samples, cfg);
    if (!pts.empty()) trace.components.push_back(std::move(pts));
  }
  return trace;
}

}  // namespace rootdyn
