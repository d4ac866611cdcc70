#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_complex.hpp>

#include "rootdyn/error.hpp"
#include "rootdyn/extended_complex.hpp"
#include "rootdyn/fixed_points.hpp"
#include "rootdyn/operators.hpp"

namespace rootdyn {

struct EscapeConfig {
  int max_iter = 100;
  double eps_zero = 1e-8;
  double eps_inf = 1e8;
  // Real parameters leave the unit circle invariant; iterates within this
  // distance of it are projected back so rounding cannot push them off.
  double circle_snap_tol = 1e-11;

  void validate() const {
    if (max_iter < 1) throw DynamicsError(ErrorKind::invalid_parameter, "max_iter must be >= 1");
    if (!(eps_zero > 0.0 && eps_zero < 1.0 && eps_inf > 1.0)) {
      throw DynamicsError(ErrorKind::invalid_parameter, "need 0 < eps_zero < 1 < eps_inf");
    }
    if (!(circle_snap_tol >= 0.0)) throw DynamicsError(ErrorKind::invalid_parameter, "circle_snap_tol < 0");
  }
};

enum class Outcome : std::uint8_t { to_zero = 0, to_infinity = 1, to_strange = 2, undecided = 3 };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::to_zero: return "to_zero";
    case Outcome::to_infinity: return "to_infinity";
    case Outcome::to_strange: return "to_strange";
    case Outcome::undecided: return "undecided";
  }
  return "?";
}

struct OrbitClassification {
  Outcome outcome = Outcome::undecided;
  int iterations = 0;
  ExtendedComplex witness;  // last orbit point
  int attractor_id = -1;    // index into the attractor list for to_strange
  bool degenerate = false;  // computed on a reduced-degree map
};

struct CycleReport {
  int period = 1;
  Complex representative;
  Complex multiplier;
};

struct CycleSearch {
  std::optional<CycleReport> cycle;
  bool escaped = false;  // orbit reached 0 or infinity during burn-in
};

/// For real parameters, projects `next` onto the unit circle when both it and
/// its preimage `w` lie within circle_snap_tol of the circle.
template <class Params>
ExtendedComplex snap_to_circle(const Params& p, const ExtendedComplex& w, const ExtendedComplex& next,
                               double circle_snap_tol) {
  if (circle_snap_tol > 0.0 && preserves_unit_circle(p) &&
      std::abs(std::abs(w.value()) - 1.0) <= circle_snap_tol &&
      std::abs(std::abs(next.value()) - 1.0) <= circle_snap_tol) {
    return next.projected_to_unit_circle();
  }
  return next;
}

/// One map application followed by snap_to_circle.
template <class Params>
ExtendedComplex orbit_step(const Params& p, const ExtendedComplex& w, double circle_snap_tol) {
  return snap_to_circle(p, w, apply_map(p, w), circle_snap_tol);
}

namespace detail {

// Thresholds read in the point's active chart, so z and 1/z test identically.
inline std::optional<Outcome> escape_outcome(const ExtendedComplex& w, const EscapeConfig& cfg) {
  const double m = std::abs(w.value());
  if (w.chart() == Chart::standard) {
    if (m < cfg.eps_zero) return Outcome::to_zero;
  } else {
    if (m < 1.0 / cfg.eps_inf) return Outcome::to_infinity;
  }
  return std::nullopt;
}

template <class Params>
OrbitClassification iterate_orbit(const Params& p, ExtendedComplex w, const EscapeConfig& cfg,
                                  std::span<const ExtendedComplex> attractors) {
  constexpr double kProximity = 1e-6;
  constexpr int kProximityRun = 3;
  OrbitClassification out;
  int near_id = -1;
  int near_run = 0;
  for (int i = 1; i <= cfg.max_iter; ++i) {
    w = orbit_step(p, w, cfg.circle_snap_tol);
    out.iterations = i;
    out.witness = w;
    if (w.is_nan()) return out;
    if (auto e = escape_outcome(w, cfg)) {
      out.outcome = *e;
      return out;
    }
    int id = -1;
    for (std::size_t j = 0; j < attractors.size(); ++j) {
      if (chordal_distance(w, attractors[j]) < kProximity) {
        id = static_cast<int>(j);
        break;
      }
    }
    near_run = (id >= 0 && id == near_id) ? near_run + 1 : (id >= 0 ? 1 : 0);
    near_id = id;
    if (near_run >= kProximityRun) {
      out.outcome = Outcome::to_strange;
      out.attractor_id = id;
      return out;
    }
  }
  return out;
}

inline OrbitClassification degenerate_critical_orbit() {
  // The reduced maps are monomials +-z^d whose only critical points are the
  // fixed points 0 and infinity.
  OrbitClassification out;
  out.outcome = Outcome::to_zero;
  out.iterations = 0;
  out.witness = ExtendedComplex(0.0);
  out.degenerate = true;
  return out;
}

}  // namespace detail

/// Free critical point c+ that the parameter plane iterates; absent when the
/// map has none.
inline std::optional<PointPair> free_critical_pair(const GeneralParams& p) {
  if (is_degenerate(p)) return std::nullopt;
  return free_critical_points_ank(p);
}

inline std::optional<PointPair> free_critical_pair(const BehlParams& p) {
  if (is_degenerate(p)) return std::nullopt;
  try {
    return critical_points_b(p.b);
  } catch (const DynamicsError&) {
    return std::nullopt;  // b = 3 +- 2 sqrt 5, where O_b = z^5
  }
}

/// Escape-time classification of the orbit of c+.
template <class Params>
OrbitClassification classify_critical_orbit(const Params& p, const EscapeConfig& cfg = {}) {
  cfg.validate();
  const auto pair = free_critical_pair(p);
  if (!pair) return detail::degenerate_critical_orbit();
  return detail::iterate_orbit(p, ExtendedComplex(pair->plus), cfg, {});
}

/// Same as classify_critical_orbit for the second free critical point c-.
template <class Params>
OrbitClassification classify_critical_orbit_minus(const Params& p, const EscapeConfig& cfg = {}) {
  cfg.validate();
  const auto pair = free_critical_pair(p);
  if (!pair) return detail::degenerate_critical_orbit();
  return detail::iterate_orbit(p, ExtendedComplex(pair->minus), cfg, {});
}

/// Classifies the orbit of an arbitrary seed. Staying within 1e-6 (chordal)
/// of the same known attractor for 3 consecutive iterates gives to_strange.
template <class Params>
OrbitClassification classify_seed(const Params& p, const ExtendedComplex& z0, const EscapeConfig& cfg = {},
                                  std::span<const ExtendedComplex> known_attractors = {}) {
  cfg.validate();
  OrbitClassification out = detail::iterate_orbit(p, z0, cfg, known_attractors);
  out.degenerate = is_degenerate(p);
  return out;
}

struct CycleSearchConfig {
  int burn_in = 1000;
  int max_period = 8;
  double tol = 1e-9;
};

/// Looks for an attracting-looking cycle after a burn-in. Distances are
/// chordal; the multiplier is the product of derivatives along the cycle.
template <class Params>
CycleSearch detect_cycle(const Params& p, const ExtendedComplex& seed, const CycleSearchConfig& cc = {},
                         const EscapeConfig& ec = {}) {
  if (cc.burn_in < 0 || cc.max_period < 1 || !(cc.tol > 0.0)) {
    throw DynamicsError(ErrorKind::invalid_parameter, "burn_in >= 0, max_period >= 1, tol > 0 required");
  }
  CycleSearch out;
  ExtendedComplex w = seed;
  for (int i = 0; i < cc.burn_in; ++i) {
    w = orbit_step(p, w, ec.circle_snap_tol);
    if (w.is_nan()) return out;
    if (detail::escape_outcome(w, ec)) {
      out.escaped = true;
      return out;
    }
  }
  std::vector<ExtendedComplex> orbit{w};
  for (int period = 1; period <= cc.max_period; ++period) {
    orbit.push_back(orbit_step(p, orbit.back(), ec.circle_snap_tol));
    if (chordal_distance(orbit.back(), w) < cc.tol) {
      Complex multiplier(1.0, 0.0);
      for (int j = 0; j < period; ++j) multiplier *= map_derivative(p, orbit[static_cast<std::size_t>(j)]);
      out.cycle = CycleReport{period, w.to_complex(), multiplier};
      return out;
    }
  }
  return out;
}

/// Attracting strange fixed points plus attracting cycles found from the free
/// critical points: the attractor list used for dynamical planes.
template <class Params>
std::vector<ExtendedComplex> known_attractors(const Params& p) {
  std::vector<ExtendedComplex> out;
  std::vector<FixedPointReport> fixed;
  if constexpr (std::is_same_v<Params, GeneralParams>) {
    fixed = fixed_points_ank(p);
  } else {
    fixed = fixed_points_b(p);
  }
  for (const auto& f : fixed) {
    if (f.strange && std::abs(f.multiplier) < 1.0) out.push_back(f.location);
  }
  if (const auto pair = free_critical_pair(p)) {
    for (Complex c : {pair->plus, pair->minus}) {
      const CycleSearch s = detect_cycle(p, ExtendedComplex(c));
      if (!s.cycle || !(std::abs(s.cycle->multiplier) < 1.0)) continue;
      // Record every point of the cycle so proximity can fire anywhere on it.
      ExtendedComplex w(s.cycle->representative);
      for (int j = 0; j < s.cycle->period; ++j) {
        const bool seen = std::any_of(out.begin(), out.end(),
                                      [&](const ExtendedComplex& q) { return chordal_distance(q, w) < 1e-6; });
        if (!seen) out.push_back(w);
        w = apply_map(p, w);
      }
    }
  }
  return out;
}

/// Computational order of convergence from the last triple of errors that
/// stays above the noise floor of the scalar type. Works for any complex
/// scalar providing abs and log, including multiprecision ones.
template <class T, class Step>
double empirical_order(Step&& step, const T& root, const T& seed, int iters) {
  using std::abs;
  using std::log;
  using Real = decltype(abs(root));
  if (iters < 3) throw DynamicsError(ErrorKind::invalid_parameter, "iters must be >= 3");
  const Real one(1);
  const Real floor = Real(64) * std::numeric_limits<Real>::epsilon() * std::max(one, Real(abs(root)));
  std::vector<Real> errors{Real(abs(seed - root))};
  T x = seed;
  for (int i = 0; i < iters; ++i) {
    x = step(x);
    const Real e = abs(x - root);
    if (!(e > floor)) break;
    if (!(e < errors.back())) {
      throw DynamicsError(ErrorKind::order_not_measurable, "errors stopped decreasing");
    }
    errors.push_back(e);
  }
  if (errors.size() < 3) {
    throw DynamicsError(ErrorKind::order_not_measurable, "fewer than three errors above the noise floor");
  }
  const std::size_t m = errors.size() - 2;
  const Real order = log(errors[m + 1] / errors[m]) / log(errors[m] / errors[m - 1]);
  return static_cast<double>(order);
}

using HighPrecisionComplex = boost::multiprecision::cpp_complex_100;

/// Order of behl_step on z^2 + c measured with 100 significant digits, so the
/// error sequence has room for several steps of order 4 or 5.
inline double behl_order_high_precision(const HighPrecisionComplex& b, const HighPrecisionComplex& c,
                                        const HighPrecisionComplex& seed, int iters = 10) {
  using boost::multiprecision::sqrt;
  const HighPrecisionComplex root = HighPrecisionComplex(0, 1) * sqrt(c);
  return empirical_order<HighPrecisionComplex>(
      [&](const HighPrecisionComplex& x) { return behl_step<HighPrecisionComplex>(b, c, x); }, root, seed, iters);
}

inline double behl_order_high_precision(Complex b, Complex c, Complex seed, int iters = 10) {
  return behl_order_high_precision(HighPrecisionComplex(b.real(), b.imag()), HighPrecisionComplex(c.real(), c.imag()),
                                   HighPrecisionComplex(seed.real(), seed.imag()), iters);
}

enum class DriftMode {
  invariant_projection,  // iterate with circle snapping; report the pre-projection deviation
  raw,                   // plain floating-point iteration
};

/// Largest | |w| - 1 | over `samples` equally spaced starting angles and the
/// first `iters` iterates of O_{a,n,k}.
inline double unit_circle_drift(Complex a, int n, int k, int samples, int iters,
                                DriftMode mode = DriftMode::invariant_projection) {
  const GeneralParams p{a, n, k};
  p.validate();
  const double snap = mode == DriftMode::raw ? 0.0 : EscapeConfig{}.circle_snap_tol;
  double drift = 0.0;
  for (int j = 0; j < samples; ++j) {
    ExtendedComplex w(std::polar(1.0, 2.0 * std::numbers::pi * j / samples));
    for (int i = 0; i < iters; ++i) {
      const ExtendedComplex image = apply_map(p, w);
      const double dev = std::abs(image.modulus() - 1.0);
      drift = std::max(drift, std::isnan(dev) ? std::numeric_limits<double>::infinity() : dev);
      w = snap_to_circle(p, w, image, snap);
    }
  }
  return drift;
}

}  // namespace rootdyn
