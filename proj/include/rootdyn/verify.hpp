#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rootdyn/fixed_points.hpp"
#include "rootdyn/operators.hpp"
#include "rootdyn/orbit.hpp"
#include "rootdyn/report.hpp"
#include "rootdyn/stability.hpp"

namespace rootdyn {

struct CheckResult {
  std::string group;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::vector<std::string> only;      // empty: every group
  double reparam_perturbation = 0.0;  // added to the constant 11 of a(b); mutation testing only
  std::uint64_t seed = 20240601;
};

inline const std::vector<std::string>& verification_groups() {
  static const std::vector<std::string> groups = {"symmetry", "conjugacy", "circle",   "reparam",
                                                  "predicates", "fixtures", "order", "antenna"};
  return groups;
}

namespace detail {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Complex box(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }
  Complex box(Complex center, double half) {
    return center + Complex(uniform(-half, half), uniform(-half, half));
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

inline std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(3) << v;
  return s.str();
}

inline CheckResult make_check(std::string group, std::string name, bool passed, std::string detail) {
  return {std::move(group), std::move(name), passed, std::move(detail)};
}

inline std::vector<CheckResult> check_symmetry(Sampler& s) {
  std::vector<CheckResult> out;
  double inv_err = 0.0, sign_err = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int n = s.integer(1, 6), k = s.integer(1, 4);
    const GeneralParams p{s.box(-3.0, 3.0), n, k};
    const ExtendedComplex z(s.box(-2.0, 2.0));
    inv_err = std::max(inv_err, relative_distance(eval_ank(p, z.reciprocal()), eval_ank(p, z).reciprocal()));
    if ((n + k) % 2 == 1) {
      const GeneralParams q{-p.a, n, k};
      sign_err = std::max(sign_err, relative_distance(eval_ank(q, z.negated()), eval_ank(p, z).negated()));
    }
  }
  out.push_back(make_check("symmetry", "inversion O(1/z) = 1/O(z)", inv_err < 1e-12, "max rel err " + fmt(inv_err)));
  out.push_back(make_check("symmetry", "sign conjugacy O_{-a}(-z) = -O_a(z), n+k odd", sign_err < 1e-12,
                           "max rel err " + fmt(sign_err)));
  int mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const GeneralParams p{s.box(-3.0, 3.0), 4, 1};
    const ExtendedComplex z(s.box(-2.0, 2.0));
    const auto a = classify_seed(p, z);
    const auto b = classify_seed(p, z.reciprocal());
    const bool swapped = (a.outcome == Outcome::to_zero && b.outcome == Outcome::to_infinity) ||
                         (a.outcome == Outcome::to_infinity && b.outcome == Outcome::to_zero) ||
                         (a.outcome == b.outcome && a.outcome == Outcome::undecided);
    if (!swapped || a.iterations != b.iterations) ++mismatches;
  }
  out.push_back(make_check("symmetry", "orbit inversion pairing", mismatches == 0,
                           std::to_string(mismatches) + " mismatches of 200"));
  return out;
}

inline std::vector<CheckResult> check_conjugacy(Sampler& s) {
  std::vector<CheckResult> out;
  const QuadraticTarget target{1.0};
  double err = 0.0;
  int used = 0;
  for (int t = 0; t < 20; ++t) {
    const BehlParams p{s.box(-5.0, 5.0)};
    for (int j = 0; j < 50; ++j) {
      const Complex x = s.box(-3.0, 3.0);
      if (std::min(std::abs(x - target.root()), std::abs(x + target.root())) < 0.1) continue;
      try {
        const ExtendedComplex lhs = moebius_h(target, ExtendedComplex(behl_step(p, target, x)));
        const ExtendedComplex rhs = eval_b(p, moebius_h(target, ExtendedComplex(x)));
        err = std::max(err, relative_distance(lhs, rhs));
        ++used;
      } catch (const DynamicsError&) {
      }
    }
  }
  out.push_back(make_check("conjugacy", "h(step(x)) = O_b(h(x))", err < 1e-9,
                           "max rel err " + fmt(err) + " over " + std::to_string(used) + " points"));
  double odd = 0.0, semi = 0.0;
  for (int t = 0; t < 10; ++t) {
    const GeneralParams p{s.box(-3.0, 3.0), s.integer(1, 5), s.integer(1, 4)};
    for (int j = 0; j < 30; ++j) {
      const ExtendedComplex z(s.box(-2.0, 2.0));
      odd = std::max(odd, relative_distance(eval_R(p, z.negated()), eval_R(p, z).negated()));
      semi = std::max(semi, relative_distance(eval_S(p, z.squared()), eval_R(p, z).squared()));
    }
  }
  out.push_back(make_check("conjugacy", "R(-z) = -R(z)", odd < 1e-10, "max rel err " + fmt(odd)));
  out.push_back(make_check("conjugacy", "S(z^2) = R(z)^2", semi < 1e-10, "max rel err " + fmt(semi)));
  return out;
}

inline std::vector<CheckResult> check_circle() {
  std::vector<CheckResult> out;
  double drift = 0.0;
  for (double a : {0.3, 1.2, -1.4, 1.9}) {
    for (auto [n, k] : {std::pair{4, 1}, {3, 2}, {6, 2}}) drift = std::max(drift, unit_circle_drift(a, n, k, 512, 50));
  }
  out.push_back(make_check("circle", "unit circle invariant for real a", drift < 1e-8, "max drift " + fmt(drift)));
  const double control = unit_circle_drift(Complex(0.5, 0.1), 4, 1, 256, 50);
  out.push_back(make_check("circle", "complex a leaves the circle (control)", control > 1e-3,
                           "max drift " + fmt(control)));
  return out;
}

inline std::vector<CheckResult> check_reparam(Sampler& s, double perturbation) {
  auto a_of_b = [perturbation](Complex b) {
    if (perturbation == 0.0) return reparam_a_of_b(b);
    return (11.0 + perturbation + 6.0 * b - b * b) / ((b - 1.0) * (b + 3.0));
  };
  double round_trip = 0.0, operator_err = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Complex a = s.box(-5.0, 5.0);
    const BehlPreimages pre = reparam_b_of_a(a);
    for (Complex b : {pre.first, pre.second.value_or(pre.first)}) {
      const Complex back = a_of_b(b);
      round_trip = std::max(round_trip, std::abs(back - a) / std::max(1.0, std::abs(a)));
      for (int j = 0; j < 5; ++j) {
        const ExtendedComplex z(s.box(-2.0, 2.0));
        operator_err = std::max(operator_err, relative_distance(eval_b(BehlParams{b}, z),
                                                                eval_ank(GeneralParams{back, 4, 1}, z)));
      }
    }
  }
  return {make_check("reparam", "a(b(a)) = a", round_trip < 1e-10, "max rel err " + fmt(round_trip)),
          make_check("reparam", "O_b = O_{a(b),4,1}", operator_err < 1e-9, "max rel err " + fmt(operator_err))};
}

struct PredicateTally {
  int agree = 0;
  int total = 0;
  double rate() const { return total == 0 ? 1.0 : static_cast<double>(agree) / total; }
};

/// Compares a region predicate to the direct multiplier test at one sample,
/// skipping samples within `band` of either boundary.
inline void tally(PredicateTally& t, double region_value_at, double abs_multiplier, double band) {
  if (std::abs(region_value_at) < band || std::abs(abs_multiplier - 1.0) < band) return;
  ++t.total;
  if ((region_value_at < 0.0) == (abs_multiplier < 1.0)) ++t.agree;
}

/// Sampling box around the z = 1 region of (n, k).
inline std::pair<Complex, double> z1_region_box(int n, int k) {
  const int d = n - k;
  if (d == 0) return {Complex(1.0, 0.0), 4.0 * k};
  if (d == 1) return {Complex(n, 0.0), 4.0};
  if (d == -1) return {Complex(-n, 0.0), 4.0};
  const double denom = d * d - 1.0;
  return {Complex((n * n - k * k - 1.0) / denom, 0.0), std::max(6.0 * k / denom, 0.5)};
}

inline PredicateTally z1_predicate_agreement(int n, int k, int samples, std::uint64_t seed, double band = 1e-6) {
  Sampler s(seed);
  PredicateTally t;
  const auto [center, half] = z1_region_box(n, k);
  for (int i = 0; i < samples; ++i) {
    const Complex a = s.box(center, half);
    const GeneralParams p{a, n, k};
    if (is_degenerate(p)) continue;
    tally(t, region_z1_value(a, n, k), std::abs(eval_ank_deriv(p, ExtendedComplex(1.0))), band);
  }
  return t;
}

inline std::vector<CheckResult> check_predicates(Sampler& s) {
  std::vector<CheckResult> out;
  for (auto [n, k] : {std::pair{4, 1}, {2, 2}, {3, 2}, {7, 2}}) {
    const PredicateTally t = z1_predicate_agreement(n, k, 2000, s.integer(0, 1 << 30));
    out.push_back(make_check("predicates",
                             "z1 region (" + std::to_string(n) + "," + std::to_string(k) + ")", t.rate() >= 0.999,
                             fmt(100.0 * t.rate()) + "% of " + std::to_string(t.total)));
  }
  PredicateTally zm1, zpm, bm1, bp1, bpm;
  for (int i = 0; i < 2000; ++i) {
    const Complex a = s.box(-3.0, 3.0);
    const GeneralParams p{a, 4, 1};
    tally(zm1, region_z1_value(-a, 4, 1), std::abs(eval_ank_deriv(p, ExtendedComplex(-1.0))), 1e-6);
    tally(zpm, region_zpm_value(a), std::abs(eval_ank_deriv(p, ExtendedComplex(strange_fixed_zpm_a(a).plus))),
          1e-6);
    const Complex b = s.box(-12.0, 8.0);
    const BehlCurveValues v = behl_curve_values(b);
    const BehlParams pb{b};
    if (v.v_m1) tally(bm1, *v.v_m1, std::abs(eval_b_deriv(pb, ExtendedComplex(-1.0))), 1e-6);
    if (v.v_p1) tally(bp1, *v.v_p1, std::abs(eval_b_deriv(pb, ExtendedComplex(1.0))), 1e-6);
    if (v.v_pm) {
      tally(bpm, *v.v_pm, std::abs(eval_b_deriv(pb, ExtendedComplex(strange_fixed_zpm_b(b).plus))), 1e-6);
    }
  }
  auto push = [&](const std::string& name, const PredicateTally& t) {
    out.push_back(make_check("predicates", name, t.rate() >= 0.999,
                             fmt(100.0 * t.rate()) + "% of " + std::to_string(t.total)));
  };
  push("z-1 region (4,1)", zm1);
  push("z+- region (4,1)", zpm);
  push("O_b z=-1 curve", bm1);
  push("O_b z=1 curve", bp1);
  push("O_b z+- degree-8 curve", bpm);
  return out;
}

inline std::vector<CheckResult> check_fixtures() {
  std::vector<CheckResult> out;
  double worst = 0.0;
  std::string worst_label;
  for (const auto& f : superattracting_fixtures()) {
    const double m = std::abs(fixture_multiplier(f));
    if (m >= worst) {
      worst = m;
      worst_label = f.label;
    }
  }
  out.push_back(make_check("fixtures", "superattracting fixtures have multiplier 0", worst < 1e-9,
                           "max |lambda| " + fmt(worst) + " at " + worst_label));
  return out;
}

inline std::vector<CheckResult> check_order() {
  std::vector<CheckResult> out;
  using HP = HighPrecisionComplex;
  const HP s5 = boost::multiprecision::sqrt(HP(5));
  struct Case {
    std::string label;
    HP b;
    double expected;
  };
  const std::vector<Case> cases = {{"b = 2", HP(2), 4.0},
                                   {"b = 0.5+0.5i", HP(0.5, 0.5), 4.0},
                                   {"b = 3+2 sqrt 5", HP(3) + 2 * s5, 5.0},
                                   {"b = 3-2 sqrt 5", HP(3) - 2 * s5, 5.0}};
  for (const auto& c : cases) {
    try {
      const double order = behl_order_high_precision(c.b, HP(1), HP(0, 0.95));
      out.push_back(make_check("order", "order at " + c.label, std::abs(order - c.expected) <= 0.3,
                               "order ~ " + fmt(order) + " (expected " + fmt(c.expected) + ")"));
    } catch (const DynamicsError& e) {
      out.push_back(make_check("order", "order at " + c.label, false, e.what()));
    }
  }
  return out;
}

inline std::vector<CheckResult> check_antenna() {
  std::vector<CheckResult> out;
  int bad = 0, total = 0;
  for (auto [n, k] : {std::pair{4, 1}, {6, 2}}) {
    for (const Interval& iv : antenna_intervals(n, k).intervals) {
      for (int j = 0; j < 20; ++j) {
        const double a = iv.lo + (iv.hi - iv.lo) * (j + 0.5) / 20.0;
        const GeneralParams p{a, n, k};
        const PointPair c = free_critical_points_ank(p);
        ++total;
        if (std::abs(std::abs(c.plus) - 1.0) > 1e-10 || std::abs(std::abs(c.minus) - 1.0) > 1e-10 ||
            classify_critical_orbit(p).outcome != Outcome::undecided) {
          ++bad;
        }
      }
    }
  }
  out.push_back(make_check("antenna", "finite antennas undecided with |c+-| = 1", bad == 0,
                           std::to_string(bad) + " failures of " + std::to_string(total)));
  bad = 0;
  const double edge = -7.0 - 2.0 * std::sqrt(10.0);
  for (int j = 0; j < 20; ++j) {
    if (classify_critical_orbit(BehlParams{edge - 0.25 - 2.5 * j}).outcome != Outcome::undecided) ++bad;
  }
  out.push_back(make_check("antenna", "infinite antenna of O_b undecided", bad == 0,
                           std::to_string(bad) + " failures of 20"));
  return out;
}

}  // namespace detail

inline std::vector<CheckResult> run_verification(const VerifyOptions& opts = {}) {
  const auto& groups = verification_groups();
  for (const auto& g : opts.only) {
    if (std::find(groups.begin(), groups.end(), g) == groups.end()) {
      throw DynamicsError(ErrorKind::invalid_parameter, "unknown verification group '" + g + "'");
    }
  }
  auto wanted = [&](const std::string& g) {
    return opts.only.empty() || std::find(opts.only.begin(), opts.only.end(), g) != opts.only.end();
  };
  std::vector<CheckResult> out;
  auto add = [&](std::vector<CheckResult> r) { out.insert(out.end(), r.begin(), r.end()); };
  // Each group draws from its own stream so --only does not change results.
  if (wanted("symmetry")) {
    detail::Sampler g(opts.seed + 1);
    add(detail::check_symmetry(g));
  }
  if (wanted("conjugacy")) {
    detail::Sampler g(opts.seed + 2);
    add(detail::check_conjugacy(g));
  }
  if (wanted("circle")) add(detail::check_circle());
  if (wanted("reparam")) {
    detail::Sampler g(opts.seed + 3);
    add(detail::check_reparam(g, opts.reparam_perturbation));
  }
  if (wanted("predicates")) {
    detail::Sampler g(opts.seed + 4);
    add(detail::check_predicates(g));
  }
  if (wanted("fixtures")) add(detail::check_fixtures());
  if (wanted("order")) add(detail::check_order());
  if (wanted("antenna")) add(detail::check_antenna());
  return out;
}

}  // namespace rootdyn
