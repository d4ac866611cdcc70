#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rootdyn/error.hpp"
#include "rootdyn/extended_complex.hpp"

namespace rootdyn {

/// Coefficients in ascending order: p(z) = sum c[i] z^i.
using Polynomial = std::vector<Complex>;

inline Polynomial poly_multiply(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline Polynomial poly_power(const Polynomial& p, int exponent) {
  Polynomial out{Complex(1.0, 0.0)};
  for (int i = 0; i < exponent; ++i) out = poly_multiply(out, p);
  return out;
}

inline Polynomial poly_subtract(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(a.size(), b.size()), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

/// Drops trailing zero coefficients.
inline void poly_trim(Polynomial& p) {
  while (!p.empty() && p.back() == Complex(0.0, 0.0)) p.pop_back();
}

inline Complex poly_eval(std::span<const Complex> p, Complex z) {
  Complex acc(0.0, 0.0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

/// Evaluates p and p' together with Horner's scheme.
inline std::pair<Complex, Complex> poly_eval_with_derivative(std::span<const Complex> p, Complex z) {
  Complex value(0.0, 0.0);
  Complex deriv(0.0, 0.0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    deriv = deriv * z + value;
    value = value * z + *it;
  }
  return {value, deriv};
}

enum class RootSolver { aberth };

struct PolynomialRootConfig {
  int max_iterations = 200;
  double tolerance = 1e-12;
  RootSolver solver = RootSolver::aberth;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  double cluster_radius = 1e-6;

  void validate() const {
    if (!(tolerance > 0.0)) throw DynamicsError(ErrorKind::invalid_parameter, "tolerance must be > 0");
    if (max_iterations < 1) throw DynamicsError(ErrorKind::invalid_parameter, "max_iterations must be >= 1");
  }
};

/// All roots of p by Aberth-Ehrlich simultaneous iteration.
///
/// Starts from a randomly perturbed circle (fixed seed, so results are
/// reproducible). A root is frozen once its correction falls below the
/// tolerance or its residual is within the rounding bound of Horner's scheme;
/// the second test is what lets multiple roots terminate.
inline std::vector<Complex> aberth_roots(Polynomial p, const PolynomialRootConfig& cfg = {}) {
  cfg.validate();
  poly_trim(p);
  if (p.size() < 2) return {};
  const std::size_t degree = p.size() - 1;
  const Complex lead = p.back();
  for (auto& c : p) c /= lead;

  std::vector<double> abs_coeffs(p.size());
  std::transform(p.begin(), p.end(), abs_coeffs.begin(), [](Complex c) { return std::abs(c); });

  // Initial circle: centroid of the roots, radius from the Fujiwara-type bound.
  const Complex center = -p[degree - 1] / static_cast<double>(degree);
  double radius = 0.0;
  for (std::size_t i = 0; i < degree; ++i) {
    radius = std::max(radius, std::pow(abs_coeffs[i], 1.0 / static_cast<double>(degree - i)));
  }
  radius = std::max(radius, 1e-3);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  const double phase = 0.4;
  std::vector<Complex> z(degree);
  for (std::size_t j = 0; j < degree; ++j) {
    const double theta = 2.0 * std::numbers::pi * (static_cast<double>(j) + jitter(rng)) /
                             static_cast<double>(degree) + phase;
    z[j] = center + radius * (1.0 + 0.1 * jitter(rng)) * std::polar(1.0, theta);
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<bool> frozen(degree, false);
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    bool all_frozen = true;
    for (std::size_t j = 0; j < degree; ++j) {
      if (frozen[j]) continue;
      const auto [value, deriv] = poly_eval_with_derivative(p, z[j]);
      double bound = 0.0;
      const double mz = std::abs(z[j]);
      for (auto it = abs_coeffs.rbegin(); it != abs_coeffs.rend(); ++it) bound = bound * mz + *it;
      if (std::abs(value) <= 16.0 * eps * bound) {
        frozen[j] = true;
        continue;
      }
      Complex repulsion(0.0, 0.0);
      for (std::size_t l = 0; l < degree; ++l) {
        if (l != j) repulsion += 1.0 / (z[j] - z[l]);
      }
      const Complex newton = value / deriv;
      const Complex correction = newton / (1.0 - newton * repulsion);
      z[j] -= correction;
      if (std::abs(correction) <= cfg.tolerance * (1.0 + std::abs(z[j]))) {
        frozen[j] = true;
      } else {
        all_frozen = false;
      }
    }
    if (all_frozen) return z;
  }
  if (std::all_of(frozen.begin(), frozen.end(), [](bool f) { return f; })) return z;
  throw SolverError("Aberth iteration exceeded " + std::to_string(cfg.max_iterations) + " iterations",
                    z);
}

struct RootCluster {
  Complex location;
  int multiplicity = 1;
};

/// Merges roots closer than `radius` (single linkage); the location is the mean.
inline std::vector<RootCluster> cluster_roots(std::span<const Complex> roots, double radius) {
  const std::size_t m = roots.size();
  std::vector<std::size_t> parent(m);
  for (std::size_t i = 0; i < m; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (std::abs(roots[i] - roots[j]) < radius) parent[find(i)] = find(j);
    }
  }
  std::vector<RootCluster> clusters;
  std::vector<std::size_t> slot(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == m) {
      slot[r] = clusters.size();
      clusters.push_back({Complex(0.0, 0.0), 0});
    }
    RootCluster& c = clusters[slot[r]];
    c.location += roots[i];
    ++c.multiplicity;
  }
  for (auto& c : clusters) c.location /= static_cast<double>(c.multiplicity);
  return clusters;
}

}  // namespace rootdyn
