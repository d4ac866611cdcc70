#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>

#include "rootdyn/error.hpp"
#include "rootdyn/extended_complex.hpp"

namespace rootdyn {

/// Parameters of z^n ((z - a) / (1 - a z))^k.
struct GeneralParams {
  Complex a{0.0, 0.0};
  int n = 4;
  int k = 1;

  void validate() const {
    if (n < 2) throw DynamicsError(ErrorKind::invalid_parameter, "n must be >= 2, got " + std::to_string(n));
    if (k < 1) throw DynamicsError(ErrorKind::invalid_parameter, "k must be >= 1, got " + std::to_string(k));
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw DynamicsError(ErrorKind::invalid_parameter, "a must be finite");
    }
  }
};

/// Parameter of the fourth-order operator obtained from Behl's family.
struct BehlParams {
  Complex b{0.0, 0.0};
};

/// Target polynomial z^2 + c.
struct QuadraticTarget {
  Complex c{1.0, 0.0};

  void validate() const {
    if (c == Complex(0.0, 0.0)) throw DynamicsError(ErrorKind::invalid_parameter, "c must be nonzero");
  }
  /// i*sqrt(c), principal branch.
  Complex root() const { return Complex(0.0, 1.0) * std::sqrt(c); }
};

enum class Degeneracy {
  none,
  monomial,         // a == 0: z^(n+k)
  reduced_at_plus,  // a == 1: (-1)^k z^n
  reduced_at_minus, // a == -1: z^n
};

inline Degeneracy degeneracy(const GeneralParams& p) {
  if (p.a == Complex(0.0, 0.0)) return Degeneracy::monomial;
  if (p.a == Complex(1.0, 0.0)) return Degeneracy::reduced_at_plus;
  if (p.a == Complex(-1.0, 0.0)) return Degeneracy::reduced_at_minus;
  return Degeneracy::none;
}

/// Degree drops only for a = +-1; a = 0 keeps degree n+k but is flagged.
inline bool is_degenerate(const GeneralParams& p) { return degeneracy(p) != Degeneracy::none; }

inline int degree(const GeneralParams& p) {
  const Degeneracy d = degeneracy(p);
  return (d == Degeneracy::reduced_at_plus || d == Degeneracy::reduced_at_minus) ? p.n : p.n + p.k;
}

enum class BehlDegeneracy {
  none,
  cubic,            // b in {1, -3}: z^3
  quartic,          // b == -1: z^4
  quartic_negated,  // b in {1 +- 2 sqrt 2}: -z^4
};

namespace constants {
inline const double sqrt2 = std::sqrt(2.0);
inline const double behl_quartic_negated_plus = 1.0 + 2.0 * std::sqrt(2.0);
inline const double behl_quartic_negated_minus = 1.0 - 2.0 * std::sqrt(2.0);
}  // namespace constants

inline BehlDegeneracy degeneracy(const BehlParams& p) {
  const Complex b = p.b;
  if (b == Complex(1.0, 0.0) || b == Complex(-3.0, 0.0)) return BehlDegeneracy::cubic;
  if (b == Complex(-1.0, 0.0)) return BehlDegeneracy::quartic;
  if (b == Complex(constants::behl_quartic_negated_plus, 0.0) ||
      b == Complex(constants::behl_quartic_negated_minus, 0.0)) {
    return BehlDegeneracy::quartic_negated;
  }
  return BehlDegeneracy::none;
}

inline bool is_degenerate(const BehlParams& p) { return degeneracy(p) != BehlDegeneracy::none; }

/// Integer power by repeated squaring (std::pow on complex goes through exp/log).
template <class T>
T ipow(T base, int exponent) {
  T result(1);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

namespace detail {

struct Ratio {
  Complex num;
  Complex den;
};

inline Ratio ank_ratio(const GeneralParams& p, Complex z) {
  switch (degeneracy(p)) {
    case Degeneracy::reduced_at_plus:
      return {(p.k % 2 == 0 ? 1.0 : -1.0) * ipow(z, p.n), Complex(1.0, 0.0)};
    case Degeneracy::reduced_at_minus:
      return {ipow(z, p.n), Complex(1.0, 0.0)};
    default:
      return {ipow(z, p.n) * ipow(z - p.a, p.k), ipow(1.0 - p.a * z, p.k)};
  }
}

// Coefficients of O_b(z) = z^4 (P + Q z) / (Q + P z).
inline Complex behl_p(Complex b) { return -11.0 - 6.0 * b + b * b; }
inline Complex behl_q(Complex b) { return -3.0 + 2.0 * b + b * b; }

inline Ratio behl_ratio(const BehlParams& p, Complex z) {
  switch (degeneracy(p)) {
    case BehlDegeneracy::cubic: return {ipow(z, 3), Complex(1.0, 0.0)};
    case BehlDegeneracy::quartic: return {ipow(z, 4), Complex(1.0, 0.0)};
    case BehlDegeneracy::quartic_negated: return {-ipow(z, 4), Complex(1.0, 0.0)};
    case BehlDegeneracy::none: break;
  }
  const Complex P = behl_p(p.b);
  const Complex Q = behl_q(p.b);
  return {ipow(z, 4) * (P + Q * z), Q + P * z};
}

// Both operator families commute with z -> 1/z, so the inverted chart is
// handled by swapping numerator and denominator.
inline ExtendedComplex apply_ratio(Ratio r, Chart input_chart) {
  if (input_chart == Chart::inverted) std::swap(r.num, r.den);
  return ExtendedComplex::from_ratio(r.num, r.den, input_chart);
}

inline Complex finite_point_for_derivative(const ExtendedComplex& z) {
  if (z.is_infinity()) throw DynamicsError(ErrorKind::derivative_at_pole, "point at infinity");
  return z.to_complex();
}

}  // namespace detail

/// O_{a,n,k}(z) on the sphere.
inline ExtendedComplex eval_ank(const GeneralParams& p, const ExtendedComplex& z) {
  if (z.is_nan()) return z;
  return detail::apply_ratio(detail::ank_ratio(p, z.value()), z.chart());
}

/// Closed-form derivative, evaluated in the standard chart.
inline Complex eval_ank_deriv(const GeneralParams& p, const ExtendedComplex& z) {
  const Complex w = detail::finite_point_for_derivative(z);
  const double n = p.n;
  switch (degeneracy(p)) {
    case Degeneracy::reduced_at_plus:
      return (p.k % 2 == 0 ? 1.0 : -1.0) * n * ipow(w, p.n - 1);
    case Degeneracy::reduced_at_minus:
      return n * ipow(w, p.n - 1);
    default: break;
  }
  const Complex pole = 1.0 - p.a * w;
  if (pole == Complex(0.0, 0.0)) throw DynamicsError(ErrorKind::derivative_at_pole, "z = 1/a");
  const double k = p.k;
  const Complex quad = -p.a * n * w * w + ((n + k) + p.a * p.a * (n - k)) * w - p.a * n;
  return ipow(w, p.n - 1) * ipow(w - p.a, p.k - 1) * quad / ipow(pole, p.k + 1);
}

/// O_b(z) on the sphere; degenerate b use the reduced monomials.
inline ExtendedComplex eval_b(const BehlParams& p, const ExtendedComplex& z) {
  if (z.is_nan()) return z;
  return detail::apply_ratio(detail::behl_ratio(p, z.value()), z.chart());
}

inline Complex eval_b_deriv(const BehlParams& p, const ExtendedComplex& z) {
  const Complex w = detail::finite_point_for_derivative(z);
  switch (degeneracy(p)) {
    case BehlDegeneracy::cubic: return 3.0 * w * w;
    case BehlDegeneracy::quartic: return 4.0 * ipow(w, 3);
    case BehlDegeneracy::quartic_negated: return -4.0 * ipow(w, 3);
    case BehlDegeneracy::none: break;
  }
  const Complex b = p.b;
  const Complex P = detail::behl_p(b);
  const Complex Q = detail::behl_q(b);
  const Complex den = Q + P * w;
  if (den == Complex(0.0, 0.0)) throw DynamicsError(ErrorKind::derivative_at_pole, "pole of O_b");
  const Complex qp = (b - 1.0) * (b + 3.0) * (-11.0 - 6.0 * b + b * b);
  const Complex mid = 2.0 * (51.0 + 42.0 * b + 4.0 * b * b - 2.0 * ipow(b, 3) + ipow(b, 4));
  return 4.0 * ipow(w, 3) * (qp + mid * w + qp * w * w) / (den * den);
}

/// a(b) = (11 + 6b - b^2) / (-3 + 2b + b^2).
inline Complex reparam_a_of_b(Complex b) {
  const Complex den = detail::behl_q(b);
  if (den == Complex(0.0, 0.0)) throw DynamicsError(ErrorKind::degenerate_parameter, "b in {1, -3}");
  return (11.0 + 6.0 * b - b * b) / den;
}

/// Preimages of a under a(b): roots of (a+1) b^2 + (2a - 6) b - (3a + 11).
struct BehlPreimages {
  Complex first;                  // + branch of the quadratic formula
  std::optional<Complex> second;  // - branch; absent when a == -1
  bool unbounded_branch = false;  // a == -1: the second preimage is at infinity
};

inline BehlPreimages reparam_b_of_a(Complex a) {
  const Complex A = a + 1.0;
  const Complex B = 2.0 * a - 6.0;
  const Complex C = -(3.0 * a + 11.0);
  if (A == Complex(0.0, 0.0)) return {-C / B, std::nullopt, true};
  const Complex root_disc = std::sqrt(B * B - 4.0 * A * C);
  // Pick the sign that avoids cancellation, then recover the other root from
  // the product of roots.
  const bool plus_cancels = std::real(std::conj(B) * root_disc) >= 0.0;
  const Complex q = plus_cancels ? -0.5 * (B + root_disc) : -0.5 * (B - root_disc);
  const Complex from_q = q / A;
  const Complex from_c = C / q;
  // q = -(B + sqrt)/2 makes q/A the minus branch.
  if (plus_cancels) return {from_c, from_q, false};
  return {from_q, from_c, false};
}

/// One step of Behl's fourth-order method on f(x) = x^2 + c, as the two-substep
/// scheme. Templated so the order can be measured in extended precision.
template <class C>
C behl_step(const C& b, const C& c, const C& x) {
  const C zero(0);
  const C two(2);
  const C three(3);
  auto f = [&](const C& t) { return t * t + c; };
  auto fp = [&](const C& t) { return two * t; };
  const C fx = f(x);
  const C dfx = fp(x);
  if (dfx == zero) throw DynamicsError(ErrorKind::iteration_singularity, "f'(x) = 0");
  const C y = x - (two / three) * fx / dfx;
  const C dfy = fp(y);
  const C first = b * dfx + three * dfy;
  const C second = three * (b + C(1)) * dfy - (b + C(5)) * dfx;
  if (first == zero || second == zero) {
    throw DynamicsError(ErrorKind::iteration_singularity, "vanishing denominator");
  }
  const C weight = (b * b - C(22) * b - C(27)) * dfx + three * (b * b + C(10) * b + C(5)) * dfy;
  return x - weight * fx / (two * first * second);
}

inline Complex behl_step(const BehlParams& p, const QuadraticTarget& t, Complex x) {
  return behl_step<Complex>(p.b, t.c, x);
}

/// h(z) = (z - i sqrt c) / (z + i sqrt c): i sqrt c -> 0, -i sqrt c -> inf, inf -> 1.
inline ExtendedComplex moebius_h(const QuadraticTarget& t, const ExtendedComplex& z) {
  const Complex s = t.root();
  const Complex v = z.value();
  if (z.chart() == Chart::standard) return ExtendedComplex::from_ratio(v - s, v + s);
  return ExtendedComplex::from_ratio(1.0 - s * v, 1.0 + s * v);
}

/// Inverse of moebius_h: u -> i sqrt c (1 + u) / (1 - u).
inline ExtendedComplex moebius_h_inverse(const QuadraticTarget& t, const ExtendedComplex& u) {
  const Complex s = t.root();
  const Complex v = u.value();
  if (u.chart() == Chart::standard) return ExtendedComplex::from_ratio(s * (1.0 + v), 1.0 - v);
  return ExtendedComplex::from_ratio(s * (v + 1.0), v - 1.0);
}

/// The involution (z + 1) / (z - 1) used to conjugate O_{a,n,k} into R.
inline ExtendedComplex cayley_involution(const ExtendedComplex& z) {
  const Complex v = z.value();
  if (z.chart() == Chart::standard) return ExtendedComplex::from_ratio(v + 1.0, v - 1.0);
  return ExtendedComplex::from_ratio(1.0 + v, 1.0 - v);
}

/// R_{a,n,k} = h o O_{a,n,k} o h with h(z) = (z+1)/(z-1), by its closed form.
inline ExtendedComplex eval_R(const GeneralParams& p, const ExtendedComplex& z) {
  if (z.is_nan()) return z;
  const Complex v = z.value();
  const Complex one_minus_a = 1.0 - p.a;
  const Complex one_plus_a = 1.0 + p.a;
  Complex plus_term, minus_term;
  if (z.chart() == Chart::standard) {
    plus_term = ipow(v + 1.0, p.n) * ipow(v * one_minus_a + one_plus_a, p.k);
    minus_term = ipow(v - 1.0, p.n) * ipow(v * one_minus_a - one_plus_a, p.k);
  } else {
    // Numerator and denominator multiplied by v^(n+k), v = 1/z.
    plus_term = ipow(1.0 + v, p.n) * ipow(one_minus_a + one_plus_a * v, p.k);
    minus_term = ipow(1.0 - v, p.n) * ipow(one_minus_a - one_plus_a * v, p.k);
  }
  const Complex top = plus_term + minus_term;
  const Complex bottom = plus_term - minus_term;
  if (top == Complex(0.0, 0.0) && bottom == Complex(0.0, 0.0)) {
    // Common zero of the closed form (only for a = -1); use the conjugation.
    return cayley_involution(eval_ank(p, cayley_involution(z)));
  }
  return ExtendedComplex::from_ratio(top, bottom);
}

/// S_{a,n,k}(w) = R(r)^2 for a square root r of w; R is odd, so the branch is irrelevant.
inline ExtendedComplex eval_S(const GeneralParams& p, const ExtendedComplex& w) {
  return eval_R(p, w.sqrt()).squared();
}

// Uniform entry points so orbit code can be written once for both families.

inline ExtendedComplex apply_map(const GeneralParams& p, const ExtendedComplex& z) { return eval_ank(p, z); }
inline ExtendedComplex apply_map(const BehlParams& p, const ExtendedComplex& z) { return eval_b(p, z); }

inline Complex map_derivative(const GeneralParams& p, const ExtendedComplex& z) { return eval_ank_deriv(p, z); }
inline Complex map_derivative(const BehlParams& p, const ExtendedComplex& z) { return eval_b_deriv(p, z); }

/// Real parameters make the unit circle invariant.
inline bool preserves_unit_circle(const GeneralParams& p) { return p.a.imag() == 0.0; }
inline bool preserves_unit_circle(const BehlParams& p) { return p.b.imag() == 0.0; }

}  // namespace rootdyn
