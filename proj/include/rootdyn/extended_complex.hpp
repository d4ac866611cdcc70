#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <ostream>

namespace rootdyn {

using Complex = std::complex<double>;

enum class Chart : std::uint8_t { standard, inverted };

/// Point of the Riemann sphere held in one of two charts.
///
/// A standard-chart value v denotes the point v itself; an inverted-chart value
/// u denotes 1/u, so (inverted, 0) is infinity. Normalized values satisfy
/// |value| <= 1 in the active chart, which makes z -> 1/z an exact chart flip
/// and keeps orbits tending to infinity away from overflow.
class ExtendedComplex {
 public:
  constexpr ExtendedComplex() = default;

  // Implicit on purpose: finite complex numbers are points of the sphere.
  ExtendedComplex(Complex z) { *this = from_chart(Chart::standard, z); }  // NOLINT
  ExtendedComplex(double x) : ExtendedComplex(Complex(x, 0.0)) {}          // NOLINT

  static ExtendedComplex infinity() { return raw(Chart::inverted, Complex(0.0, 0.0)); }

  /// Normalizes an arbitrary chart value so that |value| <= 1.
  static ExtendedComplex from_chart(Chart chart, Complex value) {
    if (std::isinf(value.real()) || std::isinf(value.imag())) {
      return raw(flip(chart), Complex(0.0, 0.0));
    }
    if (std::abs(value) > 1.0) return raw(flip(chart), 1.0 / value);
    return raw(chart, value);
  }

  /// The point top/bottom. When |top| == |bottom| the result is expressed in
  /// `tie`, so mirrored inputs produce mirrored representations bit for bit.
  static ExtendedComplex from_ratio(Complex top, Complex bottom, Chart tie = Chart::standard) {
    const double mt = std::abs(top);
    const double mb = std::abs(bottom);
    if (mt == 0.0 && mb == 0.0) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      return raw(Chart::standard, Complex(nan, nan));
    }
    if (mt < mb) return raw(Chart::standard, top / bottom);
    if (mt > mb) return raw(Chart::inverted, bottom / top);
    return tie == Chart::standard ? raw(Chart::standard, top / bottom)
                                  : raw(Chart::inverted, bottom / top);
  }

  Chart chart() const { return chart_; }
  Complex value() const { return value_; }

  bool is_infinity() const { return chart_ == Chart::inverted && value_ == Complex(0.0, 0.0); }
  bool is_zero() const { return chart_ == Chart::standard && value_ == Complex(0.0, 0.0); }
  bool is_nan() const { return std::isnan(value_.real()) || std::isnan(value_.imag()); }

  /// Finite coordinate of the point; infinity maps to (inf, 0).
  Complex to_complex() const {
    if (chart_ == Chart::standard) return value_;
    if (value_ == Complex(0.0, 0.0)) return {std::numeric_limits<double>::infinity(), 0.0};
    return 1.0 / value_;
  }

  /// Coordinate of the point in the requested chart (may be infinite).
  Complex in_chart(Chart c) const {
    if (c == chart_) return value_;
    if (value_ == Complex(0.0, 0.0)) return {std::numeric_limits<double>::infinity(), 0.0};
    return 1.0 / value_;
  }

  double modulus() const {
    if (chart_ == Chart::standard) return std::abs(value_);
    const double m = std::abs(value_);
    return m == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / m;
  }

  ExtendedComplex reciprocal() const { return raw(flip(chart_), value_); }
  ExtendedComplex negated() const { return raw(chart_, -value_); }
  ExtendedComplex conjugated() const { return raw(chart_, std::conj(value_)); }
  ExtendedComplex squared() const { return raw(chart_, value_ * value_); }

  /// A square root: the principal one for standard-chart points, 1/sqrt(u)
  /// for inverted-chart points.
  ExtendedComplex sqrt() const { return raw(chart_, std::sqrt(value_)); }

  /// Radial projection onto the unit circle (identity on 0 and infinity).
  ExtendedComplex projected_to_unit_circle() const {
    const double m = std::abs(value_);
    if (m == 0.0) return *this;
    return raw(chart_, value_ / m);
  }

  friend bool operator==(const ExtendedComplex& a, const ExtendedComplex& b) {
    return a.chart_ == b.chart_ && a.value_ == b.value_;
  }

 private:
  static ExtendedComplex raw(Chart chart, Complex value) {
    ExtendedComplex e;
    e.chart_ = chart;
    e.value_ = value;
    return e;
  }
  static Chart flip(Chart c) { return c == Chart::standard ? Chart::inverted : Chart::standard; }

  Chart chart_ = Chart::standard;
  Complex value_{0.0, 0.0};
};

/// Chordal distance on the sphere, in [0, 2]. Never divides by chart values.
inline double chordal_distance(const ExtendedComplex& p, const ExtendedComplex& q) {
  const Complex u = p.value();
  const Complex v = q.value();
  const double nu = std::norm(u);
  const double nv = std::norm(v);
  if (p.chart() == q.chart()) {
    return 2.0 * std::abs(u - v) / std::sqrt((1.0 + nu) * (1.0 + nv));
  }
  // d(u, 1/v) = 2|uv - 1| / sqrt((1+|u|^2)(1+|v|^2))
  return 2.0 * std::abs(u * v - 1.0) / std::sqrt((1.0 + nu) * (1.0 + nv));
}

inline bool sphere_equal(const ExtendedComplex& p, const ExtendedComplex& q, double tol) {
  return chordal_distance(p, q) <= tol;
}

/// |u - v| / max(|u|, |v|). The quantity is the same in both charts, so the
/// chart is picked to keep both coordinates finite.
inline double relative_distance(const ExtendedComplex& p, const ExtendedComplex& q) {
  if (p.is_infinity() && q.is_infinity()) return 0.0;
  if ((p.is_infinity() && q.is_zero()) || (p.is_zero() && q.is_infinity())) return 1.0;
  const bool use_inverted = (p.chart() == Chart::inverted && q.chart() == Chart::inverted) ||
                            p.is_infinity() || q.is_infinity();
  const Chart c = use_inverted ? Chart::inverted : Chart::standard;
  const Complex u = p.in_chart(c);
  const Complex v = q.in_chart(c);
  const double scale = std::max({std::abs(u), std::abs(v), 1e-300});
  return std::abs(u - v) / scale;
}

inline std::ostream& operator<<(std::ostream& os, const ExtendedComplex& z) {
  if (z.is_infinity()) return os << "inf";
  const Complex c = z.to_complex();
  return os << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i";
}

}  // namespace rootdyn
