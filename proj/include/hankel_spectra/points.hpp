#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <variant>

namespace hankel {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kPointTolerance = 1e-12;

/// Angle in [0, 2pi) of a point of the unit circle.
inline double normalize_angle(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0)
    a += kTwoPi;
  if (a >= kTwoPi)
    a = 0.0;
  return a;
}

/// Shortest arc length between two circle angles.
inline double angular_distance(double a, double b) {
  return std::abs(std::remainder(a - b, kTwoPi));
}

/// The point e^{i angle} of the unit circle.
struct CirclePoint {
  double angle = 0.0;

  static CirclePoint at(double angle) { return {normalize_angle(angle)}; }
  static CirclePoint plus_one() { return {0.0}; }
  static CirclePoint minus_one() { return {std::numbers::pi}; }
  static CirclePoint from_complex(Complex z) {
    return at(std::arg(z));
  }

  Complex value() const { return std::polar(1.0, angle); }
  CirclePoint conjugate() const { return at(-angle); }
  bool is_real(double tol = kPointTolerance) const {
    return angular_distance(angle, 0.0) <= tol ||
           angular_distance(angle, std::numbers::pi) <= tol;
  }
};

inline bool same_point(const CirclePoint &a, const CirclePoint &b,
                       double tol = kPointTolerance) {
  return angular_distance(a.angle, b.angle) <= tol;
}

/// A point of the extended real line (the line representation).
struct LinePoint {
  bool infinite = false;
  double value = 0.0;

  static LinePoint finite(double v) { return {false, v}; }
  static LinePoint infinity() { return {true, 0.0}; }
  LinePoint reflected() const { return infinite ? *this : finite(-value); }
  bool is_self_conjugate(double tol = kPointTolerance) const {
    return infinite || std::abs(value) <= tol;
  }
};

inline bool same_point(const LinePoint &a, const LinePoint &b,
                       double tol = kPointTolerance) {
  if (a.infinite || b.infinite)
    return a.infinite == b.infinite;
  return std::abs(a.value - b.value) <= tol * std::max(1.0, std::abs(a.value));
}

using Location = std::variant<CirclePoint, LinePoint>;

/// Jump kappa(a) = omega(a e^{+i0}) - omega(a e^{-i0}) (circle) or
/// psi(b + 0) - psi(b - 0) (line; psi(+inf) - psi(-inf) at infinity).
struct JumpDatum {
  Location location;
  Complex value;
};

} // namespace hankel
