#pragma once

#include <cmath>

namespace parkplan {

/// First-order dual number: carries a value and one directional derivative.
///
/// Evaluating f(Dual(x, 1)) yields f(x) in `val` and df/dx in `dot`. All
/// residual and dynamics kernels in this library are templated on the scalar
/// type, so a single seeded sweep per independent variable produces exact
/// forward-mode derivatives (no finite differencing).
struct Dual {
  double val = 0.0;
  double dot = 0.0;

  constexpr Dual() = default;
  constexpr Dual(double v) : val(v) {}  // NOLINT: implicit by design
  constexpr Dual(double v, double d) : val(v), dot(d) {}
};

constexpr Dual operator+(Dual a, Dual b) { return {a.val + b.val, a.dot + b.dot}; }
constexpr Dual operator-(Dual a, Dual b) { return {a.val - b.val, a.dot - b.dot}; }
constexpr Dual operator-(Dual a) { return {-a.val, -a.dot}; }
constexpr Dual operator+(Dual a) { return a; }
constexpr Dual operator*(Dual a, Dual b) {
  return {a.val * b.val, a.dot * b.val + a.val * b.dot};
}
constexpr Dual operator/(Dual a, Dual b) {
  const double inv = 1.0 / b.val;
  return {a.val * inv, (a.dot - a.val * b.dot * inv) * inv};
}

constexpr Dual& operator+=(Dual& a, Dual b) { return a = a + b; }
constexpr Dual& operator-=(Dual& a, Dual b) { return a = a - b; }
constexpr Dual& operator*=(Dual& a, Dual b) { return a = a * b; }
constexpr Dual& operator/=(Dual& a, Dual b) { return a = a / b; }

constexpr bool operator<(Dual a, Dual b) { return a.val < b.val; }
constexpr bool operator>(Dual a, Dual b) { return a.val > b.val; }
constexpr bool operator<=(Dual a, Dual b) { return a.val <= b.val; }
constexpr bool operator>=(Dual a, Dual b) { return a.val >= b.val; }

inline Dual sin(Dual a) { return {std::sin(a.val), a.dot * std::cos(a.val)}; }
inline Dual cos(Dual a) { return {std::cos(a.val), -a.dot * std::sin(a.val)}; }
inline Dual tan(Dual a) {
  const double t = std::tan(a.val);
  return {t, a.dot * (1.0 + t * t)};
}
inline Dual atan(Dual a) { return {std::atan(a.val), a.dot / (1.0 + a.val * a.val)}; }
inline Dual sqrt(Dual a) {
  const double s = std::sqrt(a.val);
  return {s, a.dot / (2.0 * s)};
}
inline Dual abs(Dual a) { return a.val < 0.0 ? -a : a; }
inline Dual exp(Dual a) {
  const double e = std::exp(a.val);
  return {e, a.dot * e};
}

/// Uniform accessors so kernels can write value(x) for double or Dual.
constexpr double value(double x) { return x; }
constexpr double value(Dual x) { return x.val; }
constexpr double derivative(double) { return 0.0; }
constexpr double derivative(Dual x) { return x.dot; }

}  // namespace parkplan
