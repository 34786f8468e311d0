#pragma once

// First-order forward-mode scalar. Every constitutive closure in this library
// is written against Dual, so one evaluation with a seeded direction yields an
// exact directional derivative of the closure; plain values are recovered by
// seeding zero. No taping, no graph: d carries the single tangent.

#include <cmath>
#include <ostream>

#include <Eigen/Core>

namespace multifield {

struct Dual {
  double v = 0.0;  // value
  double d = 0.0;  // tangent

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value) {}  // NOLINT: implicit by design
  constexpr Dual(double value, double tangent) : v(value), d(tangent) {}

  constexpr Dual operator-() const { return {-v, -d}; }
  constexpr Dual operator+() const { return *this; }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    d -= o.d;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    d = d * o.v + v * o.d;
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    d = (d * o.v - v * o.d) / (o.v * o.v);
    v /= o.v;
    return *this;
  }
};

constexpr Dual operator+(Dual a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
constexpr Dual operator-(Dual a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
constexpr Dual operator*(const Dual& a, const Dual& b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d};
}
constexpr Dual operator/(const Dual& a, const Dual& b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}

constexpr Dual operator+(const Dual& a, double b) { return {a.v + b, a.d}; }
constexpr Dual operator+(double a, const Dual& b) { return {a + b.v, b.d}; }
constexpr Dual operator-(const Dual& a, double b) { return {a.v - b, a.d}; }
constexpr Dual operator-(double a, const Dual& b) { return {a - b.v, -b.d}; }
constexpr Dual operator*(const Dual& a, double b) { return {a.v * b, a.d * b}; }
constexpr Dual operator*(double a, const Dual& b) { return {a * b.v, a * b.d}; }
constexpr Dual operator/(const Dual& a, double b) { return {a.v / b, a.d / b}; }
constexpr Dual operator/(double a, const Dual& b) {
  return {a / b.v, -a * b.d / (b.v * b.v)};
}

// Comparisons act on values only; branching in a closure branches on values.
constexpr bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
constexpr bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
constexpr bool operator<=(const Dual& a, const Dual& b) { return a.v <= b.v; }
constexpr bool operator>=(const Dual& a, const Dual& b) { return a.v >= b.v; }
constexpr bool operator==(const Dual& a, const Dual& b) { return a.v == b.v; }
constexpr bool operator!=(const Dual& a, const Dual& b) { return a.v != b.v; }

inline Dual sqrt(const Dual& a) {
  const double r = std::sqrt(a.v);
  return {r, a.d / (2.0 * r)};
}
inline Dual exp(const Dual& a) {
  const double r = std::exp(a.v);
  return {r, a.d * r};
}
inline Dual log(const Dual& a) { return {std::log(a.v), a.d / a.v}; }
inline Dual sin(const Dual& a) { return {std::sin(a.v), a.d * std::cos(a.v)}; }
inline Dual cos(const Dual& a) { return {std::cos(a.v), -a.d * std::sin(a.v)}; }
inline Dual tan(const Dual& a) {
  const double c = std::cos(a.v);
  return {std::tan(a.v), a.d / (c * c)};
}
inline Dual tanh(const Dual& a) {
  const double t = std::tanh(a.v);
  return {t, a.d * (1.0 - t * t)};
}
inline Dual pow(const Dual& a, double n) {
  return {std::pow(a.v, n), a.d * n * std::pow(a.v, n - 1.0)};
}
inline Dual abs(const Dual& a) {
  const double s = a.v > 0.0 ? 1.0 : (a.v < 0.0 ? -1.0 : 0.0);
  return {std::abs(a.v), s * a.d};
}
inline Dual fabs(const Dual& a) { return abs(a); }

inline double value(const Dual& a) { return a.v; }
inline double tangent(const Dual& a) { return a.d; }

inline std::ostream& operator<<(std::ostream& os, const Dual& a) {
  return os << a.v << "+" << a.d << "eps";
}

inline bool isfinite(const Dual& a) {
  return std::isfinite(a.v) && std::isfinite(a.d);
}

}  // namespace multifield

namespace Eigen {

template <>
struct NumTraits<multifield::Dual> : NumTraits<double> {
  using Real = multifield::Dual;
  using NonInteger = multifield::Dual;
  using Nested = multifield::Dual;
  using Literal = double;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 2,
    MulCost = 4
  };
};

template <typename Op>
struct ScalarBinaryOpTraits<multifield::Dual, double, Op> {
  using ReturnType = multifield::Dual;
};
template <typename Op>
struct ScalarBinaryOpTraits<double, multifield::Dual, Op> {
  using ReturnType = multifield::Dual;
};

}  // namespace Eigen
