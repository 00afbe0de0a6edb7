#pragma once

// Forward-mode dual numbers carrying one directional derivative.
// Nesting Dual<Dual<double>> yields exact mixed second derivatives; the
// field machinery nests up to three levels (Dual3).

#include <cmath>
#include <type_traits>

namespace eulerslip {

template <typename T>
struct Dual {
  T v{};  // value
  T d{};  // derivative along the seeded direction

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value), d(0.0) {}  // NOLINT(google-explicit-constructor)
  constexpr Dual(T value, T deriv) : v(value), d(deriv) {}
};

using Dual1 = Dual<double>;
using Dual2 = Dual<Dual1>;
using Dual3 = Dual<Dual2>;

template <typename T>
struct is_dual : std::false_type {};
template <typename T>
struct is_dual<Dual<T>> : std::true_type {};

template <typename T>
inline constexpr bool is_dual_v = is_dual<T>::value;

/// Nesting depth: 0 for double, 1 for Dual<double>, ...
template <typename T>
struct dual_depth : std::integral_constant<int, 0> {};
template <typename T>
struct dual_depth<Dual<T>> : std::integral_constant<int, 1 + dual_depth<T>::value> {};

constexpr double value_of(double x) { return x; }
template <typename T>
constexpr double value_of(const Dual<T>& x) {
  return value_of(x.v);
}

// arithmetic ---------------------------------------------------------------

template <typename T>
constexpr Dual<T> operator-(const Dual<T>& a) {
  return {-a.v, -a.d};
}

template <typename T>
constexpr Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) {
  return {a.v + b.v, a.d + b.d};
}
template <typename T>
constexpr Dual<T> operator+(const Dual<T>& a, double b) {
  return {a.v + b, a.d};
}
template <typename T>
constexpr Dual<T> operator+(double a, const Dual<T>& b) {
  return {a + b.v, b.d};
}

template <typename T>
constexpr Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) {
  return {a.v - b.v, a.d - b.d};
}
template <typename T>
constexpr Dual<T> operator-(const Dual<T>& a, double b) {
  return {a.v - b, a.d};
}
template <typename T>
constexpr Dual<T> operator-(double a, const Dual<T>& b) {
  return {a - b.v, -b.d};
}

template <typename T>
constexpr Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d};
}
template <typename T>
constexpr Dual<T> operator*(const Dual<T>& a, double b) {
  return {a.v * b, a.d * b};
}
template <typename T>
constexpr Dual<T> operator*(double a, const Dual<T>& b) {
  return {a * b.v, a * b.d};
}

template <typename T>
constexpr Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  const T q = a.v / b.v;
  return {q, (a.d - q * b.d) / b.v};
}
template <typename T>
constexpr Dual<T> operator/(const Dual<T>& a, double b) {
  return {a.v / b, a.d / b};
}
template <typename T>
constexpr Dual<T> operator/(double a, const Dual<T>& b) {
  const T q = a / b.v;
  return {q, -q * b.d / b.v};
}

template <typename T, typename U>
constexpr Dual<T>& operator+=(Dual<T>& a, const U& b) {
  a = a + b;
  return a;
}
template <typename T, typename U>
constexpr Dual<T>& operator-=(Dual<T>& a, const U& b) {
  a = a - b;
  return a;
}
template <typename T, typename U>
constexpr Dual<T>& operator*=(Dual<T>& a, const U& b) {
  a = a * b;
  return a;
}
template <typename T, typename U>
constexpr Dual<T>& operator/=(Dual<T>& a, const U& b) {
  a = a / b;
  return a;
}

// elementary functions -----------------------------------------------------
// Unqualified calls inside these bodies resolve to std:: for double and
// recurse through ADL for nested duals.

using std::cos;
using std::exp;
using std::log;
using std::sin;
using std::sqrt;

template <typename T>
Dual<T> sqrt(const Dual<T>& a) {
  const T s = sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}

template <typename T>
Dual<T> exp(const Dual<T>& a) {
  const T e = exp(a.v);
  return {e, e * a.d};
}

template <typename T>
Dual<T> log(const Dual<T>& a) {
  return {log(a.v), a.d / a.v};
}

template <typename T>
Dual<T> sin(const Dual<T>& a) {
  return {sin(a.v), cos(a.v) * a.d};
}

template <typename T>
Dual<T> cos(const Dual<T>& a) {
  return {cos(a.v), -sin(a.v) * a.d};
}

/// Seeds a variable: value x, unit derivative.
template <typename T>
constexpr Dual<T> make_variable(const T& x) {
  return {x, T(1.0)};
}

}  // namespace eulerslip
