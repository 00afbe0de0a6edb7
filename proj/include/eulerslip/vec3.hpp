#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "eulerslip/dual.hpp"

namespace eulerslip {

template <typename T>
struct Vec3 {
  std::array<T, 3> c{};

  constexpr Vec3() = default;
  constexpr Vec3(T x, T y, T z) : c{x, y, z} {}

  constexpr T& operator[](std::size_t i) { return c[i]; }
  constexpr const T& operator[](std::size_t i) const { return c[i]; }
};

using Vec3d = Vec3<double>;

template <typename T>
constexpr Vec3<T> operator+(const Vec3<T>& a, const Vec3<T>& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
template <typename T>
constexpr Vec3<T> operator-(const Vec3<T>& a, const Vec3<T>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
template <typename T>
constexpr Vec3<T> operator-(const Vec3<T>& a) {
  return {-a[0], -a[1], -a[2]};
}
template <typename T, typename S>
constexpr Vec3<T> operator*(const S& s, const Vec3<T>& a) {
  return {s * a[0], s * a[1], s * a[2]};
}
template <typename T, typename S>
constexpr Vec3<T> operator*(const Vec3<T>& a, const S& s) {
  return {a[0] * s, a[1] * s, a[2] * s};
}
template <typename T, typename S>
constexpr Vec3<T> operator/(const Vec3<T>& a, const S& s) {
  return {a[0] / s, a[1] / s, a[2] / s};
}
template <typename T>
constexpr Vec3<T>& operator+=(Vec3<T>& a, const Vec3<T>& b) {
  a = a + b;
  return a;
}

template <typename T>
constexpr T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <typename T>
constexpr Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <typename T>
T norm(const Vec3<T>& a) {
  using std::sqrt;
  return sqrt(dot(a, a));
}

/// Embeds a constant double vector into the scalar type T.
template <typename T>
constexpr Vec3<T> lift(const Vec3d& a) {
  return {T(a[0]), T(a[1]), T(a[2])};
}

inline Vec3d value_of(const Vec3d& a) { return a; }
template <typename T>
Vec3d value_of(const Vec3<T>& a) {
  return {value_of(a[0]), value_of(a[1]), value_of(a[2])};
}

}  // namespace eulerslip
