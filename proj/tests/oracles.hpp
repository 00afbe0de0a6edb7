#pragma once

// Reference values computed independently of the library's dual-number
// machinery: closed-form curvatures and fields, and plain finite differences.

#include <array>
#include <cmath>
#include <functional>

#include "eulerslip/vec3.hpp"

namespace oracle {

using eulerslip::Vec3d;
using VecFn = std::function<Vec3d(const Vec3d&)>;

struct Curvatures {
  double k1;  // meridian
  double k2;  // parallel
};

// Spheroid r = a sin t, z = c cos t.
inline Curvatures spheroid(double a, double c, double t) {
  const double s = std::sqrt(a * a * std::cos(t) * std::cos(t) + c * c * std::sin(t) * std::sin(t));
  return {a * c / (s * s * s), c / (a * s)};
}

// Torus r = R + r0 cos t, z = -r0 sin t.
inline Curvatures torus(double R, double r0, double t) {
  return {1.0 / r0, std::cos(t) / (R + r0 * std::cos(t))};
}

// Fourth-order central difference of f along axis k.
inline Vec3d partial(const VecFn& f, const Vec3d& x, int k, double h) {
  auto at = [&](double s) {
    Vec3d y = x;
    y[k] += s;
    return f(y);
  };
  return (8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12.0 * h);
}

inline Vec3d fd_curl(const VecFn& f, const Vec3d& x, double h = 1e-3) {
  const Vec3d dx = partial(f, x, 0, h), dy = partial(f, x, 1, h), dz = partial(f, x, 2, h);
  return Vec3d{dy[2] - dz[1], dz[0] - dx[2], dx[1] - dy[0]};
}

inline double fd_div(const VecFn& f, const Vec3d& x, double h = 1e-3) {
  return partial(f, x, 0, h)[0] + partial(f, x, 1, h)[1] + partial(f, x, 2, h)[2];
}

// Ball family a = g(rho^2) (-y, x, 0) with g polynomial in rho^2, written out by hand:
// b = 2 g' (-z x, -z y, x^2 + y^2) + 2 g e_z  (g' with respect to rho^2).
struct BallPolynomial {
  std::array<double, 3> c{2.0, -1.0, 0.0};  // g = c0 + c1 s + c2 s^2, s = rho^2

  double g(double s) const { return c[0] + c[1] * s + c[2] * s * s; }
  double dg(double s) const { return c[1] + 2.0 * c[2] * s; }

  Vec3d a(const Vec3d& x) const {
    const double s = eulerslip::dot(x, x);
    return Vec3d{-g(s) * x[1], g(s) * x[0], 0.0};
  }
  Vec3d b(const Vec3d& x) const {
    const double s = eulerslip::dot(x, x);
    const double d = 2.0 * dg(s);
    return Vec3d{-d * x[2] * x[0], -d * x[2] * x[1], d * (x[0] * x[0] + x[1] * x[1]) + 2.0 * g(s)};
  }
};

// Meridian unit tangent and outward normal on the sphere at colatitude t, azimuth p.
inline Vec3d sphere_i1(double t, double p) {
  return Vec3d{std::cos(t) * std::cos(p), std::cos(t) * std::sin(p), -std::sin(t)};
}
inline Vec3d sphere_i2(double, double p) { return Vec3d{-std::sin(p), std::cos(p), 0.0}; }
inline Vec3d sphere_n(double t, double p) {
  return Vec3d{std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
}

// Observed order from successive errors at halving steps (minimum over pairs).
template <typename Range>
double observed_order(const Range& errors) {
  double order = 1e300;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
    order = std::min(order, std::log2(errors[i] / errors[i + 1]));
  }
  return order;
}

}  // namespace oracle
