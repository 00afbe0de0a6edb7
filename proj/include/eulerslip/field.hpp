#pragma once

// Closed-form fields with exact derivatives.
//
// A field is written once as a generic callable over a scalar type T and
// stored type-erased; evaluation is available at double and at nested dual
// numbers up to depth three. Derivative combinators (curl, gradient) consume
// one nesting level, so a leaf field supports third derivatives, its curl
// second derivatives, and so on.

#include <algorithm>
#include <array>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "eulerslip/dual.hpp"
#include "eulerslip/vec3.hpp"

namespace eulerslip {

template <typename T>
using Same = T;

inline constexpr int kMaxDualDepth = 3;

template <template <class> class In, template <class> class Out>
class Function {
 public:
  Function() = default;

  /// Wraps a generic callable. `MaxDepth` bounds the nesting level the
  /// callable body may be instantiated at.
  template <int MaxDepth = kMaxDualDepth, typename F>
  static Function from(std::string tag, F f, int depth = MaxDepth) {
    Function out;
    out.impl_ = std::make_shared<Model<F, MaxDepth>>(std::move(f));
    out.tag_ = std::move(tag);
    out.depth_ = std::min(depth, MaxDepth);
    return out;
  }

  template <typename T>
  Out<T> operator()(const In<T>& x) const {
    if (!impl_) {
      throw std::logic_error("evaluating an empty function");
    }
    if (dual_depth<T>::value > depth_) {
      throw std::logic_error("derivative order exceeds what '" + tag_ + "' supports");
    }
    return impl_->eval(x);
  }

  const std::string& tag() const { return tag_; }
  /// Highest dual nesting depth at which the function can be evaluated.
  int depth() const { return depth_; }
  explicit operator bool() const { return static_cast<bool>(impl_); }

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual Out<double> eval(const In<double>& x) const = 0;
    virtual Out<Dual1> eval(const In<Dual1>& x) const = 0;
    virtual Out<Dual2> eval(const In<Dual2>& x) const = 0;
    virtual Out<Dual3> eval(const In<Dual3>& x) const = 0;
  };

  template <typename F, int MaxDepth>
  struct Model final : Concept {
    explicit Model(F fn) : f(std::move(fn)) {}
    Out<double> eval(const In<double>& x) const override { return call<double>(x); }
    Out<Dual1> eval(const In<Dual1>& x) const override { return call<Dual1>(x); }
    Out<Dual2> eval(const In<Dual2>& x) const override { return call<Dual2>(x); }
    Out<Dual3> eval(const In<Dual3>& x) const override { return call<Dual3>(x); }

    template <typename T>
    Out<T> call(const In<T>& x) const {
      if constexpr (dual_depth<T>::value <= MaxDepth) {
        return f(x);
      } else {
        throw std::logic_error("derivative order exhausted");
      }
    }
    F f;
  };

  std::shared_ptr<const Concept> impl_;
  std::string tag_;
  int depth_ = 0;
};

/// Vector field R^3 -> R^3.
using AnalyticField = Function<Vec3, Vec3>;
/// Scalar field R^3 -> R.
using AnalyticScalar = Function<Vec3, Same>;
/// Scalar function of one real parameter (profiles, boundary data).
using CurveFunction = Function<Same, Same>;

// derivative kernels ---------------------------------------------------------

namespace detail {

template <typename T>
Vec3<Dual<T>> seed(const Vec3<T>& x, const Vec3<T>& dir) {
  return {Dual<T>{x[0], dir[0]}, Dual<T>{x[1], dir[1]}, Dual<T>{x[2], dir[2]}};
}

template <typename T>
Vec3<T> unit(int k) {
  Vec3<T> e{T(0.0), T(0.0), T(0.0)};
  e[k] = T(1.0);
  return e;
}

template <typename T>
Vec3<T> tangents(const Vec3<Dual<T>>& y) {
  return {y[0].d, y[1].d, y[2].d};
}

}  // namespace detail

/// Columns dF/dx_k, k = 0..2.
template <typename T>
std::array<Vec3<T>, 3> jacobian_columns(const AnalyticField& f, const Vec3<T>& x) {
  std::array<Vec3<T>, 3> cols;
  for (int k = 0; k < 3; ++k) {
    cols[k] = detail::tangents(f(detail::seed(x, detail::unit<T>(k))));
  }
  return cols;
}

/// Derivative of f at x along dir (not normalized).
template <typename T>
Vec3<T> directional_derivative(const AnalyticField& f, const Vec3<T>& x, const Vec3<T>& dir) {
  return detail::tangents(f(detail::seed(x, dir)));
}

template <typename T>
T directional_derivative(const AnalyticScalar& f, const Vec3<T>& x, const Vec3<T>& dir) {
  return f(detail::seed(x, dir)).d;
}

template <typename T>
Vec3<T> curl(const AnalyticField& f, const Vec3<T>& x) {
  const auto j = jacobian_columns(f, x);
  return {j[1][2] - j[2][1], j[2][0] - j[0][2], j[0][1] - j[1][0]};
}

template <typename T>
T divergence(const AnalyticField& f, const Vec3<T>& x) {
  const auto j = jacobian_columns(f, x);
  return j[0][0] + j[1][1] + j[2][2];
}

template <typename T>
Vec3<T> gradient(const AnalyticScalar& f, const Vec3<T>& x) {
  Vec3<T> g;
  for (int k = 0; k < 3; ++k) {
    g[k] = f(detail::seed(x, detail::unit<T>(k))).d;
  }
  return g;
}

/// Exact curl at a point (the Cartesian oracle for the curvilinear stencils).
inline Vec3d curl_exact(const AnalyticField& f, const Vec3d& x) { return curl(f, x); }
inline double div_exact(const AnalyticField& f, const Vec3d& x) { return divergence(f, x); }

/// H[i][k][l] = d^2 F_i / dx_k dx_l.
using SecondDerivatives = std::array<std::array<std::array<double, 3>, 3>, 3>;
SecondDerivatives second_derivatives(const AnalyticField& f, const Vec3d& x);

// combinators ----------------------------------------------------------------

AnalyticField curl_field(const AnalyticField& a);
AnalyticField gradient_field(const AnalyticScalar& phi);
AnalyticField cross_field(const AnalyticField& a, const AnalyticField& b);
AnalyticField scaled_field(const AnalyticField& a, double c);
AnalyticField zero_field();

}  // namespace eulerslip
