#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

#include "eulerslip/field.hpp"

using namespace eulerslip;

namespace {

AnalyticField swirl() {
  return AnalyticField::from("swirl", [](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    return Vec3<T>{sin(x[1]) * x[2], x[0] * x[0] * cos(x[2]), exp(x[0] * x[1])};
  });
}

AnalyticScalar bumpy() {
  return AnalyticScalar::from("bumpy", [](const auto& x) {
    return sin(x[0] * x[1]) + x[2] * x[2] * x[2] * exp(-x[0]) + log(2.0 + x[1] * x[1]);
  });
}

}  // namespace

TEST_CASE("dual arithmetic carries first derivatives") {
  const Dual1 x = make_variable(0.7);
  const Dual1 f = sin(x) * exp(x) / (1.0 + x * x) - sqrt(x) + log(x) * cos(x);
  const double v = 0.7;
  const double expect = (std::cos(v) * std::exp(v) + std::sin(v) * std::exp(v)) / (1 + v * v) -
                        std::sin(v) * std::exp(v) * 2 * v / ((1 + v * v) * (1 + v * v)) -
                        0.5 / std::sqrt(v) + std::cos(v) / v - std::log(v) * std::sin(v);
  CHECK(f.d == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("nested duals give second and third derivatives") {
  // f = x^3 exp(x): f'' = (x^3 + 6x^2 + 6x) e^x, f''' = (x^3 + 9x^2 + 18x + 6) e^x
  const double v = 0.4;
  Dual3 x{Dual2{Dual1{v, 1.0}, Dual1{1.0, 0.0}}, Dual2{Dual1{1.0, 0.0}, Dual1{0.0, 0.0}}};
  const Dual3 f = x * x * x * exp(x);
  CHECK(f.d.d.v == doctest::Approx((v * v * v + 6 * v * v + 6 * v) * std::exp(v)).epsilon(1e-14));
  CHECK(f.d.d.d ==
        doctest::Approx((v * v * v + 9 * v * v + 18 * v + 6) * std::exp(v)).epsilon(1e-14));
}

TEST_CASE("exact curl and divergence agree with finite differences") {
  const AnalyticField f = swirl();
  const oracle::VecFn plain = [&](const Vec3d& x) { return f(x); };
  for (const Vec3d& x : {Vec3d{0.3, -0.2, 0.5}, Vec3d{-1.1, 0.4, 0.9}, Vec3d{0.0, 1.3, -0.7}}) {
    const Vec3d c = curl(f, x);
    const Vec3d r = oracle::fd_curl(plain, x);
    CHECK(norm(c - r) < 1e-9);
    CHECK(divergence(f, x) == doctest::Approx(oracle::fd_div(plain, x)).epsilon(1e-9));
  }
}

TEST_CASE("curl of a gradient and divergence of a curl vanish exactly") {
  const AnalyticField g = gradient_field(bumpy());
  const AnalyticField w = curl_field(swirl());
  for (const Vec3d& x : {Vec3d{0.3, -0.2, 0.5}, Vec3d{-1.1, 0.4, 0.9}}) {
    CHECK(norm(curl(g, x)) <= 1e-12);
    CHECK(std::abs(divergence(w, x)) <= 1e-12);
  }
}

TEST_CASE("second derivatives are symmetric and match differences of the Jacobian") {
  const AnalyticField f = swirl();
  const Vec3d x{0.2, 0.5, -0.3};
  const SecondDerivatives d2 = second_derivatives(f, x);
  const double h = 1e-4;
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      Vec3d xp = x, xm = x;
      xp[l] += h;
      xm[l] -= h;
      const auto jp = jacobian_columns(f, xp);
      const auto jm = jacobian_columns(f, xm);
      for (int i = 0; i < 3; ++i) {
        CHECK(d2[i][k][l] == doctest::Approx(d2[i][l][k]).epsilon(1e-13));
        CHECK(d2[i][k][l] == doctest::Approx((jp[k][i] - jm[k][i]) / (2 * h)).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("derivative depth is bounded") {
  const AnalyticField w = curl_field(curl_field(curl_field(swirl())));
  CHECK(w.depth() == 0);
  CHECK_NOTHROW(w(Vec3d{0.1, 0.2, 0.3}));
  CHECK_THROWS_AS(curl(w, Vec3d{0.1, 0.2, 0.3}), std::logic_error);
  CHECK_THROWS_AS(AnalyticField{}(Vec3d{0.0, 0.0, 0.0}), std::logic_error);
}

TEST_CASE("combinators") {
  const AnalyticField f = swirl();
  const Vec3d x{0.4, 0.1, -0.6};
  CHECK(norm(scaled_field(f, -3.0)(x) + 3.0 * f(x)) < 1e-15);
  CHECK(norm(cross_field(f, f)(x)) < 1e-15);
  CHECK(norm(zero_field()(x)) == 0.0);
}
