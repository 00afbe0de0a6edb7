#include "eulerslip/field.hpp"

namespace eulerslip {

SecondDerivatives second_derivatives(const AnalyticField& f, const Vec3d& x) {
  SecondDerivatives h{};
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      Vec3<Dual2> y;
      for (int m = 0; m < 3; ++m) {
        y[m] = Dual2{Dual1{x[m], m == l ? 1.0 : 0.0}, Dual1{m == k ? 1.0 : 0.0, 0.0}};
      }
      const Vec3<Dual2> r = f(y);
      for (int i = 0; i < 3; ++i) {
        h[i][k][l] = r[i].d.d;
      }
    }
  }
  return h;
}

AnalyticField curl_field(const AnalyticField& a) {
  return AnalyticField::from<kMaxDualDepth - 1>(
      "curl(" + a.tag() + ")", [a](const auto& x) { return curl(a, x); }, a.depth() - 1);
}

AnalyticField gradient_field(const AnalyticScalar& phi) {
  return AnalyticField::from<kMaxDualDepth - 1>(
      "grad(" + phi.tag() + ")", [phi](const auto& x) { return gradient(phi, x); },
      phi.depth() - 1);
}

AnalyticField cross_field(const AnalyticField& a, const AnalyticField& b) {
  return AnalyticField::from(
      "(" + a.tag() + ")x(" + b.tag() + ")", [a, b](const auto& x) { return cross(a(x), b(x)); },
      std::min(a.depth(), b.depth()));
}

AnalyticField scaled_field(const AnalyticField& a, double c) {
  return AnalyticField::from(
      std::to_string(c) + "*" + a.tag(), [a, c](const auto& x) { return c * a(x); }, a.depth());
}

AnalyticField zero_field() {
  return AnalyticField::from("0", [](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    return Vec3<T>{T(0.0), T(0.0), T(0.0)};
  });
}

}  // namespace eulerslip
