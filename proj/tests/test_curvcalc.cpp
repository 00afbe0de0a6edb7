#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "test_fields.hpp"

#include "eulerslip/curvcalc.hpp"
#include "eulerslip/errors.hpp"
#include "eulerslip/sampling.hpp"

using namespace eulerslip;

namespace {

struct OperatorErrors {
  double curl = 0.0;
  double div = 0.0;
};

OperatorErrors errors_at(const SurfaceChart& c, const AnalyticField& f, double u, double v,
                         double xi3, double h) {
  const PointFunction pf = [&](const Vec3d& x) { return f(x); };
  const CurvilinearStencil s = sample_stencil(c, pf, u, v, xi3, {h, h, h});
  const BoundaryFrame fr = surface_frame(c, u, v);
  const Vec3d x = parallel_point(fr, xi3).position;
  const FrameComponents exact = to_frame(curl_exact(f, x), fr);
  const FrameComponents fd = curl_curvilinear(s);
  OperatorErrors e;
  e.curl = std::max({std::abs(fd.v1 - exact.v1), std::abs(fd.v2 - exact.v2),
                     std::abs(fd.v3 - exact.v3)});
  e.div = std::abs(div_curvilinear(s) - div_exact(f, x));
  return e;
}

}  // namespace

TEST_CASE("frame components round-trip") {
  const SurfaceChart c = SurfaceChart::spheroid(1.0, 2.0);
  const BoundaryFrame f = surface_frame(c, 0.6, 1.3);
  const Vec3d v{0.3, -1.2, 2.5};
  const FrameComponents k = to_frame(v, f);
  CHECK(norm(from_frame(k, f) - v) < 1e-15);
  const FrameComponents t = tangential_cross(v, f);
  const FrameComponents direct = to_frame(cross(v, f.n), f);
  CHECK(t.v1 == doctest::Approx(direct.v1).epsilon(1e-14));
  CHECK(t.v2 == doctest::Approx(direct.v2).epsilon(1e-14));
  CHECK(std::abs(t.v3) == 0.0);
}

TEST_CASE("curvilinear operators converge at second order") {
  const std::vector<SurfaceChart> charts{SurfaceChart::sphere(1.0), SurfaceChart::spheroid(1.0, 2.0),
                                         SurfaceChart::torus(3.0, 1.0)};
  for (const SurfaceChart& c : charts) {
    for (const AnalyticField& f : testfields::operator_fields()) {
      CAPTURE(c.tag());
      CAPTURE(f.tag());
      std::vector<double> ec, ed;
      for (int k = 0; k < 5; ++k) {
        const OperatorErrors e = errors_at(c, f, 1.1, 0.7, -0.05, 0.04 / (1 << k));
        ec.push_back(e.curl);
        ed.push_back(e.div);
      }
      if (ec.front() > 1e-11) {
        CHECK(oracle::observed_order(ec) >= 1.9);
      }
      if (ed.front() > 1e-11) {
        CHECK(oracle::observed_order(ed) >= 1.9);
      }
      CHECK(ec.back() < 1e-4);
      CHECK(ed.back() < 1e-4);
    }
  }
}

TEST_CASE("rigid rotation has frame curl 2 e_z") {
  const SurfaceChart c = SurfaceChart::sphere(1.0);
  const AnalyticField rot = AnalyticField::from("rot", [](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    return Vec3<T>{-x[1], x[0], T(0.0)};
  });
  const PointFunction pf = [&](const Vec3d& x) { return rot(x); };
  const double t = 0.8;
  const CurvilinearStencil s = sample_stencil(c, pf, t, 0.2, 0.0, {1e-3, 1e-3, 1e-3});
  const FrameComponents w = curl_curvilinear(s);
  // 2 e_z = 2 (cos t n - sin t i1)
  CHECK(w.v1 == doctest::Approx(-2.0 * std::sin(t)).epsilon(1e-6));
  CHECK(std::abs(w.v2) < 1e-9);
  CHECK(w.v3 == doctest::Approx(2.0 * std::cos(t)).epsilon(1e-6));
  CHECK(std::abs(div_curvilinear(s)) < 1e-9);
}

TEST_CASE("stencil errors") {
  const SurfaceChart c = SurfaceChart::sphere(1.0);
  const PointFunction zero = [](const Vec3d&) { return Vec3d{0.0, 0.0, 0.0}; };
  CHECK_THROWS_AS(sample_stencil(c, zero, 1e-3, 0.0, 0.0, {1e-2, 1e-2, 1e-2}), DomainError);
  CHECK_THROWS_AS(sample_stencil(c, zero, 1.0, 0.0, -0.995, {1e-2, 1e-2, 1e-2}),
                  DegenerateCoordinatesError);
}
