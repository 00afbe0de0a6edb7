#include "eulerslip/curvcalc.hpp"

#include <cmath>

#include "eulerslip/errors.hpp"

namespace eulerslip {

FrameComponents to_frame(const Vec3d& v, const BoundaryFrame& frame) {
  return {dot(v, frame.i1), dot(v, frame.i2), dot(v, frame.n)};
}

Vec3d from_frame(const FrameComponents& c, const BoundaryFrame& frame) {
  return c.v1 * frame.i1 + c.v2 * frame.i2 + c.v3 * frame.n;
}

FrameComponents tangential_cross(const Vec3d& w, const BoundaryFrame& frame) {
  const FrameComponents c = to_frame(w, frame);
  return {c.v2, -c.v1, 0.0};
}

CurvilinearStencil sample_stencil(const SurfaceChart& chart, const PointFunction& field,
                                  double xi1, double xi2, double xi3,
                                  const std::array<double, 3>& steps) {
  for (double s : steps) {
    if (!(s > 0.0)) {
      throw DomainError("stencil steps must be positive");
    }
  }
  const ParamRange r1 = chart.range(1);
  const ParamRange r2 = chart.range(2);
  if (!r1.periodic && (xi1 - steps[0] < r1.lo || xi1 + steps[0] > r1.hi)) {
    throw DomainError("stencil leaves the chart along xi1");
  }
  if (!r2.periodic && (xi2 - steps[1] < r2.lo || xi2 + steps[1] > r2.hi)) {
    throw DomainError("stencil leaves the chart along xi2");
  }

  auto node = [&](double a, double b, double c) {
    const BoundaryFrame f = surface_frame(chart, a, b);
    const ParallelPoint p = parallel_point(f, c);
    return StencilNode{to_frame(field(p.position), f), p.h1, p.h2};
  };

  CurvilinearStencil s;
  s.steps = steps;
  s.center = node(xi1, xi2, xi3);
  s.nodes[0] = {node(xi1 - steps[0], xi2, xi3), node(xi1 + steps[0], xi2, xi3)};
  s.nodes[1] = {node(xi1, xi2 - steps[1], xi3), node(xi1, xi2 + steps[1], xi3)};
  s.nodes[2] = {node(xi1, xi2, xi3 - steps[2]), node(xi1, xi2, xi3 + steps[2])};
  return s;
}

namespace {

template <typename F>
double central(const CurvilinearStencil& s, int dir, F&& quantity) {
  return (quantity(s.nodes[dir][1]) - quantity(s.nodes[dir][0])) / (2.0 * s.steps[dir]);
}

}  // namespace

FrameComponents curl_curvilinear(const CurvilinearStencil& s) {
  const double h1 = s.center.h1;
  const double h2 = s.center.h2;
  auto h1v1 = [](const StencilNode& n) { return n.h1 * n.v.v1; };
  auto h2v2 = [](const StencilNode& n) { return n.h2 * n.v.v2; };
  auto h3v3 = [](const StencilNode& n) { return n.v.v3; };

  FrameComponents c;
  c.v1 = (central(s, 1, h3v3) - central(s, 2, h2v2)) / h2;
  c.v2 = (central(s, 2, h1v1) - central(s, 0, h3v3)) / h1;
  c.v3 = (central(s, 0, h2v2) - central(s, 1, h1v1)) / (h1 * h2);
  return c;
}

double div_curvilinear(const CurvilinearStencil& s) {
  auto f1 = [](const StencilNode& n) { return n.h2 * n.v.v1; };
  auto f2 = [](const StencilNode& n) { return n.h1 * n.v.v2; };
  auto f3 = [](const StencilNode& n) { return n.h1 * n.h2 * n.v.v3; };
  return (central(s, 0, f1) + central(s, 1, f2) + central(s, 2, f3)) /
         (s.center.h1 * s.center.h2);
}

}  // namespace eulerslip
