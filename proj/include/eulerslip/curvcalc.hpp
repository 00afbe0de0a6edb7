#pragma once

// Curl and divergence in orthogonal curvilinear (curvature-line) coordinates,
// evaluated from frame components on a seven-point stencil with h3 = 1.
// The exact Cartesian counterparts live in field.hpp (curl_exact, div_exact).

#include <array>
#include <functional>

#include "eulerslip/geometry.hpp"
#include "eulerslip/vec3.hpp"

namespace eulerslip {

/// Components along (i1, i2, i3 = n).
struct FrameComponents {
  double v1 = 0.0;
  double v2 = 0.0;
  double v3 = 0.0;
};

FrameComponents to_frame(const Vec3d& v, const BoundaryFrame& frame);
Vec3d from_frame(const FrameComponents& c, const BoundaryFrame& frame);

/// w x n expressed in the frame: (w2, -w1, 0).
FrameComponents tangential_cross(const Vec3d& w, const BoundaryFrame& frame);

struct StencilNode {
  FrameComponents v;
  double h1 = 0.0;
  double h2 = 0.0;
};

/// Values at the centre and at +-step along each coordinate direction.
struct CurvilinearStencil {
  StencilNode center;
  /// nodes[j][0] at xi_j - step_j, nodes[j][1] at xi_j + step_j.
  std::array<std::array<StencilNode, 2>, 3> nodes;
  std::array<double, 3> steps{};
};

using PointFunction = std::function<Vec3d(const Vec3d&)>;

/// Samples `field` around (xi1, xi2, xi3), using parallel-surface frames off
/// the boundary. Throws DomainError if the stencil leaves the chart patch and
/// DegenerateCoordinatesError on focal crossings.
CurvilinearStencil sample_stencil(const SurfaceChart& chart, const PointFunction& field,
                                  double xi1, double xi2, double xi3,
                                  const std::array<double, 3>& steps);

/// Second-order central differences of the three-bracket curl formula.
FrameComponents curl_curvilinear(const CurvilinearStencil& s);

/// (1 / (h1 h2)) sum_j d(h_k h_l v_j)/dxi_j with h3 = 1.
double div_curvilinear(const CurvilinearStencil& s);

}  // namespace eulerslip
