#pragma once

// Curvature-line charts on boundaries of revolution and on a flat slab.
//
// Coordinates: xi1 runs along meridians (lines of curvature), xi2 is the
// azimuth, xi3 is signed normal distance, increasing out of the domain.
// The ordered frame (i1, i2, n) is right-handed with n outward, and
// curvatures are positive where the domain is convex (unit ball: +1).

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "eulerslip/dual.hpp"
#include "eulerslip/errors.hpp"
#include "eulerslip/vec3.hpp"

namespace eulerslip {

inline constexpr double kDefaultPoleBand = 1e-3;
inline constexpr double kUmbilicalTolerance = 1e-8;
inline constexpr double kPi = 3.14159265358979323846;

enum class ChartKind { sphere, spheroid, torus, revolution, slab };

std::string to_string(ChartKind kind);

enum class ProfileKind {
  /// Axis to axis: r = sum_{k>=1} r_k sin(k t), z = sum_{k>=0} z_k cos(k t), t in [0, pi].
  pole_fourier,
  /// Closed meridian loop: r = r_0 + sum_k (r_{2k-1} cos kt + r_{2k} sin kt), same for z.
  loop,
  /// Straight open segment: r = r_0 + r_1 t, z = z_0 + z_1 t, t in [t_min, t_max].
  line,
};

template <typename T>
struct ProfileJet {
  T r, z;
  T dr, dz;
  T ddr, ddz;
};

struct MeridianProfile {
  ProfileKind kind = ProfileKind::pole_fourier;
  std::vector<double> r_coef;
  std::vector<double> z_coef;
  double t_min = 0.0;  // line only
  double t_max = 1.0;  // line only

  template <typename T>
  ProfileJet<T> jet(const T& t) const;

  /// Same curve traversed in the opposite direction.
  MeridianProfile reversed() const;
};

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
  bool periodic = false;
};

class SurfaceChart {
 public:
  static SurfaceChart sphere(double radius, double pole_band = kDefaultPoleBand);
  static SurfaceChart spheroid(double equatorial, double polar, double pole_band = kDefaultPoleBand);
  static SurfaceChart torus(double major, double minor);
  /// Open circular cylinder of the given radius, z in [-height/2, height/2].
  static SurfaceChart cylinder(double radius, double height);
  static SurfaceChart revolution(MeridianProfile profile, double pole_band = kDefaultPoleBand);
  /// Plane z = 0 bounding {z < 0}, periodic in x and y with the given period.
  static SurfaceChart slab(double period);

  ChartKind kind() const { return kind_; }
  std::string tag() const;
  const std::vector<double>& parameters() const { return params_; }

  bool is_revolution() const { return profile_.has_value(); }
  const MeridianProfile& profile() const;
  /// Closed boundary component (sphere-like or torus-like).
  bool closed() const;

  /// Sampling range of xi_j (j = 1, 2); excludes the pole bands.
  ParamRange range(int j) const { return j == 1 ? range1_ : range2_; }
  /// Full natural extent of xi1 (pole to pole, including the bands).
  ParamRange natural_range1() const;
  double pole_band() const { return pole_band_; }

  double diameter() const { return diameter_; }
  /// Smallest inward normal distance to a focal point (1 / max positive kappa).
  double focal_distance() const { return focal_in_; }
  /// Smallest outward normal distance to a focal point (1 / max |negative kappa|).
  double outward_focal_distance() const { return focal_out_; }

  template <typename T>
  Vec3<T> position(const T& xi1, const T& xi2) const;

  /// Throws DomainError unless (xi1, xi2) lies in the sampling range.
  void check_params(double xi1, double xi2) const;

 private:
  SurfaceChart() = default;
  void finalize();

  ChartKind kind_ = ChartKind::sphere;
  std::vector<double> params_;
  std::optional<MeridianProfile> profile_;
  double period_ = 0.0;  // slab
  double pole_band_ = 0.0;
  ParamRange range1_;
  ParamRange range2_;
  double diameter_ = 0.0;
  double focal_in_ = std::numeric_limits<double>::infinity();
  double focal_out_ = std::numeric_limits<double>::infinity();
};

struct BoundaryFrame {
  double xi1 = 0.0;
  double xi2 = 0.0;
  Vec3d position;
  Vec3d i1, i2, n;
  double h1 = 0.0;
  double h2 = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;

  double gaussian() const { return kappa1 * kappa2; }
};

/// Frame, scale factors and principal curvatures (second fundamental form).
BoundaryFrame surface_frame(const SurfaceChart& chart, double xi1, double xi2);

struct ParallelPoint {
  Vec3d position;
  double h1 = 0.0;
  double h2 = 0.0;
};

/// Point at signed normal distance xi3 from the boundary; h_j scale by (1 + kappa_j xi3).
ParallelPoint parallel_point(const SurfaceChart& chart, double xi1, double xi2, double xi3);
ParallelPoint parallel_point(const BoundaryFrame& frame, double xi3);

struct CurvaturePair {
  double kappa1 = 0.0;
  double kappa2 = 0.0;
};

/// kappa_j = (1 / h_j) dh_j/dxi3 at xi3 = 0, with h_j(xi3) = |dX/dxi_j + xi3 dn/dxi_j|
/// differentiated exactly. `delta` is the probe distance used to confirm the
/// scale law is linear in xi3 (coordinate lines are lines of curvature).
CurvaturePair curvatures_via_kapa(const SurfaceChart& chart, double xi1, double xi2, double delta);

enum class PointClass { generic, umbilical, planar };

std::string to_string(PointClass c);

/// `length_scale` makes the tolerance dimensionless (pass the chart diameter).
PointClass classify_point(const BoundaryFrame& frame, double tol = kUmbilicalTolerance,
                          double length_scale = 1.0);

/// Point of the set where the Gaussian curvature does not vanish.
bool sigma_membership(const BoundaryFrame& frame, double tol);

// template definitions -------------------------------------------------------

template <typename T>
ProfileJet<T> MeridianProfile::jet(const T& t) const {
  ProfileJet<T> j{T(0.0), T(0.0), T(0.0), T(0.0), T(0.0), T(0.0)};
  switch (kind) {
    case ProfileKind::pole_fourier: {
      for (std::size_t i = 0; i < r_coef.size(); ++i) {
        const double k = static_cast<double>(i + 1);
        const T s = sin(k * t);
        const T c = cos(k * t);
        j.r += r_coef[i] * s;
        j.dr += (k * r_coef[i]) * c;
        j.ddr -= (k * k * r_coef[i]) * s;
      }
      for (std::size_t i = 0; i < z_coef.size(); ++i) {
        const double k = static_cast<double>(i);
        const T s = sin(k * t);
        const T c = cos(k * t);
        j.z += z_coef[i] * c;
        j.dz -= (k * z_coef[i]) * s;
        j.ddz -= (k * k * z_coef[i]) * c;
      }
      break;
    }
    case ProfileKind::loop: {
      auto accumulate = [&t](const std::vector<double>& cf, T& f, T& df, T& ddf) {
        if (!cf.empty()) {
          f += cf[0];
        }
        for (std::size_t i = 1; i < cf.size(); ++i) {
          const double k = static_cast<double>((i + 1) / 2);
          const T s = sin(k * t);
          const T c = cos(k * t);
          if (i % 2 == 1) {  // cosine term
            f += cf[i] * c;
            df -= (k * cf[i]) * s;
            ddf -= (k * k * cf[i]) * c;
          } else {
            f += cf[i] * s;
            df += (k * cf[i]) * c;
            ddf -= (k * k * cf[i]) * s;
          }
        }
      };
      accumulate(r_coef, j.r, j.dr, j.ddr);
      accumulate(z_coef, j.z, j.dz, j.ddz);
      break;
    }
    case ProfileKind::line: {
      j.r = r_coef.at(0) + r_coef.at(1) * t;
      j.z = z_coef.at(0) + z_coef.at(1) * t;
      j.dr = T(r_coef.at(1));
      j.dz = T(z_coef.at(1));
      break;
    }
  }
  return j;
}

template <typename T>
Vec3<T> SurfaceChart::position(const T& xi1, const T& xi2) const {
  if (kind_ == ChartKind::slab) {
    return {xi1, xi2, T(0.0)};
  }
  const ProfileJet<T> j = profile_->jet(xi1);
  return {j.r * cos(xi2), j.r * sin(xi2), j.z};
}

}  // namespace eulerslip
