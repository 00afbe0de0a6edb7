#pragma once

// Admissible fields: smooth, divergence free, tangent to the boundary, with
// vorticity normal to the boundary.
//
// On closed surfaces of revolution the field is built from a zero-mean
// boundary profile beta(xi1) as a = (Psi / r) e_phi, where the stream function
// Psi is the meridian antiderivative of beta r ds carried inward along normals
// and damped by a cutoff with vanishing normal derivative on the boundary.

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eulerslip/field.hpp"
#include "eulerslip/geometry.hpp"
#include "eulerslip/sampling.hpp"

namespace eulerslip {

inline constexpr double kAdmissibleTolerance = 1e-8;

enum class BetaBasis {
  /// sum_k c_k P_k(cos xi1)  (axis-to-axis meridians)
  legendre,
  /// c_0 + sum_k (c_{2k-1} cos k xi1 + c_{2k} sin k xi1)
  fourier,
  /// c_0 * exp(1 - 1 / (1 - s^2)) * (s - s0), s = (xi1 - center) / width, zero
  /// for |s| >= 1; s0 makes the bump zero-mean on its own support
  bump,
  /// (cos xi1 - cos center) * exp(alpha cos xi1), alpha chosen for zero mean;
  /// vanishes on exactly one parallel circle
  latitude_zero,
  custom,
};

std::string to_string(BetaBasis b);

struct BetaSpec {
  BetaBasis basis = BetaBasis::legendre;
  std::vector<double> coefficients;
  double center = 0.0;
  double width = 0.0;
  CurveFunction custom;  // basis == custom only
};

/// Zero-mean boundary profile beta(xi1) on a closed surface of revolution.
struct BoundaryScalar {
  CurveFunction beta;
  /// Weighted mean removed from the raw spec.
  double projection = 0.0;
  /// Weighted integral of beta r ds after projection (quadrature).
  double residual_mean = 0.0;

  template <typename T>
  T operator()(const T& xi1) const {
    return beta(xi1);
  }
};

/// Projects out the weighted mean. Throws DegenerateBetaError when nothing
/// is left, DomainError for charts that are not closed surfaces of revolution.
BoundaryScalar make_beta(const BetaSpec& spec, const SurfaceChart& chart);

/// Psi_G(xi1) = integral of beta r ds from the first meridian endpoint.
class StreamProfile {
 public:
  template <typename T>
  T operator()(const T& xi1) const;

  /// Value at the far meridian endpoint (zero when the profile closes).
  double closure() const;
  double integrand(double xi1) const { return integrand_at(xi1); }

  struct Data;
  explicit StreamProfile(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

 private:
  double value(double xi1) const;
  template <typename T>
  T integrand_at(const T& xi1) const;

  std::shared_ptr<const Data> data_;
};

/// Throws ConstraintViolationError if the integral fails to close to 1e-10,
/// RegularityError if Psi_G / r^2 is unbounded at an axis endpoint.
StreamProfile stream_from_beta(const SurfaceChart& chart, const BoundaryScalar& beta);

struct Certificate {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double tolerance = kAdmissibleTolerance;
  double max_divergence = 0.0;           // |div a| in the domain
  double max_normal_velocity = 0.0;      // |a . n| on the boundary
  double max_tangential_vorticity = 0.0; // |curl a x n| on the boundary
  /// max |b . n - beta| on the boundary; NaN without a boundary profile.
  double beta_fidelity = std::numeric_limits<double>::quiet_NaN();
  /// Surface integral of b . n over the boundary.
  double flux = std::numeric_limits<double>::quiet_NaN();
  /// Ball family: g'(R) R + 2 g(R); NaN otherwise.
  double constraint_residual = std::numeric_limits<double>::quiet_NaN();
  bool admissible = false;
};

struct AdmissibleField {
  AnalyticField a;
  AnalyticField b;         // curl a
  AnalyticField a_cross_b; // a x b
  Certificate certificate;
  std::string provenance;
  std::optional<BoundaryScalar> beta;

  bool admissible() const { return certificate.admissible; }
};

/// Wraps an arbitrary field with its vorticity; no certificate is computed.
AdmissibleField wrap_field(AnalyticField a, std::string provenance);

/// c * a with curl c b and (c a) x (c b) = c^2 (a x b). The certificate
/// residuals and beta scale exactly, so no new sampling is done.
AdmissibleField scale_admissible(const AdmissibleField& f, double c);

/// Maximum residuals of div a (domain), a . n and curl a x n (boundary).
Certificate check_admissible(const AnalyticField& f, const SurfaceChart& chart,
                             std::size_t samples, std::uint64_t seed = 1);

/// max |b . n - beta| over stratified boundary samples.
double beta_fidelity(const AdmissibleField& field, const SurfaceChart& chart, std::size_t samples,
                     std::uint64_t seed);

/// Integral of b . n over the boundary (Gauss-Legendre in xi1, trapezoid in xi2).
double boundary_flux(const AnalyticField& b, const SurfaceChart& chart);

/// Psi-construction. cutoff_width <= 0 selects 0.2 x focal distance.
AdmissibleField admissible_from_beta(const SurfaceChart& chart, const BoundaryScalar& beta,
                                     double cutoff_width = 0.0, std::size_t samples = 2000);

/// g(rho^2) profiles for the ball family a = g (-y, x, 0).
struct BallProfile {
  enum class Kind { polynomial, gaussian } kind = Kind::polynomial;
  /// polynomial: g = sum_k c_k rho^(2k); gaussian: g = c_0 exp(-c_1 rho^2)
  std::vector<double> coefficients{2.0, -1.0};

  template <typename T>
  T operator()(const T& rho2) const;
  /// g'(R) R + 2 g(R): zero exactly when curl a x n vanishes on the sphere.
  double constraint_residual(double radius) const;
  std::string tag() const;
};

AdmissibleField named_ball_field(const BallProfile& g, double radius = 1.0,
                                 std::size_t samples = 2000);

/// Flat control a = cos(z) (dpsi/dy, -dpsi/dx, 0), psi = sin(kx) sin(ky) / k^2,
/// k = 2 pi mode / period, on the slab chart of the same period.
AdmissibleField slab_field(double period, int mode = 1, std::size_t samples = 2000);

/// |beta(xi1)| > tol at each point.
std::vector<bool> lambda_set(const BoundaryScalar& beta, const std::vector<ChartPoint>& points,
                             double tol);

/// Smooth cutoff (1 - (d/w)^2)^3 on |d| < w; chi(0) = 1, chi'(0) = 0, C^2 at |d| = w.
template <typename T>
T cutoff(const T& d, double width) {
  const double s = value_of(d) / width;
  if (s * s >= 1.0) {
    return T(0.0);
  }
  const T q = 1.0 - (d / width) * (d / width);
  return q * q * q;
}

// template definitions -------------------------------------------------------

struct StreamProfile::Data {
  MeridianProfile profile;
  BoundaryScalar beta;
  double lo = 0.0;
  double hi = 0.0;
  bool periodic = false;
  std::vector<double> cumulative;  // integral from lo to panel starts
  double panel_width = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

template <typename T>
T StreamProfile::integrand_at(const T& xi1) const {
  const ProfileJet<T> j = data_->profile.jet(xi1);
  return data_->beta(xi1) * j.r * sqrt(j.dr * j.dr + j.dz * j.dz);
}

template <typename T>
T StreamProfile::operator()(const T& xi1) const {
  if constexpr (is_dual_v<T>) {
    using Inner = decltype(xi1.v);
    return T{(*this)(xi1.v), integrand_at<Inner>(xi1.v) * xi1.d};
  } else {
    return value(xi1);
  }
}

template <typename T>
T BallProfile::operator()(const T& rho2) const {
  if (kind == Kind::gaussian) {
    return coefficients.at(0) * exp(-coefficients.at(1) * rho2);
  }
  T acc(0.0);
  for (std::size_t k = coefficients.size(); k-- > 0;) {
    acc = acc * rho2 + coefficients[k];
  }
  return acc;
}

}  // namespace eulerslip
