#pragma once

// Boundary identity and persistence-failure scans.
//
// For an admissible a with b = curl a, on the boundary
//     curl(a x b) x n = -2 b3 (kappa2 a2 i1 - kappa1 a1 i2).
// The left side is evaluated in Cartesian coordinates by exact
// differentiation; the right side from frame components and curvatures.
// A nonzero left side at t = 0 is the rate at which omega x n leaves zero
// under Euler evolution, so any such point breaks persistence.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eulerslip/construct.hpp"
#include "eulerslip/curvcalc.hpp"
#include "eulerslip/geometry.hpp"

namespace eulerslip {

struct SampleFlags {
  bool in_sigma = false;       // |kappa1 kappa2| > sigma tol
  bool in_lambda = false;      // |b3| > lambda tol
  bool in_k = false;           // |curl(a x b) x n| > criterion threshold
  bool criterion_holds = false;
  bool corollary = false;      // max_j |b3 kappa_j a_j| above half the threshold
  bool certified = false;      // criterion margin exceeds 10x the identity deviation
};

struct IdentitySample {
  BoundaryFrame frame;
  FrameComponents a_comp;
  FrameComponents b_comp;
  Vec3d lhs;
  Vec3d rhs;
  double deviation = 0.0;
  SampleFlags flags;
};

struct ScanTolerances {
  double identity = 1e-8;    // max |lhs - rhs| for the identity check
  double criterion = 1e-6;   // relative to (max boundary |a|)^2
  double sigma = 1e-8;       // on |kappa1 kappa2| * diameter^2
  double lambda = 1e-8;      // on |b3|
};

enum class Verdict { persistence_fails, inconclusive };

std::string to_string(Verdict v);

struct ScanProvenance {
  std::string chart;
  std::string field;
  ScanTolerances tolerances;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

struct ScanReport {
  std::vector<IdentitySample> samples;
  double max_deviation = 0.0;
  double field_scale = 0.0;        // max boundary |a|
  double criterion_threshold = 0.0;
  double fraction_flagged = 0.0;   // fraction with criterion_holds
  Verdict verdict = Verdict::inconclusive;
  ScanProvenance provenance;

  bool identity_passes() const { return max_deviation <= provenance.tolerances.identity; }
};

/// curl(a x b)(x) x n, exact route.
Vec3d identity_lhs(const AdmissibleField& field, const Vec3d& x, const BoundaryFrame& frame);

/// curl(a x b) x n from the curvilinear stencil of a x b around (xi1, xi2, 0)
/// with the same step in all three coordinates. Second order in `step`; used
/// for convergence studies, never for verification.
Vec3d identity_lhs_curvilinear(const AdmissibleField& field, const SurfaceChart& chart, double xi1,
                               double xi2, double step);

/// -2 b3 (kappa2 a2 i1 - kappa1 a1 i2) as a Cartesian vector.
Vec3d identity_rhs(const FrameComponents& a_comp, double b3, const BoundaryFrame& frame);

/// d/dt (omega x n) at t = 0 under Euler evolution from `field`.
Vec3d persistence_rate(const AdmissibleField& field, const Vec3d& x, const BoundaryFrame& frame);

/// Both identity sides at one boundary point (flags left unset).
IdentitySample evaluate_identity(const AdmissibleField& field, const SurfaceChart& chart,
                                 double xi1, double xi2);

/// Worker count from EULERSLIP_THREADS, else hardware concurrency.
unsigned default_thread_count();

/// Throws PreconditionError for non-admissible fields. Pass threads = 0 for
/// the default. Results do not depend on the thread count.
ScanReport verify_identity(const AdmissibleField& field, const SurfaceChart& chart,
                           std::size_t samples, std::uint64_t seed,
                           const ScanTolerances& tol = {}, unsigned threads = 0);

/// verify_identity plus membership flags and the persistence verdict.
ScanReport criterion_scan(const AdmissibleField& field, const SurfaceChart& chart,
                          std::size_t samples, std::uint64_t seed,
                          const ScanTolerances& tol = {}, unsigned threads = 0);

struct Witness {
  double radius = 0.0;
  bool found = false;
  double xi1 = 0.0;
  double xi2 = 0.0;
  double distance = 0.0;  // |x_n - x_0|
  int component = 0;      // 1 or 2
  double value = 0.0;     // a_j(x_n)
};

struct PropositionResult {
  std::vector<Witness> witnesses;
  bool all_found = false;
  double b3_exact = 0.0;         // b . n at x0
  double b3_surface_curl = 0.0;  // (1/(h1 h2)) (d(h2 a2)/dxi1 - d(h1 a1)/dxi2), central differences
};

/// For each radius, a boundary point within it where a1 or a2 exceeds
/// witness_tol. Throws PreconditionError when |b3(x0)| <= b3_tol.
PropositionResult proposition_witness(const AdmissibleField& field, const SurfaceChart& chart,
                                      double xi1, double xi2, const std::vector<double>& radii,
                                      double step = 1e-4, double b3_tol = 1e-6,
                                      double witness_tol = 1e-9);

/// Residuals of each intermediate step of the boundary identity:
///   a3, b1, b2 and their tangential derivatives;
///   normal_a1 = da1/dxi3 + (a1/h1) dh1/dxi3 (and normal_a2);
///   normal_b3 = db3/dxi3 + (kappa1 + kappa2) b3;
///   curl_ab_1 = [curl(a x b)]_1 + 2 kappa1 a1 b3 (and curl_ab_2).
/// Normal derivatives are exact; tangential ones use central differences.
std::map<std::string, double> proof_step_residuals(const AdmissibleField& field,
                                                   const SurfaceChart& chart, double xi1,
                                                   double xi2, double step = 1e-4);

struct NavierStressGap {
  double slip_term = 0.0;       // (nu/2) (omega x n) . tau
  double curvature_term = 0.0;  // nu K_tau (u . tau)
};

/// K_tau = kappa1 (tau.i1)^2 + kappa2 (tau.i2)^2. tau must be a unit tangent.
NavierStressGap navier_stress_gap(const AdmissibleField& field, const Vec3d& x,
                                  const BoundaryFrame& frame, const Vec3d& tau, double nu);

}  // namespace eulerslip
