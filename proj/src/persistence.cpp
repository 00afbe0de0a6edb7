#include "eulerslip/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

#include "eulerslip/errors.hpp"
#include "eulerslip/sampling.hpp"

namespace eulerslip {

namespace {

// Static contiguous chunks; each index is written by exactly one worker, so
// results are independent of the worker count.
template <typename F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) {
      body(i);
    }
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t lo = n * w / workers;
      const std::size_t hi = n * (w + 1) / workers;
      try {
        for (std::size_t i = lo; i < hi; ++i) {
          body(i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

void require_admissible(const AdmissibleField& field) {
  if (!field.admissible()) {
    const Certificate& c = field.certificate;
    std::ostringstream os;
    os << "field '" << field.provenance << "' is not admissible (samples=" << c.samples
       << ", max|div a|=" << c.max_divergence << ", max|a.n|=" << c.max_normal_velocity
       << ", max|curl a x n|=" << c.max_tangential_vorticity << ", tol=" << c.tolerance << ")";
    throw PreconditionError(os.str());
  }
}

double b3_at(const AdmissibleField& field, const BoundaryFrame& f) {
  return dot(field.b(f.position), f.n);
}

}  // namespace

std::string to_string(Verdict v) {
  return v == Verdict::persistence_fails ? "persistence_fails" : "inconclusive";
}

Vec3d identity_lhs(const AdmissibleField& field, const Vec3d& x, const BoundaryFrame& frame) {
  return cross(curl(field.a_cross_b, x), frame.n);
}

Vec3d identity_lhs_curvilinear(const AdmissibleField& field, const SurfaceChart& chart, double xi1,
                               double xi2, double step) {
  const AnalyticField& ab = field.a_cross_b;
  const PointFunction pf = [&ab](const Vec3d& x) { return ab(x); };
  const CurvilinearStencil s = sample_stencil(chart, pf, xi1, xi2, 0.0, {step, step, step});
  const FrameComponents w = curl_curvilinear(s);
  const BoundaryFrame f = surface_frame(chart, xi1, xi2);
  return from_frame({w.v2, -w.v1, 0.0}, f);
}

Vec3d identity_rhs(const FrameComponents& a_comp, double b3, const BoundaryFrame& frame) {
  return -2.0 * b3 *
         (frame.kappa2 * a_comp.v2 * frame.i1 - frame.kappa1 * a_comp.v1 * frame.i2);
}

Vec3d persistence_rate(const AdmissibleField& field, const Vec3d& x, const BoundaryFrame& frame) {
  return identity_lhs(field, x, frame);
}

IdentitySample evaluate_identity(const AdmissibleField& field, const SurfaceChart& chart,
                                 double xi1, double xi2) {
  IdentitySample s;
  s.frame = surface_frame(chart, xi1, xi2);
  const Vec3d& x = s.frame.position;
  s.a_comp = to_frame(field.a(x), s.frame);
  s.b_comp = to_frame(field.b(x), s.frame);
  s.lhs = identity_lhs(field, x, s.frame);
  s.rhs = identity_rhs(s.a_comp, s.b_comp.v3, s.frame);
  s.deviation = norm(s.lhs - s.rhs);
  return s;
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("EULERSLIP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return static_cast<unsigned>(v);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ScanReport verify_identity(const AdmissibleField& field, const SurfaceChart& chart,
                           std::size_t samples, std::uint64_t seed, const ScanTolerances& tol,
                           unsigned threads) {
  require_admissible(field);
  if (samples == 0) {
    throw DomainError("sample count must be >= 1");
  }
  const auto points = stratified_boundary_samples(chart, samples, seed);
  ScanReport report;
  report.samples.resize(points.size());
  parallel_for(points.size(), threads == 0 ? default_thread_count() : threads,
               [&](std::size_t i) {
                 report.samples[i] = evaluate_identity(field, chart, points[i].xi1, points[i].xi2);
               });
  for (const IdentitySample& s : report.samples) {
    report.max_deviation = std::max(report.max_deviation, s.deviation);
  }
  report.provenance = {chart.tag(), field.provenance, tol, samples, seed};
  return report;
}

ScanReport criterion_scan(const AdmissibleField& field, const SurfaceChart& chart,
                          std::size_t samples, std::uint64_t seed, const ScanTolerances& tol,
                          unsigned threads) {
  ScanReport report = verify_identity(field, chart, samples, seed, tol, threads);
  for (const IdentitySample& s : report.samples) {
    const double a = std::hypot(s.a_comp.v1, s.a_comp.v2, s.a_comp.v3);
    report.field_scale = std::max(report.field_scale, a);
  }
  report.criterion_threshold = tol.criterion * report.field_scale * report.field_scale;
  const double d2 = chart.diameter() * chart.diameter();
  std::size_t flagged = 0;
  bool fails = false;
  for (IdentitySample& s : report.samples) {
    const BoundaryFrame& f = s.frame;
    const double lhs = norm(s.lhs);
    const double b3 = s.b_comp.v3;
    SampleFlags& fl = s.flags;
    fl.in_sigma = std::abs(f.kappa1 * f.kappa2) * d2 > tol.sigma;
    fl.in_lambda = std::abs(b3) > tol.lambda;
    fl.in_k = lhs > report.criterion_threshold;
    fl.criterion_holds = fl.in_k;
    fl.corollary = std::max(std::abs(b3 * f.kappa1 * s.a_comp.v1),
                            std::abs(b3 * f.kappa2 * s.a_comp.v2)) >
                   0.5 * report.criterion_threshold;
    fl.certified = fl.criterion_holds && lhs > 10.0 * s.deviation;
    flagged += fl.criterion_holds ? 1 : 0;
    fails = fails || fl.certified;
  }
  report.fraction_flagged = static_cast<double>(flagged) / static_cast<double>(samples);
  report.verdict = fails ? Verdict::persistence_fails : Verdict::inconclusive;
  return report;
}

PropositionResult proposition_witness(const AdmissibleField& field, const SurfaceChart& chart,
                                      double xi1, double xi2, const std::vector<double>& radii,
                                      double step, double b3_tol, double witness_tol) {
  const BoundaryFrame f0 = surface_frame(chart, xi1, xi2);
  PropositionResult out;
  out.b3_exact = b3_at(field, f0);
  if (!(std::abs(out.b3_exact) > b3_tol)) {
    std::ostringstream os;
    os << "|b3(x0)| = " << std::abs(out.b3_exact) << " does not exceed " << b3_tol;
    throw PreconditionError(os.str());
  }

  auto tangential = [&](double u, double v) {
    const BoundaryFrame f = surface_frame(chart, u, v);
    const FrameComponents a = to_frame(field.a(f.position), f);
    return std::make_pair(f, a);
  };

  // Offsets in the parameter plane scaled to stay inside the radius.
  const double angles = 8.0;
  const std::array<double, 4> fractions{0.0, 0.25, 0.5, 0.9};
  out.all_found = true;
  for (double radius : radii) {
    Witness w;
    w.radius = radius;
    for (double frac : fractions) {
      for (int k = 0; k < (frac == 0.0 ? 1 : 8) && !w.found; ++k) {
        const double ang = 2.0 * kPi * k / angles;
        const double u = xi1 + frac * radius * std::cos(ang) / f0.h1;
        const double v = xi2 + frac * radius * std::sin(ang) / f0.h2;
        const ParamRange r1 = chart.range(1);
        if (!r1.periodic && (u < r1.lo || u > r1.hi)) {
          continue;
        }
        const auto [f, a] = tangential(u, v);
        const double dist = norm(f.position - f0.position);
        if (dist > radius) {
          continue;
        }
        const int j = std::abs(a.v1) >= std::abs(a.v2) ? 1 : 2;
        const double aj = j == 1 ? a.v1 : a.v2;
        if (std::abs(aj) > witness_tol) {
          w = {radius, true, u, v, dist, j, aj};
        }
      }
      if (w.found) {
        break;
      }
    }
    out.all_found = out.all_found && w.found;
    out.witnesses.push_back(w);
  }

  const ParamRange r1 = chart.range(1);
  if (!r1.periodic && (xi1 - step < r1.lo || xi1 + step > r1.hi)) {
    throw DomainError("surface-curl stencil leaves the chart along xi1");
  }
  auto h2a2 = [&](double u) {
    const auto [f, a] = tangential(u, xi2);
    return f.h2 * a.v2;
  };
  auto h1a1 = [&](double v) {
    const auto [f, a] = tangential(xi1, v);
    return f.h1 * a.v1;
  };
  out.b3_surface_curl = ((h2a2(xi1 + step) - h2a2(xi1 - step)) -
                         (h1a1(xi2 + step) - h1a1(xi2 - step))) /
                        (2.0 * step * f0.h1 * f0.h2);
  return out;
}

std::map<std::string, double> proof_step_residuals(const AdmissibleField& field,
                                                   const SurfaceChart& chart, double xi1,
                                                   double xi2, double step) {
  const BoundaryFrame f = surface_frame(chart, xi1, xi2);
  const Vec3d& x = f.position;
  const FrameComponents a = to_frame(field.a(x), f);
  const FrameComponents b = to_frame(field.b(x), f);

  std::map<std::string, double> r;
  r["a3"] = a.v3;
  r["b1"] = b.v1;
  r["b2"] = b.v2;

  const ParamRange r1 = chart.range(1);
  if (!r1.periodic && (xi1 - step < r1.lo || xi1 + step > r1.hi)) {
    throw DomainError("tangential stencil leaves the chart along xi1");
  }
  struct Boundary {
    double a3, b1, b2;
  };
  auto at = [&](double u, double v) {
    const BoundaryFrame g = surface_frame(chart, u, v);
    return Boundary{dot(field.a(g.position), g.n), dot(field.b(g.position), g.i1),
                    dot(field.b(g.position), g.i2)};
  };
  const Boundary up1 = at(xi1 + step, xi2);
  const Boundary dn1 = at(xi1 - step, xi2);
  const Boundary up2 = at(xi1, xi2 + step);
  const Boundary dn2 = at(xi1, xi2 - step);
  const double inv = 1.0 / (2.0 * step);
  r["d1_a3"] = (up1.a3 - dn1.a3) * inv;
  r["d2_a3"] = (up2.a3 - dn2.a3) * inv;
  r["d1_b1"] = (up1.b1 - dn1.b1) * inv;
  r["d2_b1"] = (up2.b1 - dn2.b1) * inv;
  r["d1_b2"] = (up1.b2 - dn1.b2) * inv;
  r["d2_b2"] = (up2.b2 - dn2.b2) * inv;

  // The frame is constant along normal lines, so d(v . i_j)/dxi3 = (dv/dn) . i_j
  // and dh_j/dxi3 = kappa_j h_j.
  const Vec3d da = directional_derivative(field.a, x, f.n);
  const Vec3d db = directional_derivative(field.b, x, f.n);
  r["normal_a1"] = dot(da, f.i1) + f.kappa1 * a.v1;
  r["normal_a2"] = dot(da, f.i2) + f.kappa2 * a.v2;
  r["normal_b3"] = dot(db, f.n) + (f.kappa1 + f.kappa2) * b.v3;

  const Vec3d c = curl(field.a_cross_b, x);
  r["curl_ab_1"] = dot(c, f.i1) + 2.0 * f.kappa1 * a.v1 * b.v3;
  r["curl_ab_2"] = dot(c, f.i2) + 2.0 * f.kappa2 * a.v2 * b.v3;
  return r;
}

NavierStressGap navier_stress_gap(const AdmissibleField& field, const Vec3d& x,
                                  const BoundaryFrame& frame, const Vec3d& tau, double nu) {
  if (std::abs(norm(tau) - 1.0) > 1e-10) {
    throw DomainError("tau must be a unit vector");
  }
  if (std::abs(dot(tau, frame.n)) > 1e-10) {
    throw DomainError("tau must be tangent to the boundary");
  }
  const double t1 = dot(tau, frame.i1);
  const double t2 = dot(tau, frame.i2);
  const double k_tau = frame.kappa1 * t1 * t1 + frame.kappa2 * t2 * t2;
  NavierStressGap g;
  g.slip_term = 0.5 * nu * dot(cross(field.b(x), frame.n), tau);
  g.curvature_term = nu * k_tau * dot(field.a(x), tau);
  return g;
}

}  // namespace eulerslip
