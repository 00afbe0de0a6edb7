#include "eulerslip/construct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "eulerslip/errors.hpp"
#include "eulerslip/quadrature.hpp"

namespace eulerslip {

namespace {

constexpr int kStreamPanels = 128;
constexpr int kGaussOrder = 20;

void require_closed_revolution(const SurfaceChart& chart, const char* what) {
  if (!chart.closed()) {
    throw DomainError(std::string(what) + " needs a closed surface of revolution, got '" +
                      chart.tag() + "'");
  }
}

// integral of f(t) r(t) s'(t) over the whole meridian
template <typename F>
double meridian_integral(const SurfaceChart& chart, F&& f) {
  const MeridianProfile& p = chart.profile();
  const ParamRange nat = chart.natural_range1();
  return integrate(
      [&](double t) {
        const auto j = p.jet(t);
        return f(t) * j.r * std::sqrt(j.dr * j.dr + j.dz * j.dz);
      },
      nat.lo, nat.hi, 256, kGaussOrder);
}

CurveFunction legendre_series(std::vector<double> c) {
  return CurveFunction::from("legendre", [c](const auto& t) {
    using T = std::decay_t<decltype(t)>;
    const T u = cos(t);
    T p0(1.0);
    T p1 = u;
    T acc = c.empty() ? T(0.0) : c[0] * p0;
    for (std::size_t k = 1; k < c.size(); ++k) {
      if (k > 1) {
        const double kk = static_cast<double>(k);
        const T p2 = ((2.0 * kk - 1.0) * u * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      acc += c[k] * p1;
    }
    return acc;
  });
}

CurveFunction fourier_series(std::vector<double> c) {
  return CurveFunction::from("fourier", [c](const auto& t) {
    using T = std::decay_t<decltype(t)>;
    T acc = c.empty() ? T(0.0) : T(c[0]);
    for (std::size_t i = 1; i < c.size(); ++i) {
      const double k = static_cast<double>((i + 1) / 2);
      acc += c[i] * (i % 2 == 1 ? cos(k * t) : sin(k * t));
    }
    return acc;
  });
}

// Bump times (s - s0), with s0 the weighted centroid of the bump: zero mean
// by itself, so projection leaves the support (and hence Lambda) unchanged.
CurveFunction bump(const SurfaceChart& chart, double amplitude, double center, double width) {
  if (!(width > 0.0)) {
    throw DomainError("bump width must be positive");
  }
  auto profile = [=](double t) {
    const double s = (t - center) / width;
    return s * s >= 1.0 ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - s * s));
  };
  const double mass = meridian_integral(chart, profile);
  if (!(mass > 0.0)) {
    throw DegenerateBetaError("bump support misses the meridian");
  }
  const double s0 =
      meridian_integral(chart, [&](double t) { return profile(t) * (t - center) / width; }) / mass;
  return CurveFunction::from("bump", [=](const auto& t) {
    using T = std::decay_t<decltype(t)>;
    const T s = (t - center) / width;
    const double sv = value_of(s);
    if (sv * sv >= 1.0) {
      return T(0.0);
    }
    return amplitude * exp(1.0 - 1.0 / (1.0 - s * s)) * (s - s0);
  });
}

CurveFunction latitude_zero(const SurfaceChart& chart, double center) {
  if (chart.profile().kind != ProfileKind::pole_fourier) {
    throw DomainError("latitude_zero needs an axis-to-axis meridian");
  }
  if (!(center > 0.0 && center < kPi)) {
    throw DomainError("latitude_zero center must lie in (0, pi)");
  }
  const double c = std::cos(center);
  auto mean = [&](double alpha) {
    return meridian_integral(chart, [&](double t) {
      return (std::cos(t) - c) * std::exp(alpha * std::cos(t));
    });
  };
  double lo = -1.0;
  double hi = 1.0;
  while (mean(lo) > 0.0 && lo > -700.0) {
    lo *= 2.0;
  }
  while (mean(hi) < 0.0 && hi < 700.0) {
    hi *= 2.0;
  }
  if (mean(lo) > 0.0 || mean(hi) < 0.0) {
    throw DegenerateBetaError("no zero-mean weight exists for this latitude");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (mean(mid) > 0.0 ? hi : lo) = mid;
  }
  const double alpha = 0.5 * (lo + hi);
  return CurveFunction::from("latitude_zero", [c, alpha](const auto& t) {
    return (cos(t) - c) * exp(alpha * cos(t));
  });
}

CurveFunction raw_beta(const BetaSpec& spec, const SurfaceChart& chart) {
  switch (spec.basis) {
    case BetaBasis::legendre:
      return legendre_series(spec.coefficients);
    case BetaBasis::fourier:
      return fourier_series(spec.coefficients);
    case BetaBasis::bump:
      return bump(chart, spec.coefficients.empty() ? 1.0 : spec.coefficients[0], spec.center,
                  spec.width);
    case BetaBasis::latitude_zero:
      return latitude_zero(chart, spec.center);
    case BetaBasis::custom:
      if (!spec.custom) {
        throw DomainError("custom beta without a function");
      }
      return spec.custom;
  }
  throw DomainError("unknown beta basis");
}

double foot_parameter(const MeridianProfile& p, const ParamRange& nat, double rho, double z) {
  constexpr int kGrid = 96;
  double best = nat.lo;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double t = nat.lo + (nat.hi - nat.lo) * i / kGrid;
    const auto j = p.jet(t);
    const double d2 = (rho - j.r) * (rho - j.r) + (z - j.z) * (z - j.z);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = t;
    }
  }
  double t = best;
  for (int it = 0; it < 50; ++it) {
    const auto j = p.jet(t);
    const double g = (rho - j.r) * j.dr + (z - j.z) * j.dz;
    const double dg = -(j.dr * j.dr + j.dz * j.dz) + (rho - j.r) * j.ddr + (z - j.z) * j.ddz;
    const double step = g / dg;
    t -= step;
    if (!nat.periodic) {
      t = std::clamp(t, nat.lo, nat.hi);
    }
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(t))) {
      break;
    }
  }
  return t;
}

}  // namespace

std::string to_string(BetaBasis b) {
  switch (b) {
    case BetaBasis::legendre:
      return "legendre";
    case BetaBasis::fourier:
      return "fourier";
    case BetaBasis::bump:
      return "bump";
    case BetaBasis::latitude_zero:
      return "latitude_zero";
    case BetaBasis::custom:
      return "custom";
  }
  return "unknown";
}

BoundaryScalar make_beta(const BetaSpec& spec, const SurfaceChart& chart) {
  require_closed_revolution(chart, "make_beta");
  const CurveFunction raw = raw_beta(spec, chart);
  const double area = meridian_integral(chart, [](double) { return 1.0; });
  const double mean = meridian_integral(chart, [&](double t) { return raw(t); }) / area;

  BoundaryScalar out;
  out.projection = mean;
  out.beta = CurveFunction::from(
      raw.tag(), [raw, mean](const auto& t) { return raw(t) - mean; }, raw.depth());

  const ParamRange nat = chart.natural_range1();
  double raw_max = 0.0;
  double max_abs = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double t = nat.lo + (nat.hi - nat.lo) * (i + 0.5) / 2000.0;
    raw_max = std::max(raw_max, std::abs(raw(t)));
    max_abs = std::max(max_abs, std::abs(out.beta(t)));
  }
  if (!(max_abs > 1e-12 * std::max(raw_max, 1e-300)) || max_abs == 0.0) {
    throw DegenerateBetaError("beta vanishes identically after removing its mean");
  }
  out.residual_mean = meridian_integral(chart, [&](double t) { return out.beta(t); });
  return out;
}

double StreamProfile::value(double xi1) const {
  const Data& d = *data_;
  double t = xi1;
  if (d.periodic) {
    const double period = d.hi - d.lo;
    t = d.lo + std::fmod(t - d.lo, period);
    if (t < d.lo) {
      t += period;
    }
  }
  int k = static_cast<int>(std::floor((t - d.lo) / d.panel_width));
  k = std::clamp(k, 0, kStreamPanels - 1);
  const double a = d.lo + k * d.panel_width;
  double piece = 0.0;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    piece += d.weights[i] * integrand_at(a + 0.5 * (t - a) * (d.nodes[i] + 1.0));
  }
  return d.cumulative[k] + 0.5 * (t - a) * piece;
}

double StreamProfile::closure() const { return data_->cumulative.back(); }

StreamProfile stream_from_beta(const SurfaceChart& chart, const BoundaryScalar& beta) {
  require_closed_revolution(chart, "stream_from_beta");
  auto data = std::make_shared<StreamProfile::Data>();
  data->profile = chart.profile();
  data->beta = beta;
  const ParamRange nat = chart.natural_range1();
  data->lo = nat.lo;
  data->hi = nat.hi;
  data->periodic = nat.periodic;
  data->panel_width = (nat.hi - nat.lo) / kStreamPanels;
  const GaussRule& g = gauss_legendre(kGaussOrder);
  data->nodes = g.nodes;
  data->weights = g.weights;

  StreamProfile probe(data);
  data->cumulative.assign(kStreamPanels + 1, 0.0);
  double scale = 0.0;
  for (int k = 0; k < kStreamPanels; ++k) {
    const double a = nat.lo + k * data->panel_width;
    double panel = 0.0;
    double panel_abs = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double f = probe.integrand(a + 0.5 * data->panel_width * (g.nodes[i] + 1.0));
      panel += g.weights[i] * f;
      panel_abs += g.weights[i] * std::abs(f);
    }
    data->cumulative[k + 1] = data->cumulative[k] + 0.5 * data->panel_width * panel;
    scale += 0.5 * data->panel_width * panel_abs;
  }

  StreamProfile stream(data);
  const double closure = stream.closure();
  if (chart.profile().kind == ProfileKind::pole_fourier) {
    const MeridianProfile& p = chart.profile();
    for (bool north : {true, false}) {
      auto ratio = [&](double eps) {
        const double t = north ? nat.lo + eps : nat.hi - eps;
        const double r = p.jet(t).r;
        return (stream(t) - (north ? 0.0 : closure)) / (r * r);
      };
      const double coarse = ratio(1e-2);
      const double fine = ratio(1e-5);
      if (!std::isfinite(coarse) || !std::isfinite(fine) ||
          std::abs(fine) > 4.0 * std::abs(coarse) + 1e-8) {
        throw RegularityError(std::string("Psi / r^2 is unbounded at the ") +
                              (north ? "first" : "second") + " axis point");
      }
    }
  }
  if (std::abs(closure) > 1e-10 * std::max(1.0, scale)) {
    std::ostringstream os;
    os << "stream profile does not close: Psi(end) = " << closure;
    throw ConstraintViolationError(os.str());
  }
  return stream;
}

static std::string format_scale(double c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", c);
  return buf;
}

AdmissibleField wrap_field(AnalyticField a, std::string provenance) {
  AdmissibleField f;
  f.b = curl_field(a);
  f.a_cross_b = cross_field(a, f.b);
  f.a = std::move(a);
  f.provenance = std::move(provenance);
  return f;
}

AdmissibleField scale_admissible(const AdmissibleField& f, double c) {
  AdmissibleField out = wrap_field(scaled_field(f.a, c), format_scale(c) + "*" + f.provenance);
  Certificate cert = f.certificate;
  const double s = std::abs(c);
  cert.max_divergence *= s;
  cert.max_normal_velocity *= s;
  cert.max_tangential_vorticity *= s;
  cert.beta_fidelity *= s;
  cert.flux *= c;
  cert.constraint_residual *= c;
  cert.admissible = c != 0.0 && cert.max_divergence <= cert.tolerance &&
                    cert.max_normal_velocity <= cert.tolerance &&
                    cert.max_tangential_vorticity <= cert.tolerance &&
                    !(cert.beta_fidelity > cert.tolerance) &&
                    !(std::abs(cert.constraint_residual) > cert.tolerance);
  out.certificate = cert;
  if (f.beta) {
    BoundaryScalar beta = *f.beta;
    const CurveFunction inner = beta.beta;
    beta.beta = CurveFunction::from(
        inner.tag(), [inner, c](const auto& t) { return c * inner(t); }, inner.depth());
    beta.projection *= c;
    beta.residual_mean *= c;
    out.beta = beta;
  }
  return out;
}

Certificate check_admissible(const AnalyticField& f, const SurfaceChart& chart,
                             std::size_t samples, std::uint64_t seed) {
  Certificate c;
  c.samples = samples;
  c.seed = seed;
  const auto boundary = stratified_boundary_samples(chart, samples, seed);
  for (const ChartPoint& p : boundary) {
    const BoundaryFrame fr = surface_frame(chart, p.xi1, p.xi2);
    const Vec3d a = f(fr.position);
    const Vec3d w = curl(f, fr.position);
    c.max_normal_velocity = std::max(c.max_normal_velocity, std::abs(dot(a, fr.n)));
    c.max_tangential_vorticity = std::max(c.max_tangential_vorticity, norm(cross(w, fr.n)));
  }
  double depth = 0.5 * chart.diameter();
  if (std::isfinite(chart.focal_distance())) {
    depth = std::min(depth, 0.9 * chart.focal_distance());
  }
  const auto interior = stratified_interior_samples(chart, samples, seed ^ 0x9e3779b97f4a7c15ULL,
                                                    depth);
  for (const ChartPoint& p : interior) {
    const ParallelPoint q = parallel_point(chart, p.xi1, p.xi2, p.xi3);
    c.max_divergence = std::max(c.max_divergence, std::abs(divergence(f, q.position)));
  }
  c.admissible = c.max_divergence <= c.tolerance && c.max_normal_velocity <= c.tolerance &&
                 c.max_tangential_vorticity <= c.tolerance;
  return c;
}

double beta_fidelity(const AdmissibleField& field, const SurfaceChart& chart, std::size_t samples,
                     std::uint64_t seed) {
  if (!field.beta) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  double worst = 0.0;
  for (const ChartPoint& p : stratified_boundary_samples(chart, samples, seed)) {
    const BoundaryFrame fr = surface_frame(chart, p.xi1, p.xi2);
    const double bn = dot(field.b(fr.position), fr.n);
    worst = std::max(worst, std::abs(bn - (*field.beta)(p.xi1)));
  }
  return worst;
}

double boundary_flux(const AnalyticField& b, const SurfaceChart& chart) {
  constexpr int kAzimuth = 64;
  if (chart.kind() == ChartKind::slab) {
    const double period = chart.range(1).hi;
    const double h = period / kAzimuth;
    double acc = 0.0;
    for (int i = 0; i < kAzimuth; ++i) {
      for (int j = 0; j < kAzimuth; ++j) {
        acc += b(Vec3d{i * h, j * h, 0.0})[2];
      }
    }
    return acc * h * h;
  }
  const ParamRange nat = chart.natural_range1();
  const double dphi = 2.0 * kPi / kAzimuth;
  return integrate(
      [&](double t) {
        double ring = 0.0;
        for (int k = 0; k < kAzimuth; ++k) {
          const double phi = k * dphi;
          const Vec3<Dual1> pu = chart.position(Dual1{t, 1.0}, Dual1{phi, 0.0});
          const Vec3<Dual1> pv = chart.position(Dual1{t, 0.0}, Dual1{phi, 1.0});
          const Vec3d x = value_of(pu);
          const Vec3d area = cross(Vec3d{pu[0].d, pu[1].d, pu[2].d}, Vec3d{pv[0].d, pv[1].d, pv[2].d});
          ring += dot(b(x), area);
        }
        return ring * dphi;
      },
      nat.lo, nat.hi, 32, kGaussOrder);
}

AdmissibleField admissible_from_beta(const SurfaceChart& chart, const BoundaryScalar& beta,
                                     double cutoff_width, std::size_t samples) {
  require_closed_revolution(chart, "admissible_from_beta");
  const double focal = chart.focal_distance();
  const double width = cutoff_width > 0.0 ? cutoff_width : 0.2 * focal;
  if (!(width < focal)) {
    throw DegenerateCoordinatesError("cutoff width reaches the focal distance");
  }
  const StreamProfile stream = stream_from_beta(chart, beta);
  const MeridianProfile profile = chart.profile();
  const ParamRange nat = chart.natural_range1();

  AnalyticField a = AnalyticField::from(
      "psi_field[" + beta.beta.tag() + "]", [=](const auto& x) {
        using T = std::decay_t<decltype(x[0])>;
        const T r2 = x[0] * x[0] + x[1] * x[1];
        const T rho = sqrt(r2);
        const T& z = x[2];
        // Foot point on the meridian: solve in double, then refine in T so
        // the derivatives of the implicit map are carried exactly.
        T t(foot_parameter(profile, nat, value_of(rho), value_of(z)));
        for (int it = 0; it < 3; ++it) {
          const ProfileJet<T> j = profile.jet(t);
          const T g = (rho - j.r) * j.dr + (z - j.z) * j.dz;
          const T dg = (rho - j.r) * j.ddr + (z - j.z) * j.ddz - (j.dr * j.dr + j.dz * j.dz);
          t = t - g / dg;
        }
        const ProfileJet<T> j = profile.jet(t);
        const T signed_distance =
            ((z - j.z) * j.dr - (rho - j.r) * j.dz) / sqrt(j.dr * j.dr + j.dz * j.dz);
        const T chi = cutoff(signed_distance, width);
        if (value_of(chi) == 0.0) {
          return Vec3<T>{T(0.0), T(0.0), T(0.0)};
        }
        const T k = stream(t) * chi / r2;
        return Vec3<T>{-k * x[1], k * x[0], T(0.0)};
      });

  AdmissibleField f = wrap_field(std::move(a), "beta:" + beta.beta.tag());
  f.beta = beta;
  f.certificate = check_admissible(f.a, chart, samples, 0);
  f.certificate.beta_fidelity = beta_fidelity(f, chart, samples, 0);
  f.certificate.flux = boundary_flux(f.b, chart);
  return f;
}

double BallProfile::constraint_residual(double radius) const {
  const double r2 = radius * radius;
  if (kind == Kind::gaussian) {
    return coefficients.at(0) * std::exp(-coefficients.at(1) * r2) *
           (2.0 - 2.0 * coefficients.at(1) * r2);
  }
  double acc = 0.0;
  double pw = 1.0;
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    acc += (2.0 * k + 2.0) * coefficients[k] * pw;
    pw *= r2;
  }
  return acc;
}

std::string BallProfile::tag() const {
  std::ostringstream os;
  os << (kind == Kind::gaussian ? "gaussian" : "polynomial") << "[";
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    os << (i ? "," : "") << coefficients[i];
  }
  os << "]";
  return os.str();
}

AdmissibleField named_ball_field(const BallProfile& g, double radius, std::size_t samples) {
  const SurfaceChart sphere = SurfaceChart::sphere(radius);
  AnalyticField a = AnalyticField::from("ball:" + g.tag(), [g](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    const T s = g(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    return Vec3<T>{-s * x[1], s * x[0], T(0.0)};
  });
  AdmissibleField f = wrap_field(std::move(a), "ball:" + g.tag());
  // On the sphere b . n = 2 g(R) cos(xi1) whether or not the field is admissible.
  const double boundary_g = g(radius * radius);
  BoundaryScalar beta;
  beta.beta = CurveFunction::from("2g(R)cos", [boundary_g](const auto& t) {
    return (2.0 * boundary_g) * cos(t);
  });
  f.beta = beta;
  f.certificate = check_admissible(f.a, sphere, samples, 0);
  f.certificate.constraint_residual = g.constraint_residual(radius);
  f.certificate.beta_fidelity = beta_fidelity(f, sphere, samples, 0);
  f.certificate.flux = boundary_flux(f.b, sphere);
  f.certificate.admissible =
      f.certificate.admissible &&
      std::abs(f.certificate.constraint_residual) <= f.certificate.tolerance;
  return f;
}

AdmissibleField slab_field(double period, int mode, std::size_t samples) {
  if (mode < 1) {
    throw DomainError("slab mode must be >= 1");
  }
  const SurfaceChart slab = SurfaceChart::slab(period);
  const double k = 2.0 * kPi * mode / period;
  AnalyticField a = AnalyticField::from("slab:" + std::to_string(mode), [k](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    const T f = cos(x[2]);
    const T psi_x = cos(k * x[0]) * sin(k * x[1]) / k;
    const T psi_y = sin(k * x[0]) * cos(k * x[1]) / k;
    return Vec3<T>{f * psi_y, -(f * psi_x), T(0.0)};
  });
  AdmissibleField f = wrap_field(std::move(a), "slab:" + std::to_string(mode));
  f.certificate = check_admissible(f.a, slab, samples, 0);
  f.certificate.flux = boundary_flux(f.b, slab);
  return f;
}

std::vector<bool> lambda_set(const BoundaryScalar& beta, const std::vector<ChartPoint>& points,
                             double tol) {
  std::vector<bool> mask(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    mask[i] = std::abs(beta(points[i].xi1)) > tol;
  }
  return mask;
}

}  // namespace eulerslip
