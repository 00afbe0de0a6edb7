#include "eulerslip/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eulerslip {

namespace {

constexpr double kDegenerateTangent = 1e-14;
constexpr double kTwoPi = 2.0 * kPi;

// Surface derivatives from one nested-dual evaluation per pair of directions.
struct SurfaceJet {
  Vec3d x;
  Vec3d xu, xv;
  Vec3d xuu, xuv, xvv;
};

Vec3d second_mixed(const SurfaceChart& chart, double u, double v, double du_out, double dv_out,
                   double du_in, double dv_in, Vec3d* inner) {
  const Dual2 U{Dual1{u, du_in}, Dual1{du_out, 0.0}};
  const Dual2 V{Dual1{v, dv_in}, Dual1{dv_out, 0.0}};
  const Vec3<Dual2> p = chart.position(U, V);
  if (inner != nullptr) {
    *inner = {p[0].v.d, p[1].v.d, p[2].v.d};
  }
  return {p[0].d.d, p[1].d.d, p[2].d.d};
}

SurfaceJet surface_jet(const SurfaceChart& chart, double u, double v) {
  SurfaceJet j;
  j.x = chart.position(u, v);
  j.xuu = second_mixed(chart, u, v, 1.0, 0.0, 1.0, 0.0, &j.xu);
  j.xvv = second_mixed(chart, u, v, 0.0, 1.0, 0.0, 1.0, &j.xv);
  j.xuv = second_mixed(chart, u, v, 1.0, 0.0, 0.0, 1.0, nullptr);
  return j;
}

template <typename T>
Vec3<T> unit_normal(const SurfaceChart& chart, const T& u, const T& v) {
  const Vec3<Dual<T>> pu = chart.position(Dual<T>{u, T(1.0)}, Dual<T>{v, T(0.0)});
  const Vec3<Dual<T>> pv = chart.position(Dual<T>{u, T(0.0)}, Dual<T>{v, T(1.0)});
  const Vec3<T> xu{pu[0].d, pu[1].d, pu[2].d};
  const Vec3<T> xv{pv[0].d, pv[1].d, pv[2].d};
  const Vec3<T> nn = cross(xu, xv);
  return nn / norm(nn);
}


// Signed area of the meridian region, traversal counter-clockwise in (r, z) > 0.
double signed_meridian_area(const MeridianProfile& p, double a, double b) {
  constexpr int kPanels = 2048;
  const double h = (b - a) / kPanels;
  double acc = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    const double t = a + (i + 0.5) * h;
    const auto j = p.jet(t);
    acc += 0.5 * (j.r * j.dz - j.z * j.dr) * h;
  }
  return acc;
}

}  // namespace

std::string to_string(ChartKind kind) {
  switch (kind) {
    case ChartKind::sphere:
      return "sphere";
    case ChartKind::spheroid:
      return "spheroid";
    case ChartKind::torus:
      return "torus";
    case ChartKind::revolution:
      return "revolution";
    case ChartKind::slab:
      return "slab";
  }
  return "unknown";
}

std::string to_string(PointClass c) {
  switch (c) {
    case PointClass::generic:
      return "generic";
    case PointClass::umbilical:
      return "umbilical";
    case PointClass::planar:
      return "planar";
  }
  return "unknown";
}

MeridianProfile MeridianProfile::reversed() const {
  MeridianProfile out = *this;
  switch (kind) {
    case ProfileKind::pole_fourier:
      // t -> pi - t
      for (std::size_t i = 0; i < out.r_coef.size(); ++i) {
        if ((i + 1) % 2 == 0) {
          out.r_coef[i] = -out.r_coef[i];
        }
      }
      for (std::size_t i = 0; i < out.z_coef.size(); ++i) {
        if (i % 2 == 1) {
          out.z_coef[i] = -out.z_coef[i];
        }
      }
      break;
    case ProfileKind::loop:
      // t -> -t flips every sine coefficient
      for (std::size_t i = 2; i < out.r_coef.size(); i += 2) {
        out.r_coef[i] = -out.r_coef[i];
      }
      for (std::size_t i = 2; i < out.z_coef.size(); i += 2) {
        out.z_coef[i] = -out.z_coef[i];
      }
      break;
    case ProfileKind::line: {
      // t -> t_min + t_max - t
      const double s = t_min + t_max;
      out.r_coef = {r_coef[0] + r_coef[1] * s, -r_coef[1]};
      out.z_coef = {z_coef[0] + z_coef[1] * s, -z_coef[1]};
      break;
    }
  }
  return out;
}

SurfaceChart SurfaceChart::sphere(double radius, double pole_band) {
  if (!(radius > 0.0)) {
    throw DomainError("sphere radius must be positive");
  }
  SurfaceChart c = revolution({ProfileKind::pole_fourier, {radius}, {0.0, radius}}, pole_band);
  c.kind_ = ChartKind::sphere;
  c.params_ = {radius};
  return c;
}

SurfaceChart SurfaceChart::spheroid(double equatorial, double polar, double pole_band) {
  if (!(equatorial > 0.0) || !(polar > 0.0)) {
    throw DomainError("spheroid semi-axes must be positive");
  }
  SurfaceChart c = revolution({ProfileKind::pole_fourier, {equatorial}, {0.0, polar}}, pole_band);
  c.kind_ = ChartKind::spheroid;
  c.params_ = {equatorial, polar};
  return c;
}

SurfaceChart SurfaceChart::torus(double major, double minor) {
  if (!(minor > 0.0) || !(major > minor)) {
    throw DomainError("torus requires major > minor > 0");
  }
  SurfaceChart c = revolution({ProfileKind::loop, {major, minor, 0.0}, {0.0, 0.0, -minor}});
  c.kind_ = ChartKind::torus;
  c.params_ = {major, minor};
  return c;
}

SurfaceChart SurfaceChart::cylinder(double radius, double height) {
  if (!(radius > 0.0) || !(height > 0.0)) {
    throw DomainError("cylinder radius and height must be positive");
  }
  SurfaceChart c = revolution(
      {ProfileKind::line, {radius, 0.0}, {0.0, -1.0}, -0.5 * height, 0.5 * height});
  c.params_ = {radius, height};
  return c;
}

SurfaceChart SurfaceChart::revolution(MeridianProfile profile, double pole_band) {
  SurfaceChart c;
  c.kind_ = ChartKind::revolution;
  switch (profile.kind) {
    case ProfileKind::pole_fourier: {
      if (profile.r_coef.empty() || profile.z_coef.size() < 2) {
        throw DomainError("pole_fourier profile needs r and z coefficients");
      }
      if (!(pole_band > 0.0) || pole_band >= 0.5 * kPi) {
        throw DomainError("pole band must lie in (0, pi/2)");
      }
      for (int i = 1; i < 512; ++i) {
        const double t = kPi * i / 512.0;
        if (!(profile.jet(t).r > 0.0)) {
          throw DomainError("profile crosses the symmetry axis between the poles");
        }
      }
      if (signed_meridian_area(profile, 0.0, kPi) > 0.0) {
        profile = profile.reversed();
      }
      c.range1_ = {pole_band, kPi - pole_band, false};
      c.pole_band_ = pole_band;
      break;
    }
    case ProfileKind::loop: {
      if (profile.r_coef.empty() || profile.z_coef.empty()) {
        throw DomainError("loop profile needs r and z coefficients");
      }
      for (int i = 0; i < 512; ++i) {
        if (!(profile.jet(kTwoPi * i / 512.0).r > 0.0)) {
          throw DomainError("loop profile touches the symmetry axis");
        }
      }
      if (signed_meridian_area(profile, 0.0, kTwoPi) > 0.0) {
        profile = profile.reversed();
      }
      c.range1_ = {0.0, kTwoPi, true};
      break;
    }
    case ProfileKind::line: {
      if (profile.r_coef.size() != 2 || profile.z_coef.size() != 2 ||
          !(profile.t_max > profile.t_min)) {
        throw DomainError("line profile needs two r, two z coefficients and t_min < t_max");
      }
      const double mid = 0.5 * (profile.t_min + profile.t_max);
      for (double t : {profile.t_min, mid, profile.t_max}) {
        if (!(profile.jet(t).r > 0.0)) {
          throw DomainError("line profile touches the symmetry axis");
        }
      }
      // Outward normal (-z', r') / s' must point away from the axis.
      if (profile.jet(mid).dz > 0.0) {
        profile = profile.reversed();
      }
      c.range1_ = {profile.t_min, profile.t_max, false};
      break;
    }
  }
  c.range2_ = {0.0, kTwoPi, true};
  c.profile_ = std::move(profile);
  c.finalize();
  return c;
}

SurfaceChart SurfaceChart::slab(double period) {
  if (!(period > 0.0)) {
    throw DomainError("slab period must be positive");
  }
  SurfaceChart c;
  c.kind_ = ChartKind::slab;
  c.params_ = {period};
  c.period_ = period;
  c.range1_ = {0.0, period, true};
  c.range2_ = {0.0, period, true};
  c.finalize();
  return c;
}

void SurfaceChart::finalize() {
  if (kind_ == ChartKind::slab) {
    diameter_ = period_;
    return;
  }
  const ParamRange nat = natural_range1();
  constexpr int kScan = 1024;
  double rmax = 0.0;
  double zmin = std::numeric_limits<double>::infinity();
  double zmax = -zmin;
  double kmax = 0.0;
  double kmin = 0.0;
  for (int i = 0; i <= kScan; ++i) {
    const double t = nat.lo + (nat.hi - nat.lo) * i / kScan;
    const auto j = profile_->jet(t);
    rmax = std::max(rmax, j.r);
    zmin = std::min(zmin, j.z);
    zmax = std::max(zmax, j.z);
    const double tc = std::clamp(t, range1_.lo, range1_.hi);
    const BoundaryFrame f = surface_frame(*this, tc, 0.0);
    kmax = std::max({kmax, f.kappa1, f.kappa2});
    kmin = std::min({kmin, f.kappa1, f.kappa2});
  }
  diameter_ = std::max(2.0 * rmax, zmax - zmin);
  focal_in_ = kmax > 0.0 ? 1.0 / kmax : std::numeric_limits<double>::infinity();
  focal_out_ = kmin < 0.0 ? -1.0 / kmin : std::numeric_limits<double>::infinity();
}

std::string SurfaceChart::tag() const {
  std::ostringstream os;
  os << to_string(kind_) << "(";
  for (std::size_t i = 0; i < params_.size(); ++i) {
    os << (i ? ", " : "") << params_[i];
  }
  os << ")";
  return os.str();
}

const MeridianProfile& SurfaceChart::profile() const {
  if (!profile_) {
    throw DomainError("chart '" + tag() + "' is not a surface of revolution");
  }
  return *profile_;
}

bool SurfaceChart::closed() const {
  return profile_.has_value() && profile_->kind != ProfileKind::line;
}

ParamRange SurfaceChart::natural_range1() const {
  if (profile_ && profile_->kind == ProfileKind::pole_fourier) {
    return {0.0, kPi, false};
  }
  return range1_;
}

void SurfaceChart::check_params(double xi1, double xi2) const {
  auto check = [](const ParamRange& r, double x, const char* name) {
    if (!std::isfinite(x)) {
      throw DomainError(std::string(name) + " is not finite");
    }
    if (!r.periodic && (x < r.lo || x > r.hi)) {
      std::ostringstream os;
      os << name << " = " << x << " outside [" << r.lo << ", " << r.hi << "]";
      throw DomainError(os.str());
    }
  };
  check(range1_, xi1, "xi1");
  check(range2_, xi2, "xi2");
}

BoundaryFrame surface_frame(const SurfaceChart& chart, double xi1, double xi2) {
  chart.check_params(xi1, xi2);
  const SurfaceJet j = surface_jet(chart, xi1, xi2);
  BoundaryFrame f;
  f.xi1 = xi1;
  f.xi2 = xi2;
  f.position = j.x;
  f.h1 = norm(j.xu);
  f.h2 = norm(j.xv);
  if (f.h1 < kDegenerateTangent || f.h2 < kDegenerateTangent) {
    throw SingularChartError("degenerate tangent at (" + std::to_string(xi1) + ", " +
                             std::to_string(xi2) + ")");
  }
  f.i1 = j.xu / f.h1;
  f.i2 = j.xv / f.h2;
  if (std::abs(dot(f.i1, f.i2)) > 1e-10) {
    throw DomainError("coordinate lines of '" + chart.tag() + "' are not orthogonal");
  }
  f.n = cross(f.i1, f.i2);
  // Second fundamental form with the outward normal; sign makes convex positive.
  const double ell = dot(j.xuu, f.n);
  const double em = dot(j.xuv, f.n);
  const double en = dot(j.xvv, f.n);
  if (std::abs(em) > 1e-10 * f.h1 * f.h2 * (1.0 + std::abs(ell) + std::abs(en))) {
    throw DomainError("coordinate lines of '" + chart.tag() + "' are not lines of curvature");
  }
  f.kappa1 = -ell / (f.h1 * f.h1);
  f.kappa2 = -en / (f.h2 * f.h2);
  return f;
}

ParallelPoint parallel_point(const BoundaryFrame& frame, double xi3) {
  const double s1 = 1.0 + frame.kappa1 * xi3;
  const double s2 = 1.0 + frame.kappa2 * xi3;
  if (!(s1 > 0.0) || !(s2 > 0.0)) {
    std::ostringstream os;
    os << "xi3 = " << xi3 << " reaches a focal point (1 + kappa xi3 = " << std::min(s1, s2)
       << ")";
    throw DegenerateCoordinatesError(os.str());
  }
  return {frame.position + xi3 * frame.n, frame.h1 * s1, frame.h2 * s2};
}

ParallelPoint parallel_point(const SurfaceChart& chart, double xi1, double xi2, double xi3) {
  return parallel_point(surface_frame(chart, xi1, xi2), xi3);
}

CurvaturePair curvatures_via_kapa(const SurfaceChart& chart, double xi1, double xi2,
                                  double delta) {
  chart.check_params(xi1, xi2);
  const double limit = 0.1 * std::min(chart.focal_distance(), chart.outward_focal_distance());
  if (!(delta > 0.0) || (std::isfinite(limit) && !(delta < limit))) {
    throw DomainError("probe step must lie in (0, 0.1 * focal distance)");
  }
  // dn/dxi_j from differentiating the unit normal field exactly.
  const Vec3<Dual1> nu = unit_normal(chart, Dual1{xi1, 1.0}, Dual1{xi2, 0.0});
  const Vec3<Dual1> nv = unit_normal(chart, Dual1{xi1, 0.0}, Dual1{xi2, 1.0});
  const Vec3d dn1{nu[0].d, nu[1].d, nu[2].d};
  const Vec3d dn2{nv[0].d, nv[1].d, nv[2].d};
  const Vec3<Dual1> pu = chart.position(Dual1{xi1, 1.0}, Dual1{xi2, 0.0});
  const Vec3<Dual1> pv = chart.position(Dual1{xi1, 0.0}, Dual1{xi2, 1.0});
  const Vec3d x1{pu[0].d, pu[1].d, pu[2].d};
  const Vec3d x2{pv[0].d, pv[1].d, pv[2].d};

  auto kappa = [delta](const Vec3d& xj, const Vec3d& dnj) {
    const Dual1 xi3{0.0, 1.0};
    const Vec3<Dual1> tangent = lift<Dual1>(xj) + xi3 * lift<Dual1>(dnj);
    const Dual1 h = norm(tangent);
    if (h.v < kDegenerateTangent) {
      throw SingularChartError("degenerate tangent in parallel-scale law");
    }
    const double k = h.d / h.v;
    const double h_probe = norm(xj + delta * dnj);
    if (std::abs(h_probe - h.v * (1.0 + k * delta)) > 1e-9 * h.v) {
      throw DomainError("scale factor is not linear in xi3: coordinate lines are not lines of curvature");
    }
    return k;
  };
  return {kappa(x1, dn1), kappa(x2, dn2)};
}

PointClass classify_point(const BoundaryFrame& frame, double tol, double length_scale) {
  const double d = std::abs(frame.kappa1 - frame.kappa2) * length_scale;
  if (d > tol) {
    return PointClass::generic;
  }
  const double m = std::max(std::abs(frame.kappa1), std::abs(frame.kappa2)) * length_scale;
  return m <= tol ? PointClass::planar : PointClass::umbilical;
}

bool sigma_membership(const BoundaryFrame& frame, double tol) {
  return std::abs(frame.kappa1 * frame.kappa2) > tol;
}

}  // namespace eulerslip
