#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

#include "eulerslip/construct.hpp"
#include "eulerslip/errors.hpp"
#include "eulerslip/quadrature.hpp"

using namespace eulerslip;

namespace {

// Composite Simpson on the meridian with the surface weight r s', independent
// of the Gauss-Legendre machinery used by the library.
template <typename F>
double simpson_meridian(const SurfaceChart& c, F&& f, int n = 20000) {
  const ParamRange r = c.natural_range1();
  const double h = (r.hi - r.lo) / n;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = r.lo + i * h;
    const auto j = c.profile().jet(t);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    acc += w * f(t) * j.r * std::sqrt(j.dr * j.dr + j.dz * j.dz);
  }
  return acc * h / 3.0;
}

BetaSpec legendre(std::vector<double> c) {
  BetaSpec s;
  s.basis = BetaBasis::legendre;
  s.coefficients = std::move(c);
  return s;
}

}  // namespace

TEST_CASE("make_beta projections") {
  const SurfaceChart sphere = SurfaceChart::sphere(1.0);
  const BoundaryScalar cos_beta = make_beta(legendre({0.0, 1.0}), sphere);
  CHECK(std::abs(cos_beta.projection) < 1e-15);
  CHECK(cos_beta(0.4) == doctest::Approx(std::cos(0.4)).epsilon(1e-15));

  CHECK_THROWS_AS(make_beta(legendre({1.0}), sphere), DegenerateBetaError);
  CHECK_THROWS_AS(make_beta(legendre({}), sphere), DegenerateBetaError);

  const SurfaceChart sp = SurfaceChart::spheroid(1.0, 2.0);
  const BoundaryScalar b = make_beta(legendre({0.3, 0.0, 1.0}), sp);
  const double raw_mean =
      simpson_meridian(sp, [](double t) { return 0.3 + 0.5 * (3 * std::cos(t) * std::cos(t) - 1); }) /
      simpson_meridian(sp, [](double) { return 1.0; });
  CHECK(b.projection == doctest::Approx(raw_mean).epsilon(1e-10));
  CHECK(std::abs(simpson_meridian(sp, [&](double t) { return b(t); })) <= 1e-12);
  CHECK(std::abs(b.residual_mean) <= 1e-12);

  CHECK_THROWS_AS(make_beta(legendre({0.0, 1.0}), SurfaceChart::cylinder(1.0, 2.0)), DomainError);
  CHECK_THROWS_AS(make_beta(legendre({0.0, 1.0}), SurfaceChart::slab(1.0)), DomainError);
}

TEST_CASE("bump and latitude profiles") {
  const SurfaceChart s = SurfaceChart::sphere(1.0);
  BetaSpec bump;
  bump.basis = BetaBasis::bump;
  bump.coefficients = {1.0};
  bump.center = 1.0;
  bump.width = 0.3;
  const BoundaryScalar b = make_beta(bump, s);
  CHECK(std::abs(simpson_meridian(s, [&](double t) { return b(t); })) <= 1e-12);
  std::vector<ChartPoint> pts;
  for (double t : {0.2, 0.6, 0.8, 1.2, 1.5, 2.5}) pts.push_back({t, 0.0, 0.0});
  const std::vector<bool> lam = lambda_set(b, pts, 1e-8);
  CHECK(lam == std::vector<bool>{false, false, true, true, false, false});

  BetaSpec lat;
  lat.basis = BetaBasis::latitude_zero;
  lat.center = 1.1;
  const BoundaryScalar l = make_beta(lat, s);
  CHECK(std::abs(l.projection) < 1e-10);
  CHECK(std::abs(l(1.1)) < 1e-10);
  // exactly one sign change along the meridian
  int changes = 0;
  for (int i = 1; i <= 1000; ++i) {
    const double t0 = kPi * (i - 1) / 1000, t1 = kPi * i / 1000;
    changes += (l(t0) > 0) != (l(t1) > 0);
  }
  CHECK(changes == 1);
  CHECK_THROWS_AS(make_beta(lat, SurfaceChart::torus(3.0, 1.0)), DomainError);

  bump.width = 0.0;
  CHECK_THROWS_AS(make_beta(bump, s), DomainError);
}

TEST_CASE("stream profile") {
  const SurfaceChart s = SurfaceChart::sphere(1.0);
  const StreamProfile psi = stream_from_beta(s, make_beta(legendre({0.0, 2.0}), s));
  for (double t : {0.1, 0.9, 1.6, 2.8}) {
    CHECK(psi(t) == doctest::Approx(std::sin(t) * std::sin(t)).epsilon(1e-13));
    const Dual1 d = psi(make_variable(t));
    CHECK(d.d == doctest::Approx(2 * std::sin(t) * std::cos(t)).epsilon(1e-13));
  }
  CHECK(std::abs(psi.closure()) < 1e-14);

  BoundaryScalar zero;
  zero.beta = CurveFunction::from("0", [](const auto& t) { return 0.0 * t; });
  const StreamProfile none = stream_from_beta(s, zero);
  CHECK(none(1.3) == 0.0);

  const SurfaceChart torus = SurfaceChart::torus(3.0, 1.0);
  BetaSpec f;
  f.basis = BetaBasis::fourier;
  f.coefficients = {0.0, 1.0, 0.5, 0.2};
  const StreamProfile tp = stream_from_beta(torus, make_beta(f, torus));
  CHECK(std::abs(tp.closure()) <= 1e-12);
  CHECK(tp(0.3) == doctest::Approx(tp(0.3 + 2 * kPi)).epsilon(1e-12));

  // A raw profile with nonzero mean does not close.
  BoundaryScalar raw;
  raw.beta = CurveFunction::from("1", [](const auto& t) { return 1.0 + 0.0 * t; });
  CHECK_THROWS_AS(stream_from_beta(s, raw), ConstraintViolationError);

  // beta ~ t^(-1/2) near the first pole: Psi / r^2 blows up there.
  BetaSpec singular;
  singular.basis = BetaBasis::custom;
  singular.custom = CurveFunction::from("inv_sqrt", [](const auto& t) { return 1.0 / sqrt(t); });
  CHECK_THROWS_AS(stream_from_beta(s, make_beta(singular, s)), RegularityError);
}

TEST_CASE("ball family") {
  const AdmissibleField f = named_ball_field(BallProfile{}, 1.0, 2000);
  CHECK(f.admissible());
  CHECK(f.certificate.constraint_residual == 0.0);
  CHECK(f.certificate.beta_fidelity <= 1e-12);
  CHECK(std::abs(f.certificate.flux) <= 1e-10);
  const oracle::BallPolynomial g;
  for (const Vec3d& x : {Vec3d{0.3, -0.4, 0.2}, Vec3d{0.6, 0.0, -0.7}, Vec3d{-0.1, 0.5, 0.5}}) {
    CHECK(norm(f.a(x) - g.a(x)) < 1e-15);
    CHECK(norm(f.b(x) - g.b(x)) < 1e-14);
    CHECK(std::abs(divergence(f.a, x)) < 1e-15);
    CHECK(std::abs(divergence(f.b, x)) < 1e-12);
  }
  // b . n = 2 z on the unit sphere
  const Vec3d p = oracle::sphere_n(0.7, 1.9);
  CHECK(dot(f.b(p), p) == doctest::Approx(2 * p[2]).epsilon(1e-14));

  BallProfile gauss;
  gauss.kind = BallProfile::Kind::gaussian;
  gauss.coefficients = {1.0, 1.0};
  CHECK(std::abs(gauss.constraint_residual(1.0)) < 1e-15);
  CHECK(named_ball_field(gauss, 1.0, 1000).admissible());

  BallProfile rigid;
  rigid.coefficients = {1.0};
  const AdmissibleField r = named_ball_field(rigid, 1.0, 10000);
  CHECK_FALSE(r.admissible());
  CHECK(r.certificate.max_tangential_vorticity == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(r.certificate.max_tangential_vorticity <= 2.0);
  CHECK(r.certificate.constraint_residual == 2.0);

  // Rescaled profile on a ball of radius 2: g = 8 - rho^2 satisfies g'(R) R + 2 g(R) = 0.
  BallProfile big;
  big.coefficients = {8.0, -1.0};
  CHECK(named_ball_field(big, 2.0, 1000).admissible());
}

TEST_CASE("psi construction certificate") {
  const SurfaceChart sp = SurfaceChart::spheroid(1.0, 2.0);
  const AdmissibleField f = admissible_from_beta(sp, make_beta(legendre({0.3, 0.0, 1.0}), sp));
  CHECK(f.admissible());
  CHECK(f.certificate.max_divergence <= 1e-9);
  CHECK(f.certificate.max_normal_velocity <= 1e-9);
  CHECK(f.certificate.max_tangential_vorticity <= 1e-9);
  CHECK(f.certificate.beta_fidelity <= 1e-9);
  CHECK(std::abs(f.certificate.flux) <= 1e-10);
  const Certificate fresh = check_admissible(f.a, sp, 2000, 99);
  CHECK(fresh.admissible);

  // The sphere member with beta = 2 cos matches the ball field on the boundary.
  const SurfaceChart s = SurfaceChart::sphere(1.0);
  const AdmissibleField ps = admissible_from_beta(s, make_beta(legendre({0.0, 2.0}), s));
  const AdmissibleField ball = named_ball_field(BallProfile{}, 1.0, 100);
  for (double t : {0.3, 1.2, 2.2}) {
    const Vec3d x = oracle::sphere_n(t, 0.8);
    CHECK(norm(ps.a(x) - ball.a(x)) < 1e-12);
    CHECK(dot(ps.b(x), x) == doctest::Approx(2 * std::cos(t)).epsilon(1e-12));
  }

  CHECK_THROWS_AS(admissible_from_beta(s, make_beta(legendre({0.0, 1.0}), s), 1.5),
                  DegenerateCoordinatesError);
}

TEST_CASE("torus and non-admissible controls") {
  const SurfaceChart t = SurfaceChart::torus(3.0, 1.0);
  BetaSpec f;
  f.basis = BetaBasis::fourier;
  f.coefficients = {0.0, 1.0, 0.5};
  const AdmissibleField a = admissible_from_beta(t, make_beta(f, t));
  CHECK(a.admissible());

  const AdmissibleField zero = wrap_field(zero_field(), "zero");
  CHECK(check_admissible(zero.a, t, 500, 1).admissible);

  const AdmissibleField slab = slab_field(2 * kPi, 1, 2000);
  CHECK(slab.admissible());
}

TEST_CASE("cutoff") {
  CHECK(cutoff(0.0, 0.5) == 1.0);
  CHECK(cutoff(0.5, 0.5) == 0.0);
  CHECK(cutoff(-0.7, 0.5) == 0.0);
  const Dual1 d = cutoff(make_variable(0.0), 0.5);
  CHECK(d.d == 0.0);
  const double x = 0.2;
  CHECK(cutoff(x, 0.5) == doctest::Approx(std::pow(1 - 0.16, 3)).epsilon(1e-15));
}

TEST_CASE("scaling an admissible field") {
  const AdmissibleField f = named_ball_field(BallProfile{}, 1.0, 500);
  const AdmissibleField g = scale_admissible(f, -3.0);
  const Vec3d x{0.2, 0.3, 0.4};
  CHECK(norm(g.a(x) + 3.0 * f.a(x)) < 1e-15);
  CHECK(norm(g.b(x) + 3.0 * f.b(x)) < 1e-14);
  CHECK(norm(g.a_cross_b(x) - 9.0 * f.a_cross_b(x)) < 1e-13);
  CHECK(g.admissible());
  CHECK(g.beta.has_value());
  CHECK((*g.beta)(0.5) == doctest::Approx(-3.0 * (*f.beta)(0.5)));
  CHECK_FALSE(scale_admissible(f, 0.0).admissible());
}
