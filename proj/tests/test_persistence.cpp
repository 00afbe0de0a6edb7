#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "eulerslip/errors.hpp"
#include "eulerslip/persistence.hpp"
#include "eulerslip/report.hpp"

using namespace eulerslip;

namespace {

AdmissibleField ball() { return named_ball_field(BallProfile{}, 1.0, 2000); }

AdmissibleField spheroid_field(const SurfaceChart& c) {
  BetaSpec s;
  s.basis = BetaBasis::legendre;
  s.coefficients = {0.3, 0.0, 1.0};
  return admissible_from_beta(c, make_beta(s, c));
}

AdmissibleField zero() {
  AdmissibleField z = wrap_field(zero_field(), "zero");
  z.certificate = check_admissible(z.a, SurfaceChart::sphere(1.0), 100, 1);
  return z;
}

}  // namespace

TEST_CASE("identity right-hand side arithmetic") {
  BoundaryFrame f;
  f.i1 = {1.0, 0.0, 0.0};
  f.i2 = {0.0, 1.0, 0.0};
  f.n = {0.0, 0.0, 1.0};
  f.kappa1 = 1.0;
  f.kappa2 = 2.0;
  const Vec3d r = identity_rhs({1.0, 0.0, 5.0}, 1.0, f);
  CHECK(norm(r - Vec3d{0.0, 2.0, 0.0}) == 0.0);
  CHECK(norm(identity_rhs({3.0, -4.0, 1.0}, 0.0, f)) == 0.0);
}

TEST_CASE("ball field left-hand side against the closed form") {
  const SurfaceChart s = SurfaceChart::sphere(1.0);
  const AdmissibleField f = ball();
  const oracle::BallPolynomial g;
  const oracle::VecFn ab = [&](const Vec3d& x) { return cross(g.a(x), g.b(x)); };
  std::mt19937_64 eng(2024);
  for (int i = 0; i < 20; ++i) {
    const double t = 0.01 + (kPi - 0.02) * unit_uniform(eng);
    const double p = 2 * kPi * unit_uniform(eng);
    const BoundaryFrame fr = surface_frame(s, t, p);
    const Vec3d lhs = identity_lhs(f, fr.position, fr);
    const Vec3d expect = -2.0 * std::sin(2 * t) * oracle::sphere_i1(t, p);
    CHECK(norm(lhs - expect) <= 1e-12);
    // hand-written fields differenced without dual numbers
    const Vec3d fd = cross(oracle::fd_curl(ab, fr.position, 1e-3), oracle::sphere_n(t, p));
    CHECK(norm(lhs - fd) <= 1e-9);
    CHECK(std::abs(dot(lhs, fr.n)) <= 1e-10);
    const IdentitySample smp = evaluate_identity(f, s, t, p);
    CHECK(smp.deviation <= 1e-12);
    CHECK(smp.b_comp.v3 == doctest::Approx(2 * std::cos(t)).epsilon(1e-13));
    CHECK(smp.a_comp.v2 == doctest::Approx(std::sin(t)).epsilon(1e-13));
  }
  const BoundaryFrame q = surface_frame(s, kPi / 4, 0.3);
  CHECK(norm(persistence_rate(f, q.position, q)) == doctest::Approx(2.0).epsilon(1e-13));
  const BoundaryFrame e = surface_frame(s, kPi / 2, 0.3);
  CHECK(norm(persistence_rate(f, e.position, e)) <= 1e-14);
  CHECK(norm(identity_lhs(zero(), q.position, q)) == 0.0);
}

TEST_CASE("finite-difference route converges to the identity") {
  const SurfaceChart s = SurfaceChart::spheroid(1.0, 2.0);
  const AdmissibleField f = spheroid_field(s);
  const IdentitySample ref = evaluate_identity(f, s, 1.0, 0.4);
  std::vector<double> err;
  for (int k = 0; k < 5; ++k) {
    err.push_back(norm(identity_lhs_curvilinear(f, s, 1.0, 0.4, 0.01 / (1 << k)) - ref.rhs));
  }
  CHECK(oracle::observed_order(err) >= 1.9);
}

TEST_CASE("verify_identity") {
  const SurfaceChart s = SurfaceChart::sphere(1.0);
  const ScanReport r = verify_identity(ball(), s, 10000, 5);
  CHECK(r.samples.size() == 10000);
  CHECK(r.max_deviation <= 1e-9);
  CHECK(r.identity_passes());
  CHECK(r.provenance.seed == 5);

  const SurfaceChart sp = SurfaceChart::spheroid(1.0, 2.0);
  const ScanReport rs = verify_identity(spheroid_field(sp), sp, 2000, 5);
  CHECK(rs.max_deviation <= 1e-8);
  for (const IdentitySample& x : rs.samples) {
    REQUIRE(std::abs(dot(x.lhs, x.frame.n)) <= 1e-10);
    REQUIRE(std::abs(dot(x.rhs, x.frame.n)) <= 1e-10);
  }

  BallProfile rigid;
  rigid.coefficients = {1.0};
  CHECK_THROWS_AS(verify_identity(named_ball_field(rigid, 1.0, 500), s, 100, 1), PreconditionError);
  CHECK_THROWS_AS(verify_identity(ball(), s, 0, 1), DomainError);

  ScanTolerances tight;
  tight.identity = 1e-15;
  CHECK_FALSE(verify_identity(ball(), s, 10000, 5, tight).identity_passes());
}

TEST_CASE("criterion scan verdicts") {
  const SurfaceChart s = SurfaceChart::sphere(1.0);
  const ScanReport r = criterion_scan(ball(), s, 4000, 8);
  CHECK(r.verdict == Verdict::persistence_fails);
  CHECK(r.fraction_flagged >= 0.9);
  CHECK(r.field_scale == doctest::Approx(1.0).epsilon(1e-6));
  for (const IdentitySample& x : r.samples) {
    if (!x.flags.in_k) {
      const double t = x.frame.xi1;
      CHECK(std::min({t, std::abs(t - kPi / 2), kPi - t}) < 0.05);
    }
    REQUIRE(x.flags.in_sigma);
    if (x.flags.in_k) {
      REQUIRE(x.flags.in_lambda);
    }
  }

  const SurfaceChart slab = SurfaceChart::slab(2 * kPi);
  const ScanReport q = criterion_scan(slab_field(2 * kPi, 1, 1000), slab, 2000, 8);
  CHECK(q.verdict == Verdict::inconclusive);
  CHECK(q.fraction_flagged == 0.0);
  for (const IdentitySample& x : q.samples) {
    REQUIRE(norm(x.lhs) <= 1e-8);
    REQUIRE_FALSE(x.flags.in_sigma);
  }
}

TEST_CASE("torus scan flags only where curvature and beta are both nonzero") {
  const SurfaceChart t = SurfaceChart::torus(3.0, 1.0);
  BetaSpec spec;
  spec.basis = BetaBasis::bump;
  spec.coefficients = {1.0};
  spec.center = 0.0;  // outer equator
  spec.width = 0.8;
  const AdmissibleField f = admissible_from_beta(t, make_beta(spec, t));
  REQUIRE(f.admissible());
  const ScanReport r = criterion_scan(f, t, 3000, 4);
  CHECK(r.verdict == Verdict::persistence_fails);
  std::size_t flagged = 0;
  for (const IdentitySample& x : r.samples) {
    if (x.flags.in_k) {
      ++flagged;
      REQUIRE(x.flags.in_sigma);
      REQUIRE(x.flags.in_lambda);
      const double u = std::remainder(x.frame.xi1, 2 * kPi);
      REQUIRE(std::abs(u) < 0.8);
      REQUIRE(x.frame.gaussian() > 0.0);
    }
  }
  CHECK(flagged > 0);
}

TEST_CASE("scans are independent of the worker count") {
  const SurfaceChart s = SurfaceChart::spheroid(1.0, 2.0);
  const AdmissibleField f = spheroid_field(s);
  const std::string one = to_json(criterion_scan(f, s, 500, 3, {}, 1), true).dump();
  for (unsigned n : {2u, 3u, 8u}) {
    CHECK(to_json(criterion_scan(f, s, 500, 3, {}, n), true).dump() == one);
  }
}

TEST_CASE("both identity sides scale quadratically") {
  const SurfaceChart s = SurfaceChart::spheroid(1.0, 2.0);
  const AdmissibleField f = spheroid_field(s);
  const IdentitySample base = evaluate_identity(f, s, 0.9, 1.7);
  for (double c : {2.0, -1.0, 10.0}) {
    const IdentitySample x = evaluate_identity(scale_admissible(f, c), s, 0.9, 1.7);
    CHECK(norm(x.lhs - c * c * base.lhs) <= 1e-10 * c * c * norm(base.lhs));
    CHECK(norm(x.rhs - c * c * base.rhs) <= 1e-10 * c * c * norm(base.rhs));
  }
}

TEST_CASE("proposition witness and surface curl") {
  const SurfaceChart s = SurfaceChart::sphere(1.0);
  const AdmissibleField f = ball();
  const PropositionResult p = proposition_witness(f, s, kPi / 4, 0.5, {1e-1, 1e-2, 1e-3});
  CHECK(p.all_found);
  for (const Witness& w : p.witnesses) {
    CHECK(w.distance <= w.radius);
    CHECK(std::abs(w.value) > 1e-9);
  }
  CHECK(p.b3_exact == doctest::Approx(2 * std::cos(kPi / 4)).epsilon(1e-13));
  std::vector<double> err;
  for (int k = 0; k < 4; ++k) {
    const double h = 1e-2 / (1 << k);
    err.push_back(std::abs(proposition_witness(f, s, 1.0, 0.5, {1e-2}, h).b3_surface_curl -
                           2 * std::cos(1.0)));
  }
  CHECK(oracle::observed_order(err) >= 1.9);
  CHECK_THROWS_AS(proposition_witness(zero(), s, 1.0, 0.5, {1e-2}), PreconditionError);
}

TEST_CASE("proof-step residuals") {
  const SurfaceChart s = SurfaceChart::sphere(1.0);
  const AdmissibleField f = ball();
  const oracle::BallPolynomial g;
  for (double t : {0.3, 1.0, 2.0}) {
    const auto r = proof_step_residuals(f, s, t, 0.2);
    for (const auto& [k, v] : r) {
      CAPTURE(k);
      CHECK(std::abs(v) <= 1e-8);
    }
    // d b3 / d xi3 along the radius from the hand-written b: -(kappa1 + kappa2) b3 = -4 cos t
    const Vec3d n = oracle::sphere_n(t, 0.2);
    const double h = 1e-4;
    auto b3 = [&](double rho) { return dot(g.b(rho * n), n); };
    const double db3 = (b3(1 + h) - b3(1 - h)) / (2 * h);
    CHECK(db3 == doctest::Approx(-4.0 * std::cos(t)).epsilon(1e-7));
  }
  for (const auto& [k, v] : proof_step_residuals(zero(), s, 1.0, 1.0)) {
    CHECK(v == 0.0);
  }
}

TEST_CASE("Navier stress gap") {
  const SurfaceChart s = SurfaceChart::sphere(1.0);
  const AdmissibleField f = ball();
  const BoundaryFrame e = surface_frame(s, kPi / 2, 0.0);
  const NavierStressGap g = navier_stress_gap(f, e.position, e, e.i2, 1.0);
  CHECK(std::abs(g.slip_term) <= 1e-14);
  CHECK(g.curvature_term == doctest::Approx(1.0).epsilon(1e-14));

  const SurfaceChart slab = SurfaceChart::slab(2 * kPi);
  const BoundaryFrame p = surface_frame(slab, 0.4, 1.1);
  CHECK(navier_stress_gap(slab_field(2 * kPi), p.position, p, p.i1, 2.0).curvature_term == 0.0);

  const SurfaceChart cyl = SurfaceChart::cylinder(1.0, 2.0);
  const BoundaryFrame c = surface_frame(cyl, 0.2, 0.5);
  const AdmissibleField swirl = wrap_field(
      AnalyticField::from("rot", [](const auto& x) {
        using T = std::decay_t<decltype(x[0])>;
        return Vec3<T>{-x[1] + x[2], x[0], T(0.0)};
      }),
      "rot");
  CHECK(std::abs(navier_stress_gap(swirl, c.position, c, c.i1, 1.0).curvature_term) <= 1e-15);

  CHECK_THROWS_AS(navier_stress_gap(f, e.position, e, 2.0 * e.i1, 1.0), DomainError);
  CHECK_THROWS_AS(navier_stress_gap(f, e.position, e, e.n, 1.0), DomainError);
}
