#include "distpot/neumann.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"

namespace {

using namespace distpot;

constexpr double kPi = std::numbers::pi;

struct Fixture {
  Domain domain = build_domain({CurveSpec::circle({0.0, 0.0}, 1.0)});
  OperatorSet ops = OperatorSet::assemble(domain, 128);
  VolumeGrid grid = volume_grid(domain, 32, 64);
  PotentialEngine eng{ops, grid};
};

const Fixture& fixture() {
  static const Fixture fx;
  return fx;
}

NeumannProblem bulk_problem() {
  NeumannProblem p;
  p.f = DensityRep::bulk(ScalarField::constant(1.0));
  p.g.mu0 = ScalarField::constant(0.5);
  p.g.mu1 = ScalarField::zero();
  return p;
}

const std::vector<Vec2> kProbes = {
    {0.0, 0.0}, {0.3, 0.0}, {0.0, 0.4}, {-0.25, 0.2}, {0.5, -0.5}};

}  // namespace

TEST_SUITE("neumann") {
  TEST_CASE("constant source with matching flux") {
    // Delta u = 1, d_nu u = 1/2: the zero-mean solution is r^2/4 - 1/8.
    const auto& fx = fixture();
    const NeumannSolution sol = solve_neumann(bulk_problem(), fx.eng);
    CHECK(sol.converged);
    CHECK(sol.compatibility.compatible);
    CHECK(sol.max_residual < 1e-9);
    CHECK(sol.system_condition < 1e3);
    for (Vec2 p : kProbes)
      CHECK(sol.u.interior_eval(p) ==
            doctest::Approx(0.25 * dot(p, p) - 0.125).epsilon(1e-9).scale(1.0));
  }

  TEST_CASE("harmonic problem from a direct boundary density") {
    // f = 0, g = cos t given through mu0: the solution is x up to a constant.
    const auto& fx = fixture();
    NeumannProblem p;
    p.f = DensityRep::zero();
    p.g.mu0 = ScalarField::from_expression("x", {});
    p.g.mu1 = ScalarField::zero();
    const NeumannSolution sol = solve_neumann(p, fx.eng);
    CHECK(sol.converged);
    for (Vec2 q : kProbes)
      CHECK(sol.u.interior_eval(q) ==
            doctest::Approx(q.x).epsilon(1e-9).scale(1.0));
  }

  TEST_CASE("harmonic problem from a transposed density") {
    // The same flux written as S+^t[mu1] with mu1 = cos t gives the same
    // solution, since cos t is a Steklov eigenfunction of eigenvalue one.
    const auto& fx = fixture();
    NeumannProblem p;
    p.f = DensityRep::zero();
    p.g.mu0 = ScalarField::zero();
    p.g.mu1 = ScalarField::from_expression("x", {});
    const NeumannSolution sol = solve_neumann(p, fx.eng);
    CHECK(sol.converged);
    for (Vec2 q : kProbes)
      CHECK(sol.u.interior_eval(q) ==
            doctest::Approx(q.x).epsilon(1e-8).scale(1.0));
  }

  TEST_CASE("equivalent source representations solve to the same field") {
    // f = 2 written as a bulk density and as the divergence pair (x, y).
    const auto& fx = fixture();
    NeumannProblem a;
    a.f = DensityRep::bulk(ScalarField::constant(2.0));
    a.g.mu0 = ScalarField::constant(1.0);
    a.g.mu1 = ScalarField::zero();

    NeumannProblem b = a;
    b.f.f0 = ScalarField::zero();
    b.f.f1 = ScalarField::from_expression("x", {});
    b.f.f2 = ScalarField::from_expression("y", {});

    const NeumannSolution ua = solve_neumann(a, fx.eng);
    const NeumannSolution ub = solve_neumann(b, fx.eng);
    CHECK(ua.converged);
    CHECK(ub.converged);
    for (Vec2 q : kProbes) {
      CHECK(ua.u.interior_eval(q) ==
            doctest::Approx(0.5 * dot(q, q) - 0.25).epsilon(1e-8).scale(1.0));
      CHECK(ub.u.interior_eval(q) ==
            doctest::Approx(ua.u.interior_eval(q)).epsilon(1e-8).scale(1.0));
    }
  }

  TEST_CASE("normalizations differ by a constant") {
    const auto& fx = fixture();
    NeumannProblem p = bulk_problem();
    const NeumannSolution mean = solve_neumann(p, fx.eng);
    p.normalization = Normalization::kValueAtAnchor;
    const NeumannSolution anchored = solve_neumann(p, fx.eng);

    // Anchor normalization pins u to zero at the component anchor.
    const Vec2 anchor = fx.domain.anchor(0);
    CHECK(anchored.u.interior_eval(anchor) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-10));

    const UniquenessCertificate cert =
        uniqueness_certificate(mean, anchored, fx.eng);
    REQUIRE(cert.constant.size() == 1);
    CHECK(cert.deviation < 1e-9);
    CHECK(cert.constant[0] == doctest::Approx(-0.125).epsilon(1e-8));
  }

  TEST_CASE("incompatible data is refused with a quantified defect") {
    const auto& fx = fixture();
    NeumannProblem p = bulk_problem();
    p.g.mu0 = ScalarField::zero();  // no flux against a unit source
    try {
      (void)solve_neumann(p, fx.eng);
      FAIL("expected IncompatibleDataError");
    } catch (const IncompatibleDataError& e) {
      REQUIRE(e.report.defect.size() == 1);
      CHECK(e.report.defect[0] == doctest::Approx(-kPi).epsilon(1e-9));
      CHECK_FALSE(e.report.compatible);
    }
    const CompatibilityReport report =
        check_compatibility(p, fx.eng);
    CHECK_FALSE(report.compatible);
    CHECK(report.defect[0] == doctest::Approx(-kPi).epsilon(1e-9));
    CHECK(report.tolerance[0] > 0.0);
  }

  TEST_CASE("two components decouple") {
    // Unit source on both disks with the flux split by perimeter; on the
    // small disk of radius 1/2 centered at (3, 0) the datum is r_local / 2.
    Domain two = build_domain({CurveSpec::circle({0.0, 0.0}, 1.0),
                               CurveSpec::circle({3.0, 0.0}, 0.5)});
    OperatorSet ops = OperatorSet::assemble(two, 96);
    VolumeGrid grid = volume_grid(two, 28, 56);
    PotentialEngine eng{ops, grid};

    NeumannProblem p;
    p.f = DensityRep::bulk(ScalarField::constant(1.0));
    p.g.mu0 = ScalarField::from_function(
        [](Vec2 q) { return q.x < 1.5 ? 0.5 : 0.25; }, "piecewise flux");
    p.g.mu1 = ScalarField::zero();
    p.normalization = Normalization::kValueAtAnchor;
    const NeumannSolution sol = solve_neumann(p, eng);
    CHECK(sol.converged);
    REQUIRE(sol.compatibility.defect.size() == 2);

    // Each component solves its own radial problem: u = |x - c|^2 / 4 + const,
    // pinned to zero at the anchor (the center).
    CHECK(sol.u.interior_eval({0.2, 0.1}) ==
          doctest::Approx(0.05 / 4.0).epsilon(1e-6).scale(1.0));
    CHECK(sol.u.interior_eval({3.2, 0.1}) ==
          doctest::Approx(0.05 / 4.0).epsilon(1e-6).scale(1.0));
  }

  TEST_CASE("residual battery is reported by name") {
    const auto& fx = fixture();
    const NeumannSolution sol = solve_neumann(bulk_problem(), fx.eng);
    REQUIRE(sol.residual_test.size() == sol.residual.size());
    REQUIRE(sol.residual_test.size() == 33);  // 2 * 16 + 1 on one component
    CHECK(sol.residual_test.front() == "chi_0");
    double worst = 0.0;
    for (double r : sol.residual) worst = std::max(worst, r);
    CHECK(worst == doctest::Approx(sol.max_residual));
  }

  TEST_CASE("basis order is validated against the grid") {
    const auto& fx = fixture();
    NeumannProblem p = bulk_problem();
    p.basis_order = 0;
    CHECK_THROWS_AS((void)solve_neumann(p, fx.eng), std::invalid_argument);
    p.basis_order = 64;  // needs N > 2 * 64
    CHECK_THROWS_AS((void)solve_neumann(p, fx.eng), std::invalid_argument);
  }
}
