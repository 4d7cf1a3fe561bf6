#include "distpot/normal_derivative.hpp"

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

HolderSolution make_solution(const std::function<double(Vec2)>& u,
                             DensityRep lap, const Fixture& fx) {
  HolderSolution sol;
  sol.trace = sample_boundary(u, fx.ops.nodes());
  sol.interior_eval = u;
  sol.lap_rep = std::move(lap);
  return sol;
}

double classical_pairing(const std::function<Vec2(Vec2)>& grad_u,
                         const BoundaryField& v, const BoundaryNodes& nodes) {
  double sum = 0.0;
  for (std::size_t m = 0; m < nodes.comp.size(); ++m) {
    const auto& c = nodes.comp[m];
    for (std::size_t i = 0; i < c.point.size(); ++i)
      sum += c.weight[i] * dot(grad_u(c.point[i]), c.normal[i]) * v[m][i];
  }
  return sum;
}

}  // namespace

TEST_SUITE("normal_derivative") {
  TEST_CASE("weak pairing agrees with the classical flux") {
    const auto& fx = fixture();
    struct Case {
      std::function<double(Vec2)> u;
      std::function<Vec2(Vec2)> grad;
      DensityRep lap;
    };
    const std::vector<Case> cases = {
        {[](Vec2 p) { return p.x * p.x - p.y * p.y; },
         [](Vec2 p) { return Vec2{2.0 * p.x, -2.0 * p.y}; },
         DensityRep::zero()},
        {[](Vec2 p) { return 0.25 * dot(p, p); },
         [](Vec2 p) { return Vec2{0.5 * p.x, 0.5 * p.y}; },
         DensityRep::bulk(ScalarField::constant(1.0))},
        {[](Vec2 p) { return dot(p, p) * dot(p, p) / 16.0; },
         [](Vec2 p) { return (dot(p, p) / 4.0) * p; },
         DensityRep::bulk(ScalarField::from_expression("r^2", {}))},
    };
    const auto battery = standard_test_battery();
    REQUIRE(battery.size() == 33);
    for (const auto& cs : cases) {
      const HolderSolution u = make_solution(cs.u, cs.lap, fx);
      const RepFunctional cached(u.lap_rep, fx.eng);
      for (const auto& tf : battery) {
        const BoundaryField v = sample_boundary(
            [&](Vec2 p) { return tf.value(p); }, fx.ops.nodes());
        double sup = 0.0;
        for (double t : v[0]) sup = std::max(sup, std::abs(t));
        const double got = pair_normal_derivative(u, v, fx.eng, &cached);
        const double want = classical_pairing(cs.grad, v, fx.ops.nodes());
        CHECK_MESSAGE(std::abs(got - want) < 1e-8 * (1.0 + sup),
                      "test field ", tf.name());
      }
    }
  }

  TEST_CASE("indicator pairings recover the volume integral of the source") {
    // <d_nu u, 1> equals the integral of the Laplacian by the divergence
    // theorem; the paraboloid and the radial quartic make that pi and pi/2.
    const auto& fx = fixture();
    const BoundaryField chi = sample_boundary([](Vec2) { return 1.0; },
                                              fx.ops.nodes());
    const HolderSolution para = make_solution(
        [](Vec2 p) { return 0.25 * dot(p, p); },
        DensityRep::bulk(ScalarField::constant(1.0)), fx);
    CHECK(pair_normal_derivative(para, chi, fx.eng) ==
          doctest::Approx(kPi).epsilon(1e-10));

    const HolderSolution quart = make_solution(
        [](Vec2 p) { return dot(p, p) * dot(p, p) / 16.0; },
        DensityRep::bulk(ScalarField::from_expression("r^2", {})), fx);
    CHECK(pair_normal_derivative(quart, chi, fx.eng) ==
          doctest::Approx(0.5 * kPi).epsilon(1e-10));
  }

  TEST_CASE("rep functional equals the extension pairing for harmonic tests") {
    const auto& fx = fixture();
    // v = 1 + x^2 - y^2 is its own harmonic extension, so pairing the bulk
    // density x^2 with the extension of its trace is integral of
    // x^2 (1 + x^2 - y^2) over the disk, which is pi/3.
    const DensityRep rep =
        DensityRep::bulk(ScalarField::from_expression("x^2", {}));
    const RepFunctional functional(rep, fx.eng);
    CHECK(functional.bulk_integral(0) == doctest::Approx(kPi / 4.0).epsilon(1e-10));

    const BoundaryField trace = sample_boundary(
        [](Vec2 p) { return 1.0 + p.x * p.x - p.y * p.y; }, fx.ops.nodes());
    const HarmonicField ext = fx.ops.dirichlet_solve(trace);
    // The volume grid limits the quartic moment slightly below 1e-8.
    CHECK(functional(ext) == doctest::Approx(kPi / 3.0).epsilon(1e-7));

    // A vector-part representation against the extension of the trace of
    // x^2, which is w = (1 + x^2 - y^2) / 2: the flux term is pi and the
    // gradient term integrates x^2 - y^2, which vanishes.
    DensityRep vec;
    vec.f0 = ScalarField::zero();
    vec.f1 = ScalarField::from_expression("x", {});
    vec.f2 = ScalarField::from_expression("y", {});
    const RepFunctional vecf(vec, fx.eng);
    const BoundaryField x2 = sample_boundary(
        [](Vec2 p) { return p.x * p.x; }, fx.ops.nodes());
    CHECK(vecf(fx.ops.dirichlet_solve(x2)) ==
          doctest::Approx(kPi).epsilon(1e-9));
    // And against the extension of an odd trace the two terms cancel.
    const BoundaryField xodd = sample_boundary(
        [](Vec2 p) { return p.x; }, fx.ops.nodes());
    CHECK(vecf(fx.ops.dirichlet_solve(xodd)) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  }

  TEST_CASE("boundary data pairing") {
    const auto& fx = fixture();
    const BoundaryField chi = sample_boundary([](Vec2) { return 1.0; },
                                              fx.ops.nodes());
    const BoundaryField cost = sample_boundary([](Vec2 p) { return p.x; },
                                               fx.ops.nodes());
    BoundaryData g;
    g.mu0 = ScalarField::constant(0.5);
    g.mu1 = ScalarField::zero();
    CHECK(pair_boundary_data(g, chi, fx.ops) ==
          doctest::Approx(kPi).epsilon(1e-12));
    // The transpose part: <S+^t[cos t], cos t> = int cos t S+[cos t] = pi.
    BoundaryData h;
    h.mu0 = ScalarField::zero();
    h.mu1 = ScalarField::from_expression("x", {});
    CHECK(pair_boundary_data(h, cost, fx.ops) ==
          doctest::Approx(kPi).epsilon(1e-9));
    // Nodal overload agrees with the field overload.
    const BoundaryField zero = sample_boundary([](Vec2) { return 0.0; },
                                               fx.ops.nodes());
    CHECK(pair_boundary_data(zero, cost, cost, fx.ops) ==
          doctest::Approx(pair_boundary_data(h, cost, fx.ops)).epsilon(1e-12));
  }

  TEST_CASE("general pairing accepts a custom interior functional") {
    const auto& fx = fixture();
    const BoundaryField u = sample_boundary(
        [](Vec2 p) { return p.x * p.x - p.y * p.y; }, fx.ops.nodes());
    const InteriorFunctional silent = [](const HarmonicField&) { return 0.0; };
    // int u S+[u] dsigma with u = cos 2t: the mode doubles, giving 2 pi.
    CHECK(pair_normal_derivative_general(u, silent, u, fx.ops) ==
          doctest::Approx(2.0 * kPi).epsilon(1e-9));
  }

  TEST_CASE("trig battery enumerates indicator and modes per component") {
    Domain two = build_domain({CurveSpec::circle({0.0, 0.0}, 1.0),
                               CurveSpec::circle({3.0, 0.0}, 0.5)});
    OperatorSet ops = OperatorSet::assemble(two, 64);
    const auto battery = trig_battery(ops, 3);
    REQUIRE(battery.size() == 14);  // (1 + 2 * 3) per component
    CHECK(battery[0].name == "chi_0");
    CHECK(battery[0].is_indicator);
    CHECK(battery[1].name == "cos1t_0");
    CHECK(battery[2].name == "sin1t_0");
    CHECK(battery[7].name == "chi_1");
    CHECK(battery[7].comp == 1);
    // Supports do not leak across components.
    for (double t : battery[1].values[1]) CHECK(t == 0.0);
    for (double t : battery[7].values[0]) CHECK(t == 0.0);
    for (double t : battery[7].values[1]) CHECK(t == 1.0);
    CHECK(battery[3].order == 2);

    CHECK_THROWS_AS((void)trig_battery(ops, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)trig_battery(ops, 32), std::invalid_argument);
  }

  TEST_CASE("boundary data recovery for the paraboloid") {
    const auto& fx = fixture();
    const HolderSolution u = make_solution(
        [](Vec2 p) { return 0.25 * dot(p, p); },
        DensityRep::bulk(ScalarField::constant(1.0)), fx);
    const BoundaryDataEstimate est = v1alpha_representation(u, fx.eng, 8);
    REQUIRE_FALSE(est.ill_conditioned);
    CHECK(est.gram_condition < 1e3);
    for (double v : est.mu0[0]) CHECK(v == doctest::Approx(0.5).epsilon(1e-7));
    for (double v : est.mu1[0]) CHECK(v == doctest::Approx(0.25).epsilon(1e-10));
  }

  TEST_CASE("boundary data recovery for a harmonic field") {
    // Harmonic u has no interior source, so mu0 vanishes and mu1 is the
    // plain trace.
    const auto& fx = fixture();
    const HolderSolution u =
        make_solution([](Vec2 p) { return p.x; }, DensityRep::zero(), fx);
    const BoundaryDataEstimate est = v1alpha_representation(u, fx.eng, 8);
    const auto& c0 = fx.ops.nodes().comp[0];
    for (std::size_t i = 0; i < c0.point.size(); ++i) {
      CHECK(std::abs(est.mu0[0][i]) < 1e-8);
      CHECK(est.mu1[0][i] ==
            doctest::Approx(c0.point[i].x).epsilon(1e-12).scale(1.0));
    }
  }

  TEST_CASE("recovery order is validated") {
    const auto& fx = fixture();
    const HolderSolution u =
        make_solution([](Vec2 p) { return p.x; }, DensityRep::zero(), fx);
    CHECK_THROWS_AS((void)v1alpha_representation(u, fx.eng, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)v1alpha_representation(u, fx.eng, 33),
                    std::invalid_argument);
  }
}
