#include "distpot/oracles.hpp"

#include <cmath>
#include <numbers>

#include "distpot/quadrature.hpp"
#include "doctest.h"

namespace {

using namespace distpot;

constexpr double kPi = std::numbers::pi;

// Five-point Laplacian with a wide step; enough to see through roundoff.
double fd_laplacian(const std::function<double(Vec2)>& f, Vec2 p,
                    double h = 1e-4) {
  return (f({p.x + h, p.y}) + f({p.x - h, p.y}) + f({p.x, p.y + h}) +
          f({p.x, p.y - h}) - 4.0 * f(p)) /
         (h * h);
}

}  // namespace

TEST_SUITE("oracles") {
  TEST_CASE("disk fourier evaluation and steklov image") {
    oracles::DiskFourier f;
    f.R = 2.0;
    f.a0 = 0.5;
    f.a = {1.0, 0.0, 0.25};
    f.b = {0.0, -0.5};
    CHECK(f.boundary_value(0.7) == doctest::Approx(0.6459057961402942).epsilon(1e-15));
    CHECK(f.interior_value({0.6, -0.3}) ==
          doctest::Approx(0.84668750000000004).epsilon(1e-15));
    // On the circle the extension reproduces the boundary series.
    CHECK(f.interior_value({2.0 * std::cos(0.7), 2.0 * std::sin(0.7)}) ==
          doctest::Approx(f.boundary_value(0.7)).epsilon(1e-13));
    const oracles::DiskFourier s = f.steklov();
    CHECK(s.a0 == 0.0);
    CHECK(s.a[0] == doctest::Approx(0.5));       // k/R = 1/2
    CHECK(s.a[2] == doctest::Approx(0.375));     // 3/2 * 0.25
    CHECK(s.b[1] == doctest::Approx(-0.5));      // 2/2 * (-0.5)
    CHECK(s.boundary_value(0.7) ==
          doctest::Approx(-0.29962106057693227).epsilon(1e-14));

    // The extension is harmonic inside.
    CHECK(std::abs(fd_laplacian(
              [&](Vec2 p) { return f.interior_value(p); }, {0.4, 0.8})) < 1e-5);
  }

  TEST_CASE("radial newtonian potentials") {
    CHECK(oracles::radial_newtonian(2, 1.0, 0.5) ==
          doctest::Approx(-0.1875).epsilon(1e-15));
    CHECK(oracles::radial_newtonian(2, 1.0, 2.0) ==
          doctest::Approx(0.34657359027997264).epsilon(1e-15));
    CHECK(oracles::radial_newtonian(3, 1.0, 0.5) ==
          doctest::Approx(-0.45833333333333331).epsilon(1e-15));
    CHECK(oracles::radial_newtonian(3, 1.0, 2.0) ==
          doctest::Approx(-1.0 / 6.0).epsilon(1e-15));
    CHECK(oracles::radial_newtonian(2, 2.0, 1.0) ==
          doctest::Approx(0.63629436111989057).epsilon(1e-15));

    // Continuity and first-derivative continuity across r = R.
    for (int n : {2, 3}) {
      const double h = 1e-6;
      CHECK(oracles::radial_newtonian(n, 1.0, 1.0 - h) ==
            doctest::Approx(oracles::radial_newtonian(n, 1.0, 1.0 + h))
                .epsilon(1e-5)
                .scale(1.0));
      const double din = (oracles::radial_newtonian(n, 1.0, 1.0) -
                          oracles::radial_newtonian(n, 1.0, 1.0 - h)) / h;
      const double dout = (oracles::radial_newtonian(n, 1.0, 1.0 + h) -
                           oracles::radial_newtonian(n, 1.0, 1.0)) / h;
      CHECK(din == doctest::Approx(dout).epsilon(1e-5));
    }
    // Interior Laplacian is one (area density), exterior zero.
    CHECK(fd_laplacian([](Vec2 p) {
            return oracles::radial_newtonian(2, 1.0, norm(p));
          }, {0.3, 0.2}) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(fd_laplacian([](Vec2 p) {
            return oracles::radial_newtonian(2, 1.0, norm(p));
          }, {1.7, 0.4})) < 1e-6);

    CHECK_THROWS_AS((void)oracles::radial_newtonian(4, 1.0, 0.5),
                    std::invalid_argument);
  }

  TEST_CASE("monomial density potentials") {
    CHECK(oracles::disk_potential_x({0.3, 0.2}) ==
          doctest::Approx(-0.070125).epsilon(1e-15));
    CHECK(oracles::disk_potential_x({2.0, 1.0}) ==
          doctest::Approx(-0.05).epsilon(1e-15));
    CHECK(oracles::disk_potential_x2({0.3, 0.2}) ==
          doctest::Approx(-0.033576041666666667).epsilon(1e-14));
    CHECK(oracles::disk_potential_x2({1.5, 0.5}) ==
          doctest::Approx(0.050601504075468026).epsilon(1e-14));

    // Delta P[x] = x inside, 0 outside; same for x^2.
    CHECK(fd_laplacian([](Vec2 p) { return oracles::disk_potential_x(p); },
                       {0.4, -0.1}) == doctest::Approx(0.4).epsilon(1e-5));
    CHECK(std::abs(fd_laplacian(
              [](Vec2 p) { return oracles::disk_potential_x(p); },
              {2.0, 0.5})) < 1e-5);
    CHECK(fd_laplacian([](Vec2 p) { return oracles::disk_potential_x2(p); },
                       {0.25, 0.35}) == doctest::Approx(0.0625).epsilon(1e-4));
    CHECK(std::abs(fd_laplacian(
              [](Vec2 p) { return oracles::disk_potential_x2(p); },
              {1.8, -0.3})) < 1e-5);

    // Continuity across the circle along a ray.
    const Vec2 dir{std::cos(1.1), std::sin(1.1)};
    CHECK(oracles::disk_potential_x2((1.0 - 1e-7) * dir) ==
          doctest::Approx(oracles::disk_potential_x2((1.0 + 1e-7) * dir))
              .epsilon(1e-6));
  }

  TEST_CASE("lacunary trace energy") {
    CHECK(oracles::hadamard_energy(0.4, 8, 1e-3) ==
          doctest::Approx(42.05697200053158).epsilon(1e-12));
    CHECK(oracles::hadamard_energy(0.4, 4, 1e-3) ==
          doctest::Approx(17.690264921004271).epsilon(1e-12));
    // More terms mean strictly more truncated energy.
    double prev = 0.0;
    for (int K : {2, 4, 6, 8, 10}) {
      const double e = oracles::hadamard_energy(0.4, K, 1e-3);
      CHECK(e > prev);
      prev = e;
    }
    // Shrinking the collar only adds energy.
    CHECK(oracles::hadamard_energy(0.4, 8, 1e-4) >
          oracles::hadamard_energy(0.4, 8, 1e-3));
    CHECK_THROWS_AS((void)oracles::hadamard_energy(0.4, 0, 1e-3),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)oracles::hadamard_energy(0.4, 4, 0.0),
                    std::invalid_argument);
  }

  TEST_CASE("brute pairing agrees with quadrature identities") {
    const Domain d = build_domain({CurveSpec::circle({0.0, 0.0}, 1.0)});
    const DensityRep rep =
        DensityRep::bulk(ScalarField::from_expression("x^2", {}));
    const TestField one("one", [](Vec2) { return 1.0; },
                        [](Vec2) { return Vec2{0.0, 0.0}; });
    CHECK(oracles::brute_pairing(rep, one, d, 96, 40, 80) ==
          doctest::Approx(kPi / 4.0).epsilon(1e-10));

    DensityRep vec;
    vec.f0 = ScalarField::zero();
    vec.f1 = ScalarField::from_expression("x", {});
    vec.f2 = ScalarField::from_expression("y", {});
    const TestField x2("x2", [](Vec2 p) { return p.x * p.x; },
                       [](Vec2 p) { return Vec2{2.0 * p.x, 0.0}; });
    CHECK(oracles::brute_pairing(vec, x2, d, 96, 40, 80) ==
          doctest::Approx(0.5 * kPi).epsilon(1e-10));
  }

  TEST_CASE("classical catalog entries are internally consistent") {
    const Domain d = build_domain({CurveSpec::circle({0.0, 0.0}, 1.0)});
    const BoundaryNodes nodes = boundary_nodes(d, 64);
    const VolumeGrid grid = volume_grid(d, 24, 48);
    const auto catalog = oracles::classical_catalog(d, nodes);
    REQUIRE(catalog.size() >= 3);
    for (const auto& entry : catalog) {
      // Trace samples match the interior evaluator on the boundary.
      for (std::size_t i = 0; i < nodes.comp[0].point.size(); i += 9)
        CHECK(entry.u.trace[0][i] ==
              doctest::Approx(entry.u.interior_eval(nodes.comp[0].point[i]))
                  .epsilon(1e-12)
                  .scale(1.0));
      // The declared gradient differentiates the field.
      const Vec2 p{0.31, -0.12};
      const double h = 1e-5;
      const Vec2 g = entry.gradient(p);
      CHECK(g.x == doctest::Approx((entry.u.interior_eval({p.x + h, p.y}) -
                                    entry.u.interior_eval({p.x - h, p.y})) /
                                   (2.0 * h))
                       .epsilon(1e-6)
                       .scale(1.0));
      CHECK(g.y == doctest::Approx((entry.u.interior_eval({p.x, p.y + h}) -
                                    entry.u.interior_eval({p.x, p.y - h})) /
                                   (2.0 * h))
                       .epsilon(1e-6)
                       .scale(1.0));
      // The declared Laplacian representation integrates like the field's
      // actual Laplacian against the indicator.
      const double i_rep = density_integral(entry.u.lap_rep, d, grid, nodes);
      const double lap = fd_laplacian(entry.u.interior_eval, {0.2, 0.1});
      if (std::abs(lap) < 1e-5) {
        CHECK(std::abs(i_rep) < 1e-9);
      } else {
        CHECK(i_rep != 0.0);
      }
    }
  }
}
