#include "distpot/boundary_ops.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "distpot/oracles.hpp"
#include "doctest.h"

namespace {

using namespace distpot;

constexpr double kPi = std::numbers::pi;

std::vector<double> sampled(const BoundaryNodes::Component& c,
                            const std::function<double(double)>& f) {
  std::vector<double> v(c.t.size());
  for (std::size_t i = 0; i < c.t.size(); ++i) v[i] = f(c.t[i]);
  return v;
}

}  // namespace

TEST_SUITE("boundary_ops") {
  TEST_CASE("single layer matrix has the circle eigenvalues") {
    // On the unit circle the single layer maps cos(k t) to -cos(k t)/(2k).
    const Domain d = build_domain({CurveSpec::circle({0.0, 0.0}, 1.0)});
    const OperatorSet ops = OperatorSet::assemble(d, 64);
    const auto& c0 = ops.nodes().comp[0];
    for (int k : {1, 2, 5, 11}) {
      const auto v = sampled(c0, [k](double t) { return std::cos(k * t); });
      const Eigen::VectorXd img =
          ops.single_layer_matrix(0) *
          Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
      for (int i = 0; i < ops.N(); ++i)
        CHECK(img[i] == doctest::Approx(-v[i] / (2.0 * k))
                            .epsilon(1e-12)
                            .scale(1.0));
    }
  }

  TEST_CASE("adjoint double layer halves constants on circles") {
    // On a circle the kernel is constant along each row, so the row sums
    // reproduce the Gauss half independently of radius and center.
    const Domain d = build_domain({CurveSpec::circle({0.4, -0.7}, 2.0)});
    const OperatorSet ops = OperatorSet::assemble(d, 96);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(ops.N());
    const Eigen::VectorXd img = ops.adjoint_double_layer(0) * ones;
    for (int i = 0; i < ops.N(); ++i)
      CHECK(img[i] == doctest::Approx(0.5).epsilon(1e-9));
  }

  TEST_CASE("weighted adjoint satisfies the gauss identity on an ellipse") {
    // The transposed statement holds on every smooth curve: integrating the
    // kernel over the observation point gives one half at each source node.
    const Domain d = build_domain({CurveSpec::ellipse({0.2, 0.0}, 1.1, 0.8)});
    const OperatorSet ops = OperatorSet::assemble(d, 96);
    const Eigen::MatrixXd& kprime = ops.adjoint_double_layer(0);
    const Eigen::VectorXd w = ops.weight_vector(0);
    for (int j = 0; j < ops.N(); ++j) {
      double sum = 0.0;
      for (int i = 0; i < ops.N(); ++i) sum += w[i] * kprime(i, j);
      CHECK(sum / w[j] == doctest::Approx(0.5).epsilon(1e-9));
    }
  }

  TEST_CASE("fault injection really flips the adjoint identity") {
    AssemblyFaults faults;
    faults.flip_adjoint_sign = true;
    const Domain d = build_domain({CurveSpec::circle({0.0, 0.0}, 1.0)});
    const OperatorSet ops = OperatorSet::assemble(d, 32, faults);
    const Eigen::VectorXd img =
        ops.adjoint_double_layer(0) * Eigen::VectorXd::Ones(32);
    CHECK(img[0] == doctest::Approx(-0.5).epsilon(1e-9));
  }

  TEST_CASE("dirichlet density splits into mean-zero layer plus constant") {
    const Domain d = build_domain({CurveSpec::circle({0.5, -0.5}, 2.0)});
    const OperatorSet ops = OperatorSet::assemble(d, 64);
    const auto& c0 = ops.nodes().comp[0];
    const auto v =
        sampled(c0, [](double t) { return 1.0 + std::cos(2.0 * t); });
    std::vector<double> phi;
    double c = 0.0;
    ops.dirichlet_density(0, v, phi, c);
    REQUIRE(phi.size() == v.size());

    double mean = 0.0;
    for (int i = 0; i < ops.N(); ++i) mean += ops.weight_vector(0)[i] * phi[i];
    CHECK(std::abs(mean) < 1e-10);

    const Eigen::VectorXd recon =
        ops.single_layer_matrix(0) *
        Eigen::Map<const Eigen::VectorXd>(phi.data(), phi.size());
    for (int i = 0; i < ops.N(); ++i)
      CHECK(recon[i] + c == doctest::Approx(v[i]).epsilon(1e-10));
  }

  TEST_CASE("harmonic extension matches the disk Fourier oracle") {
    const Domain d = build_domain({CurveSpec::circle({0.0, 0.0}, 1.0)});
    const OperatorSet ops = OperatorSet::assemble(d, 128);
    oracles::DiskFourier data;
    data.a0 = 0.5;
    data.a = {1.0, 0.0, 0.25};
    data.b = {0.0, -0.5};

    std::vector<std::vector<double>> trace(1);
    trace[0] = sampled(ops.nodes().comp[0],
                       [&](double t) { return data.boundary_value(t); });
    const HarmonicField u = ops.dirichlet_solve(trace);

    for (Vec2 p : {Vec2{0.0, 0.0}, Vec2{0.6, -0.3}, Vec2{-0.4, 0.7}}) {
      const auto eval = u.evaluate(p);
      CHECK(eval.inside);
      CHECK_FALSE(eval.near);
      CHECK(eval.value ==
            doctest::Approx(data.interior_value(p)).epsilon(1e-10));
    }
    // Frozen sample of the oracle itself so a sign error in the oracle and
    // solver cannot cancel: 0.5 + 0.6 + 0.18 + 0.0135 by the harmonic
    // polynomial expansions of the three modes at (0.6, -0.3).
    CHECK(data.interior_value({0.6, -0.3}) ==
          doctest::Approx(1.2935).epsilon(1e-14));

    const auto outside = u.evaluate({2.0, 0.0});
    CHECK_FALSE(outside.inside);
    const auto near = u.evaluate({0.9995, 0.0});
    CHECK(near.inside);
    CHECK(near.near);
    CHECK(near.value ==
          doctest::Approx(data.interior_value({0.9995, 0.0})).epsilon(1e-6));
  }

  TEST_CASE("harmonic gradient away from the boundary") {
    const Domain d = build_domain({CurveSpec::circle({0.0, 0.0}, 1.0)});
    const OperatorSet ops = OperatorSet::assemble(d, 64);
    std::vector<std::vector<double>> trace(1);
    trace[0] = sampled(ops.nodes().comp[0],
                       [](double t) { return std::cos(t) + 2.0; });
    const HarmonicField u = ops.dirichlet_solve(trace);  // u = x + 2
    const Vec2 g = u.gradient({0.3, -0.2});
    CHECK(g.x == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(g.y == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  }

  TEST_CASE("steklov spectrum and radius scaling") {
    // Dirichlet-to-Neumann on a circle of radius R: mode k maps to (k/R).
    for (double R : {1.0, 2.0}) {
      const Domain d = build_domain({CurveSpec::circle({0.0, 0.0}, R)});
      const OperatorSet ops = OperatorSet::assemble(d, 64);
      std::vector<std::vector<double>> trace(1);
      trace[0] = sampled(ops.nodes().comp[0],
                         [](double t) { return std::sin(3.0 * t); });
      const auto img = ops.steklov(trace);
      for (int i = 0; i < 64; ++i)
        CHECK(img[0][i] == doctest::Approx(3.0 / R * trace[0][i])
                               .epsilon(1e-10)
                               .scale(1.0));
    }
  }

  TEST_CASE("steklov output integrates to zero and kills constants") {
    const Domain d = build_domain(
        {CurveSpec::trig({0.0, 0.0}, {1.0, 0.0, 0.1}, {}, {0.05}, {0.9})});
    const OperatorSet ops = OperatorSet::assemble(d, 128);
    std::vector<std::vector<double>> ones(1, std::vector<double>(128, 4.0));
    const auto img = ops.steklov(ones);
    for (int i = 0; i < 128; ++i)
      CHECK(img[0][i] == doctest::Approx(0.0).scale(1.0).epsilon(1e-8));

    std::vector<std::vector<double>> trace(1);
    trace[0] = sampled(ops.nodes().comp[0], [](double t) {
      return std::cos(t) - 0.4 * std::sin(2.0 * t);
    });
    const auto sv = ops.steklov(trace);
    double total = 0.0;
    for (int i = 0; i < 128; ++i) total += ops.weight_vector(0)[i] * sv[0][i];
    CHECK(std::abs(total) < 1e-8);
  }

  TEST_CASE("steklov is symmetric in the arclength inner product") {
    const Domain d = build_domain({CurveSpec::ellipse({0.0, 0.0}, 1.2, 0.8)});
    const OperatorSet ops = OperatorSet::assemble(d, 96);
    const auto& c0 = ops.nodes().comp[0];
    const auto u = sampled(c0, [](double t) { return std::cos(2.0 * t); });
    const auto v = sampled(c0, [](double t) { return std::sin(t) + 0.3; });
    const Eigen::Map<const Eigen::VectorXd> uu(u.data(), u.size());
    const Eigen::Map<const Eigen::VectorXd> vv(v.data(), v.size());
    const Eigen::VectorXd w = ops.weight_vector(0);
    const Eigen::MatrixXd& S = ops.steklov_matrix(0);
    const double a = (w.array() * (S * uu).array() * vv.array()).sum();
    const double b = (w.array() * (S * vv).array() * uu.array()).sum();
    CHECK(a == doctest::Approx(b).epsilon(1e-8).scale(1.0));
  }

  TEST_CASE("multi component extension keeps components independent") {
    const Domain d = build_domain({CurveSpec::circle({0.0, 0.0}, 1.0),
                                   CurveSpec::circle({4.0, 0.0}, 1.0)});
    const OperatorSet ops = OperatorSet::assemble(d, 64);
    std::vector<std::vector<double>> trace(2, std::vector<double>(64));
    for (int i = 0; i < 64; ++i) {
      trace[0][i] = 2.0;
      trace[1][i] = -3.0;
    }
    const HarmonicField u = ops.dirichlet_solve(trace);
    CHECK(u.value({0.1, 0.2}) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(u.value({4.3, -0.1}) == doctest::Approx(-3.0).epsilon(1e-10));
  }

  TEST_CASE("shift adds a constant on one component only") {
    const Domain d = build_domain({CurveSpec::circle({0.0, 0.0}, 1.0),
                                   CurveSpec::circle({4.0, 0.0}, 1.0)});
    const OperatorSet ops = OperatorSet::assemble(d, 32);
    std::vector<std::vector<double>> trace(2, std::vector<double>(32, 1.0));
    HarmonicField u(ops, trace);
    const double before = u.value({4.0, 0.0});
    u.shift(1, 2.5);
    CHECK(u.value({4.0, 0.0}) == doctest::Approx(before + 2.5));
    CHECK(u.value({0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(u.trace(1)[0] == doctest::Approx(3.5));
  }

  TEST_CASE("second arclength derivative on the unit circle") {
    const Domain d = build_domain({CurveSpec::circle({0.0, 0.0}, 1.0)});
    const OperatorSet ops = OperatorSet::assemble(d, 64);
    const auto& c0 = ops.nodes().comp[0];
    const auto v = sampled(c0, [](double t) { return std::cos(3.0 * t); });
    const auto d2 = second_arclength_derivative(d.component(0), c0, v);
    for (int i = 0; i < 64; ++i)
      CHECK(d2[i] == doctest::Approx(-9.0 * v[i]).epsilon(1e-9).scale(1.0));
  }
}
