#include "distpot/geometry.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"

namespace {

using namespace distpot;

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("geometry") {
  TEST_CASE("circle parametrization is exact") {
    const Curve c(CurveSpec::circle({1.0, -2.0}, 3.0));
    const double t = 0.9;
    CHECK(c.point(t).x == doctest::Approx(1.0 + 3.0 * std::cos(t)).epsilon(1e-15));
    CHECK(c.point(t).y == doctest::Approx(-2.0 + 3.0 * std::sin(t)).epsilon(1e-15));
    CHECK(c.speed(t) == doctest::Approx(3.0));
    CHECK(c.curvature(t) == doctest::Approx(1.0 / 3.0));
    const Vec2 nu = c.outward_normal(t);
    CHECK(nu.x == doctest::Approx(std::cos(t)));
    CHECK(nu.y == doctest::Approx(std::sin(t)));
    CHECK(norm(nu) == doctest::Approx(1.0));
  }

  TEST_CASE("ellipse curvature at the axis endpoints") {
    // x = a cos t, y = b sin t has curvature a*b / (a^2 sin^2 + b^2 cos^2)^1.5,
    // so a/b^2 at t = 0 and b/a^2 at t = pi/2.
    const Curve c(CurveSpec::ellipse({0.0, 0.0}, 1.3, 0.7));
    CHECK(c.curvature(0.0) == doctest::Approx(1.3 / (0.7 * 0.7)));
    CHECK(c.curvature(0.5 * kPi) == doctest::Approx(0.7 / (1.3 * 1.3)));
  }

  TEST_CASE("trig curve reduces to a circle for first-order coefficients") {
    const Curve trig(CurveSpec::trig({0.5, 0.0}, {2.0}, {}, {}, {2.0}));
    const Curve circle(CurveSpec::circle({0.5, 0.0}, 2.0));
    for (double t : {0.0, 0.7, 2.9, 5.1}) {
      CHECK(trig.point(t).x == doctest::Approx(circle.point(t).x));
      CHECK(trig.point(t).y == doctest::Approx(circle.point(t).y));
      CHECK(trig.curvature(t) == doctest::Approx(0.5));
    }
    CHECK(trig.trig_degree() == 1);
  }

  TEST_CASE("derivatives agree with finite differences") {
    const Curve c(
        CurveSpec::trig({0.0, 0.0}, {1.0, 0.0, 0.15}, {0.1}, {-0.1}, {0.9}));
    const double t = 1.3, h = 1e-6;
    const Vec2 fd1 = (1.0 / (2.0 * h)) * (c.point(t + h) - c.point(t - h));
    CHECK(c.derivative(t).x == doctest::Approx(fd1.x).epsilon(1e-8));
    CHECK(c.derivative(t).y == doctest::Approx(fd1.y).epsilon(1e-8));
    // A wider step keeps the second difference clear of cancellation noise.
    const double h2 = 1e-4;
    const Vec2 fd2 = (1.0 / (h2 * h2)) *
                     (c.point(t + h2) + c.point(t - h2) - 2.0 * c.point(t));
    CHECK(c.second_derivative(t).x == doctest::Approx(fd2.x).epsilon(1e-6));
    CHECK(c.second_derivative(t).y == doctest::Approx(fd2.y).epsilon(1e-6));
  }

  TEST_CASE("domain membership and anchors") {
    const Domain d = build_domain({CurveSpec::circle({0.0, 0.0}, 1.0),
                                   CurveSpec::circle({3.0, 0.0}, 0.5)});
    REQUIRE(d.component_count() == 2);
    CHECK(d.contains({0.2, 0.3}));
    CHECK(d.contains({3.1, 0.1}));
    CHECK_FALSE(d.contains({1.5, 0.0}));
    CHECK_FALSE(d.contains({1.01, 0.0}));  // just past the boundary
    CHECK(d.component_containing({3.2, 0.0}).value() == 1);
    CHECK_FALSE(d.component_containing({10.0, 0.0}).has_value());
    CHECK(d.anchor(1).x == doctest::Approx(3.0));
  }

  TEST_CASE("closest boundary point on a circle") {
    const Domain d = build_domain({CurveSpec::circle({0.0, 0.0}, 1.0)});
    const auto cp = d.closest_boundary_point(0, {0.5, 0.0});
    CHECK(cp.distance == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(cp.point.x == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(cp.point.y) < 1e-8);

    std::size_t comp = 99;
    const auto far = d.closest_boundary_point({4.0, 0.0}, &comp);
    CHECK(comp == 0);
    CHECK(far.distance == doctest::Approx(3.0).epsilon(1e-10));
  }

  TEST_CASE("validation rejects bad domains") {
    // Clockwise orientation.
    CHECK_THROWS_AS(
        build_domain({CurveSpec::trig({0.0, 0.0}, {1.0}, {}, {}, {-1.0})}),
        DomainError);
    // Overlapping closures.
    CHECK_THROWS_AS(build_domain({CurveSpec::circle({0.0, 0.0}, 1.0),
                                  CurveSpec::circle({1.5, 0.0}, 1.0)}),
                    DomainError);
    // One component nested inside another.
    CHECK_THROWS_AS(build_domain({CurveSpec::circle({0.0, 0.0}, 2.0),
                                  CurveSpec::circle({0.0, 0.0}, 0.5)}),
                    DomainError);
    // Self-intersecting figure-eight style trig curve.
    CHECK_THROWS_AS(
        build_domain({CurveSpec::trig({0.0, 0.0}, {1.0}, {}, {}, {0.0, 1.0})}),
        DomainError);
    // Empty spec list.
    CHECK_THROWS_AS(build_domain({}), DomainError);
  }

  TEST_CASE("boundary nodes carry exact circle data") {
    const Domain d = build_domain({CurveSpec::circle({0.0, 0.0}, 2.0)});
    const BoundaryNodes nodes = boundary_nodes(d, 32);
    REQUIRE(nodes.comp.size() == 1);
    REQUIRE(nodes.comp[0].point.size() == 32);
    double perim = 0.0;
    for (int i = 0; i < 32; ++i) {
      const auto& c0 = nodes.comp[0];
      perim += c0.weight[i];
      CHECK(c0.speed[i] == doctest::Approx(2.0));
      CHECK(c0.curvature[i] == doctest::Approx(0.5));
      CHECK(norm(c0.normal[i]) == doctest::Approx(1.0));
      // Outward normal of a centered circle is radial.
      CHECK(dot(c0.normal[i], c0.point[i]) == doctest::Approx(2.0));
      CHECK(std::abs(dot(c0.normal[i], c0.tangent[i])) < 1e-14);
    }
    CHECK(perim == doctest::Approx(4.0 * kPi).epsilon(1e-13));
  }

  TEST_CASE("boundary node count is validated") {
    const Domain d = build_domain({CurveSpec::circle({0.0, 0.0}, 1.0)});
    CHECK_THROWS(boundary_nodes(d, 7));
    CHECK_THROWS(boundary_nodes(d, 6));
    CHECK_NOTHROW(boundary_nodes(d, 8));
    CHECK_NOTHROW(detail::boundary_nodes_any_even(d, 4));
  }
}
