#include "distpot/densities.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace distpot {

DensityRep DensityRep::bulk(ScalarField density) {
  DensityRep rep;
  rep.f0 = std::move(density);
  rep.f1 = ScalarField::zero();
  rep.f2 = ScalarField::zero();
  return rep;
}

DensityRep DensityRep::zero() { return bulk(ScalarField::zero()); }

TestField::TestField(std::string name, ValueFn value, GradFn gradient)
    : name_(std::move(name)), value_(std::move(value)), grad_(std::move(gradient)) {}

TestField::TestField(std::string name, ValueFn value)
    : name_(std::move(name)), value_(std::move(value)) {}

Vec2 TestField::gradient(Vec2 x) const {
  if (grad_) return (*grad_)(x);
  const double h = kFdStep;
  const double dx =
      (value_({x.x + h, x.y}) - value_({x.x - h, x.y})) / (2.0 * h);
  const double dy =
      (value_({x.x, x.y + h}) - value_({x.x, x.y - h})) / (2.0 * h);
  return {dx, dy};
}

namespace {

double flux_term(const DensityRep& rep, const BoundaryNodes& nodes,
                 std::size_t comp, const std::function<double(Vec2)>& weight) {
  if (rep.f1.structurally_zero && rep.f2.structurally_zero) return 0.0;
  const auto& c = nodes.comp[comp];
  double total = 0.0;
  for (int i = 0; i < nodes.N; ++i) {
    const Vec2 p = c.point[i];
    const Vec2 nu = c.normal[i];
    const double fdotnu = nu.x * rep.f1.value(p) + nu.y * rep.f2.value(p);
    total += c.weight[i] * fdotnu * weight(p);
  }
  return total;
}

}  // namespace

double density_integral(const DensityRep& rep, const Domain& domain,
                        const VolumeGrid& grid, const BoundaryNodes& nodes,
                        std::size_t component) {
  if (component >= domain.component_count())
    throw std::out_of_range("density_integral: component index out of range");
  double total = 0.0;
  if (!rep.f0.structurally_zero)
    total += volume_integrate(grid, component,
                              [&](Vec2 p) { return rep.f0.value(p); });
  total += flux_term(rep, nodes, component, [](Vec2) { return 1.0; });
  return total;
}

double density_integral(const DensityRep& rep, const Domain& domain,
                        const VolumeGrid& grid, const BoundaryNodes& nodes) {
  double total = 0.0;
  for (std::size_t j = 0; j < domain.component_count(); ++j)
    total += density_integral(rep, domain, grid, nodes, j);
  return total;
}

double pair_density(const DensityRep& rep, const TestField& v,
                    const Domain& domain, const VolumeGrid& grid,
                    const BoundaryNodes& nodes) {
  double total = 0.0;
  if (!rep.f0.structurally_zero)
    total += volume_integrate(
        grid, [&](Vec2 p) { return rep.f0.value(p) * v.value(p); });
  for (std::size_t j = 0; j < domain.component_count(); ++j)
    total += flux_term(rep, nodes, j, [&](Vec2 p) { return v.value(p); });
  if (rep.has_vector_part()) {
    total -= volume_integrate(grid, [&](Vec2 p) {
      const Vec2 g = v.gradient(p);
      double s = 0.0;
      if (!rep.f1.structurally_zero) s += rep.f1.value(p) * g.x;
      if (!rep.f2.structurally_zero) s += rep.f2.value(p) * g.y;
      return s;
    });
  }
  return total;
}

double holder_seminorm_estimate(const std::function<double(Vec2)>& f,
                                double alpha, const std::vector<Vec2>& points) {
  if (points.size() < 2)
    throw std::invalid_argument(
        "holder_seminorm_estimate needs at least 2 sample points");
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("holder_seminorm_estimate needs 0 < alpha <= 1");
  std::vector<double> values(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) values[i] = f(points[i]);
  double best = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    for (std::size_t k = i + 1; k < points.size(); ++k) {
      const double d = norm(points[i] - points[k]);
      if (d < 1e-14) continue;
      const double q = std::abs(values[i] - values[k]) / std::pow(d, alpha);
      if (q > best) best = q;
    }
  }
  return best;
}

std::vector<TestField> standard_test_battery(unsigned seed) {
  std::vector<TestField> battery;
  battery.emplace_back(
      "one", [](Vec2) { return 1.0; }, [](Vec2) { return Vec2{0.0, 0.0}; });
  battery.emplace_back(
      "x", [](Vec2 p) { return p.x; }, [](Vec2) { return Vec2{1.0, 0.0}; });
  battery.emplace_back(
      "y", [](Vec2 p) { return p.y; }, [](Vec2) { return Vec2{0.0, 1.0}; });
  battery.emplace_back(
      "x2-y2", [](Vec2 p) { return p.x * p.x - p.y * p.y; },
      [](Vec2 p) { return Vec2{2.0 * p.x, -2.0 * p.y}; });
  battery.emplace_back(
      "xy", [](Vec2 p) { return p.x * p.y; },
      [](Vec2 p) { return Vec2{p.y, p.x}; });
  battery.emplace_back(
      "x3-3xy2", [](Vec2 p) { return p.x * (p.x * p.x - 3.0 * p.y * p.y); },
      [](Vec2 p) {
        return Vec2{3.0 * (p.x * p.x - p.y * p.y), -6.0 * p.x * p.y};
      });
  battery.emplace_back(
      "3x2y-y3", [](Vec2 p) { return p.y * (3.0 * p.x * p.x - p.y * p.y); },
      [](Vec2 p) {
        return Vec2{6.0 * p.x * p.y, 3.0 * (p.x * p.x - p.y * p.y)};
      });
  battery.emplace_back(
      "x4-6x2y2+y4",
      [](Vec2 p) {
        const double x2 = p.x * p.x, y2 = p.y * p.y;
        return x2 * x2 - 6.0 * x2 * y2 + y2 * y2;
      },
      [](Vec2 p) {
        const double x2 = p.x * p.x, y2 = p.y * p.y;
        return Vec2{4.0 * p.x * (x2 - 3.0 * y2), 4.0 * p.y * (y2 - 3.0 * x2)};
      });
  battery.emplace_back(
      "x3y-xy3", [](Vec2 p) { return p.x * p.y * (p.x * p.x - p.y * p.y); },
      [](Vec2 p) {
        return Vec2{p.y * (3.0 * p.x * p.x - p.y * p.y),
                    p.x * (p.x * p.x - 3.0 * p.y * p.y)};
      });

  battery.emplace_back(
      "x5-harmonic",
      [](Vec2 p) {
        const double x2 = p.x * p.x, y2 = p.y * p.y;
        return p.x * (x2 * x2 - 10.0 * x2 * y2 + 5.0 * y2 * y2);
      },
      [](Vec2 p) {
        const double x2 = p.x * p.x, y2 = p.y * p.y;
        return Vec2{5.0 * (x2 * x2 - 6.0 * x2 * y2 + y2 * y2),
                    -20.0 * p.x * p.y * (x2 - y2)};
      });
  battery.emplace_back(
      "y5-harmonic",
      [](Vec2 p) {
        const double x2 = p.x * p.x, y2 = p.y * p.y;
        return p.y * (5.0 * x2 * x2 - 10.0 * x2 * y2 + y2 * y2);
      },
      [](Vec2 p) {
        const double x2 = p.x * p.x, y2 = p.y * p.y;
        return Vec2{20.0 * p.x * p.y * (x2 - y2),
                    5.0 * (x2 * x2 - 6.0 * x2 * y2 + y2 * y2)};
      });

  // Non-harmonic polynomials keep the battery from silently specializing to
  // harmonic test functions.
  battery.emplace_back(
      "x2", [](Vec2 p) { return p.x * p.x; },
      [](Vec2 p) { return Vec2{2.0 * p.x, 0.0}; });
  battery.emplace_back(
      "y2", [](Vec2 p) { return p.y * p.y; },
      [](Vec2 p) { return Vec2{0.0, 2.0 * p.y}; });
  battery.emplace_back(
      "x2y", [](Vec2 p) { return p.x * p.x * p.y; },
      [](Vec2 p) { return Vec2{2.0 * p.x * p.y, p.x * p.x}; });
  battery.emplace_back(
      "xy2", [](Vec2 p) { return p.x * p.y * p.y; },
      [](Vec2 p) { return Vec2{p.y * p.y, 2.0 * p.x * p.y}; });
  battery.emplace_back(
      "r2", [](Vec2 p) { return dot(p, p); },
      [](Vec2 p) { return Vec2{2.0 * p.x, 2.0 * p.y}; });
  battery.emplace_back(
      "r4",
      [](Vec2 p) {
        const double r2 = dot(p, p);
        return r2 * r2;
      },
      [](Vec2 p) {
        const double r2 = dot(p, p);
        return Vec2{4.0 * r2 * p.x, 4.0 * r2 * p.y};
      });

  battery.emplace_back(
      "expx-cosy", [](Vec2 p) { return std::exp(p.x) * std::cos(p.y); },
      [](Vec2 p) {
        return Vec2{std::exp(p.x) * std::cos(p.y),
                    -std::exp(p.x) * std::sin(p.y)};
      });
  battery.emplace_back(
      "expx-siny", [](Vec2 p) { return std::exp(p.x) * std::sin(p.y); },
      [](Vec2 p) {
        return Vec2{std::exp(p.x) * std::sin(p.y),
                    std::exp(p.x) * std::cos(p.y)};
      });
  battery.emplace_back(
      "sinx-coshy", [](Vec2 p) { return std::sin(p.x) * std::cosh(p.y); },
      [](Vec2 p) {
        return Vec2{std::cos(p.x) * std::cosh(p.y),
                    std::sin(p.x) * std::sinh(p.y)};
      });
  battery.emplace_back(
      "cosx-sinhy", [](Vec2 p) { return std::cos(p.x) * std::sinh(p.y); },
      [](Vec2 p) {
        return Vec2{-std::sin(p.x) * std::sinh(p.y),
                    std::cos(p.x) * std::cosh(p.y)};
      });

  battery.emplace_back(
      "gauss-offset",
      [](Vec2 p) {
        const Vec2 d{p.x - 0.3, p.y};
        return std::exp(-dot(d, d));
      },
      [](Vec2 p) {
        const Vec2 d{p.x - 0.3, p.y};
        const double e = std::exp(-dot(d, d));
        return Vec2{-2.0 * e * d.x, -2.0 * e * d.y};
      });
  battery.emplace_back(
      "gauss-sharp",
      [](Vec2 p) {
        const Vec2 d{p.x + 0.2, p.y - 0.1};
        return std::exp(-2.0 * dot(d, d));
      },
      [](Vec2 p) {
        const Vec2 d{p.x + 0.2, p.y - 0.1};
        const double e = std::exp(-2.0 * dot(d, d));
        return Vec2{-4.0 * e * d.x, -4.0 * e * d.y};
      });

  // Harmonic fields with poles far outside every test domain.
  battery.emplace_back(
      "log-pole",
      [](Vec2 p) {
        const Vec2 d{p.x - 9.0, p.y - 7.0};
        return std::log(dot(d, d));
      },
      [](Vec2 p) {
        const Vec2 d{p.x - 9.0, p.y - 7.0};
        const double r2 = dot(d, d);
        return Vec2{2.0 * d.x / r2, 2.0 * d.y / r2};
      });
  battery.emplace_back(
      "inv-pole",
      [](Vec2 p) {
        const Vec2 d{p.x - 8.0, p.y + 6.0};
        return d.x / dot(d, d);
      },
      [](Vec2 p) {
        const Vec2 d{p.x - 8.0, p.y + 6.0};
        const double r2 = dot(d, d);
        return Vec2{(d.y * d.y - d.x * d.x) / (r2 * r2),
                    -2.0 * d.x * d.y / (r2 * r2)};
      });

  // Eight reproducible Gaussian-bump combinations. Raw engine draws are
  // scaled by hand so the battery does not depend on distribution internals.
  std::mt19937 gen(seed);
  auto uniform = [&gen](double lo, double hi) {
    const double u = static_cast<double>(gen()) / 4294967296.0;
    return lo + (hi - lo) * u;
  };
  for (int b = 0; b < 8; ++b) {
    struct Bump {
      double amp, sharp;
      Vec2 center;
    };
    std::vector<Bump> bumps;
    for (int s = 0; s < 3; ++s) {
      Bump bump;
      bump.amp = uniform(-1.0, 1.0);
      bump.sharp = uniform(0.5, 3.0);
      bump.center = {uniform(-0.6, 0.6), uniform(-0.6, 0.6)};
      bumps.push_back(bump);
    }
    auto value = [bumps](Vec2 p) {
      double s = 0.0;
      for (const auto& bump : bumps) {
        const Vec2 d = p - bump.center;
        s += bump.amp * std::exp(-bump.sharp * dot(d, d));
      }
      return s;
    };
    auto gradient = [bumps](Vec2 p) {
      Vec2 g{0.0, 0.0};
      for (const auto& bump : bumps) {
        const Vec2 d = p - bump.center;
        const double e =
            -2.0 * bump.sharp * bump.amp * std::exp(-bump.sharp * dot(d, d));
        g.x += e * d.x;
        g.y += e * d.y;
      }
      return g;
    };
    battery.emplace_back("bump" + std::to_string(b), value, gradient);
  }
  return battery;
}

}  // namespace distpot
