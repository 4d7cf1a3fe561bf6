#include "distpot/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "distpot/quadrature.hpp"

namespace distpot::oracles {

namespace {
constexpr double kPi = std::numbers::pi;
}

double DiskFourier::boundary_value(double theta) const {
  double v = a0;
  for (std::size_t k = 0; k < a.size(); ++k)
    v += a[k] * std::cos((k + 1.0) * theta);
  for (std::size_t k = 0; k < b.size(); ++k)
    v += b[k] * std::sin((k + 1.0) * theta);
  return v;
}

double DiskFourier::interior_value(Vec2 x) const {
  const double r = norm(x);
  const double theta = std::atan2(x.y, x.x);
  double v = a0;
  for (std::size_t k = 0; k < a.size(); ++k)
    v += a[k] * std::pow(r / R, k + 1.0) * std::cos((k + 1.0) * theta);
  for (std::size_t k = 0; k < b.size(); ++k)
    v += b[k] * std::pow(r / R, k + 1.0) * std::sin((k + 1.0) * theta);
  return v;
}

DiskFourier DiskFourier::steklov() const {
  DiskFourier out = *this;
  out.a0 = 0.0;
  for (std::size_t k = 0; k < out.a.size(); ++k) out.a[k] *= (k + 1.0) / R;
  for (std::size_t k = 0; k < out.b.size(); ++k) out.b[k] *= (k + 1.0) / R;
  return out;
}

double radial_newtonian(int n, double R, double r) {
  if (R <= 0.0 || r < 0.0)
    throw std::invalid_argument("radial_newtonian: need R > 0 and r >= 0");
  if (n == 2) {
    if (r <= R) return 0.25 * (r * r - R * R) + 0.5 * R * R * std::log(R);
    return 0.5 * R * R * std::log(r);
  }
  if (n == 3) {
    if (r <= R) return r * r / 6.0 - 0.5 * R * R;
    return -R * R * R / (3.0 * r);
  }
  throw std::invalid_argument("radial_newtonian: dimension must be 2 or 3");
}

double disk_potential_x(Vec2 x) {
  const double r2 = dot(x, x);
  if (r2 <= 1.0) return (r2 / 8.0 - 0.25) * x.x;
  return -x.x / (8.0 * r2);
}

double disk_potential_x2(Vec2 x) {
  const double r2 = dot(x, x);
  const double cos2t = r2 > 0.0 ? (x.x * x.x - x.y * x.y) / r2 : 0.0;
  if (r2 <= 1.0)
    return (r2 * r2 - 1.0) / 32.0 + (r2 * r2 / 24.0 - r2 / 16.0) * cos2t;
  return std::log(r2) / 16.0 - cos2t / (48.0 * r2);
}

double hadamard_energy(double alpha, int K, double eps) {
  if (eps <= 0.0 || eps >= 1.0 || K < 1)
    throw std::invalid_argument("hadamard_energy: need K >= 1, 0 < eps < 1");
  const double rho = 1.0 - eps;
  double sum = 0.0;
  for (int k = 1; k <= K; ++k)
    sum += std::pow(2.0, k * (1.0 - 2.0 * alpha)) *
           std::pow(rho, std::pow(2.0, k + 1.0));
  return kPi * sum;
}

double brute_pairing(const DensityRep& rep, const TestField& v,
                     const Domain& domain, int N, int M_r, int M_t) {
  const BoundaryNodes nodes = boundary_nodes(domain, N);
  const VolumeGrid grid = volume_grid(domain, M_r, M_t);
  return pair_density(rep, v, domain, grid, nodes);
}

std::vector<CatalogEntry> classical_catalog(const Domain& domain,
                                            const BoundaryNodes& nodes) {
  using fieldexpr::ScalarField;

  auto sample = [&](const std::function<double(Vec2)>& f) {
    std::vector<std::vector<double>> tr(nodes.comp.size());
    for (std::size_t m = 0; m < nodes.comp.size(); ++m) {
      tr[m].resize(nodes.N);
      for (int i = 0; i < nodes.N; ++i) tr[m][i] = f(nodes.comp[m].point[i]);
    }
    return tr;
  };

  std::vector<CatalogEntry> out;
  (void)domain;

  {
    CatalogEntry e;
    e.name = "saddle";
    auto f = [](Vec2 p) { return p.x * p.x - p.y * p.y; };
    e.u.trace = sample(f);
    e.u.interior_eval = f;
    e.u.lap_rep = DensityRep::zero();
    e.gradient = [](Vec2 p) { return Vec2{2.0 * p.x, -2.0 * p.y}; };
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "paraboloid";
    auto f = [](Vec2 p) { return 0.25 * dot(p, p); };
    e.u.trace = sample(f);
    e.u.interior_eval = f;
    e.u.lap_rep = DensityRep::bulk(ScalarField::constant(1.0));
    e.gradient = [](Vec2 p) { return Vec2{0.5 * p.x, 0.5 * p.y}; };
    out.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.name = "quartic-bowl";
    auto f = [](Vec2 p) {
      const double r2 = dot(p, p);
      return r2 * r2 / 16.0;
    };
    e.u.trace = sample(f);
    e.u.interior_eval = f;
    e.u.lap_rep = DensityRep::bulk(ScalarField::from_function(
        [](Vec2 p) { return dot(p, p); }, "r^2"));
    e.gradient = [](Vec2 p) {
      const double r2 = dot(p, p);
      return Vec2{0.25 * r2 * p.x, 0.25 * r2 * p.y};
    };
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace distpot::oracles
