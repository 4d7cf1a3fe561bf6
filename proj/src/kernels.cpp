#include "distpot/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace distpot::kernels {

namespace {
constexpr double kPi = std::numbers::pi;

double radius(std::span<const double> xi) {
  double s = 0.0;
  for (double v : xi) s += v * v;
  return std::sqrt(s);
}

void check_dim(int n, std::span<const double> xi) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  if (static_cast<int>(xi.size()) != n)
    throw std::invalid_argument("point dimension does not match n");
}
}  // namespace

double sphere_measure(int n) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  return 2.0 * std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0);
}

double fundamental_radial(int n, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("fundamental solution needs r > 0");
  if (n == 2) return std::log(r) / (2.0 * kPi);
  return std::pow(r, 2.0 - n) / ((2.0 - n) * sphere_measure(n));
}

double eval_S(int n, std::span<const double> xi) {
  check_dim(n, xi);
  return fundamental_radial(n, radius(xi));
}

Vec2 grad_S2(Vec2 xi) {
  const double r2 = xi.x * xi.x + xi.y * xi.y;
  const double c = 1.0 / (2.0 * kPi * r2);
  return {c * xi.x, c * xi.y};
}

std::array<double, 3> grad_S3(const std::array<double, 3>& xi) {
  const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  const double r = std::sqrt(r2);
  const double c = 1.0 / (sphere_measure(3) * r2 * r);
  return {c * xi[0], c * xi[1], c * xi[2]};
}

std::vector<double> grad_S(int n, std::span<const double> xi) {
  check_dim(n, xi);
  const double r = radius(xi);
  const double c = 1.0 / (sphere_measure(n) * std::pow(r, n));
  std::vector<double> g(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) g[i] = c * xi[i];
  return g;
}

double second_derivative_S(int n, std::span<const double> xi, int i, int j) {
  check_dim(n, xi);
  const double r = radius(xi);
  const double delta = (i == j) ? 1.0 : 0.0;
  return (delta - n * xi[i] * xi[j] / (r * r)) /
         (sphere_measure(n) * std::pow(r, n));
}

double radial_antiderivative(int n, double r) {
  if (n == 2) return r * r * (std::log(r) - 1.0) / (8.0 * kPi);
  if (n == 3) return -r / (8.0 * kPi);
  throw std::invalid_argument("radial antiderivative implemented for n = 2, 3");
}

double radial_antiderivative_deriv(int n, double r) {
  if (n == 2) return r * (2.0 * std::log(r) - 1.0) / (8.0 * kPi);
  if (n == 3) return -1.0 / (8.0 * kPi);
  throw std::invalid_argument("radial antiderivative implemented for n = 2, 3");
}

GrowthBoundReport growth_bound_report(int n, int order,
                                      std::span<const double> radii,
                                      int directions, double varsigma) {
  if (order != 1 && order != 2)
    throw std::invalid_argument("growth bound sampled for orders 1 and 2 only");
  if (n != 2 && n != 3)
    throw std::invalid_argument("growth bound sampled for n = 2, 3 only");

  GrowthBoundReport rep;
  rep.n = n;
  rep.order = order;
  rep.bound = std::pow(varsigma, order) * (order == 1 ? 1.0 : 2.0);

  // Sample directions on the unit sphere: equispaced on the circle for n = 2,
  // a latitude/longitude grid for n = 3.
  std::vector<std::vector<double>> dirs;
  if (n == 2) {
    for (int k = 0; k < directions; ++k) {
      const double a = 2.0 * kPi * k / directions;
      dirs.push_back({std::cos(a), std::sin(a)});
    }
  } else {
    const int lat = std::max(3, directions / 8);
    for (int l = 1; l < lat; ++l) {
      const double phi = kPi * l / lat;
      for (int k = 0; k < directions; ++k) {
        const double a = 2.0 * kPi * k / directions;
        dirs.push_back({std::sin(phi) * std::cos(a), std::sin(phi) * std::sin(a),
                        std::cos(phi)});
      }
    }
    dirs.push_back({0.0, 0.0, 1.0});
    dirs.push_back({0.0, 0.0, -1.0});
  }

  std::vector<double> xi(n);
  for (double r : radii) {
    for (const auto& d : dirs) {
      for (int i = 0; i < n; ++i) xi[i] = r * d[i];
      if (order == 1) {
        const auto g = grad_S(n, xi);
        for (double gi : g)
          rep.observed_sup = std::max(
              rep.observed_sup, std::pow(r, n - 1) * std::abs(gi));
      } else {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            rep.observed_sup =
                std::max(rep.observed_sup,
                         std::pow(r, n) *
                             std::abs(second_derivative_S(n, xi, i, j)));
      }
    }
  }
  rep.satisfied = rep.observed_sup <= rep.bound * (1.0 + 1e-12);
  return rep;
}

}  // namespace distpot::kernels
