#include "distpot/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace distpot {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

LogQuadRule::LogQuadRule(int n) : N(n) {
  if (N < 4 || N % 2 != 0)
    throw std::invalid_argument("log quadrature needs an even N >= 4");
  R.resize(N);
  for (int d = 0; d < N; ++d) {
    const double tau = kTwoPi * d / N;
    double sum = 0.0;
    for (int m = 1; m < N / 2; ++m) sum += std::cos(m * tau) / m;
    sum += std::cos(0.5 * N * tau) / N;
    R[d] = -(4.0 * kPi / N) * sum;
  }
}

double integrate_boundary(
    const BoundaryNodes& nodes,
    const std::function<double(std::size_t, int, Vec2)>& f) {
  double total = 0.0;
  for (std::size_t j = 0; j < nodes.comp.size(); ++j) {
    const auto& c = nodes.comp[j];
    for (int i = 0; i < nodes.N; ++i) total += c.weight[i] * f(j, i, c.point[i]);
  }
  return total;
}

void gauss_legendre_01(int n, std::vector<double>& nodes,
                       std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
  nodes.resize(n);
  weights.resize(n);
  // Newton iteration on P_n over [-1, 1], exploiting symmetry.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = (1.0 - x) / 2.0;  // ascending on [0, 1]
    nodes[n - 1 - i] = (1.0 + x) / 2.0;
    weights[i] = w / 2.0;
    weights[n - 1 - i] = w / 2.0;
  }
}

namespace {

// Boundary radius about the anchor along the direction of angle theta, for a
// component starlike about its anchor.
class RayRadius {
 public:
  RayRadius(const Curve& curve, Vec2 anchor) : curve_(curve), anchor_(anchor) {
    switch (curve.spec().kind) {
      case CurveKind::Circle:
      case CurveKind::Ellipse:
        analytic_ = true;
        return;
      case CurveKind::Trig:
        build_angle_table();
        return;
    }
  }

  double operator()(double theta) const {
    const auto& spec = curve_.spec();
    if (spec.kind == CurveKind::Circle) return spec.radius;
    if (spec.kind == CurveKind::Ellipse) {
      const double a = spec.semi_a, b = spec.semi_b;
      return a * b / std::hypot(b * std::cos(theta), a * std::sin(theta));
    }
    return numeric_radius(theta);
  }

 private:
  void build_angle_table() {
    const int M = 4096;
    table_t_.resize(M + 1);
    table_a_.resize(M + 1);
    double prev = 0.0;
    for (int i = 0; i <= M; ++i) {
      const double t = kTwoPi * i / M;
      const Vec2 d = curve_.point(t) - anchor_;
      double a = std::atan2(d.y, d.x);
      if (i == 0) {
        prev = a;
      } else {
        while (a < prev - kPi) a += kTwoPi;
        while (a > prev + kPi) a -= kTwoPi;
        if (a <= prev) {
          std::ostringstream msg;
          msg << "component is not starlike about its anchor (ray angle is not "
                 "monotone near parameter "
              << t << "); polar volume grids require starlike components";
          throw DomainError(msg.str());
        }
        prev = a;
      }
      table_t_[i] = t;
      table_a_[i] = prev;
    }
    if (std::abs(table_a_[M] - table_a_[0] - kTwoPi) > 1e-8)
      throw DomainError(
          "component winds around its anchor more than once; polar volume "
          "grids require starlike components");
  }

  double numeric_radius(double theta) const {
    // Shift theta into [a(0), a(0) + 2*pi) and invert the angle table.
    double target = theta;
    while (target < table_a_.front()) target += kTwoPi;
    while (target >= table_a_.back()) target -= kTwoPi;
    const auto it =
        std::lower_bound(table_a_.begin(), table_a_.end(), target);
    std::size_t hi = it - table_a_.begin();
    if (hi == 0) hi = 1;
    const double a0 = table_a_[hi - 1], a1 = table_a_[hi];
    double t = table_t_[hi - 1] +
               (table_t_[hi] - table_t_[hi - 1]) * (target - a0) / (a1 - a0);
    for (int iter = 0; iter < 40; ++iter) {
      const Vec2 d = curve_.point(t) - anchor_;
      double err = std::atan2(d.y, d.x) - target;
      while (err > kPi) err -= kTwoPi;
      while (err < -kPi) err += kTwoPi;
      const Vec2 dp = curve_.derivative(t);
      const double slope = cross(d, dp) / dot(d, d);
      const double step = err / slope;
      t -= step;
      if (std::abs(step) < 1e-14) break;
    }
    const Vec2 d = curve_.point(t) - anchor_;
    return norm(d);
  }

  const Curve& curve_;
  Vec2 anchor_;
  bool analytic_ = false;
  std::vector<double> table_t_, table_a_;
};

}  // namespace

VolumeGrid volume_grid(const Domain& domain, int M_r, int M_t) {
  if (M_r < 2 || M_t < 4)
    throw std::invalid_argument("volume grid needs M_r >= 2 and M_t >= 4");
  VolumeGrid grid;
  grid.M_r = M_r;
  grid.M_t = M_t;

  std::vector<double> u, wu;
  gauss_legendre_01(M_r, u, wu);

  grid.component_area.assign(domain.component_count(), 0.0);
  grid.ray_radius.resize(domain.component_count());
  for (std::size_t j = 0; j < domain.component_count(); ++j) {
    const RayRadius radius(domain.component(j), domain.anchor(j));
    const Vec2 anchor = domain.anchor(j);
    auto& rays = grid.ray_radius[j];
    rays.resize(M_t);
    for (int m = 0; m < M_t; ++m) {
      const double theta = kTwoPi * m / M_t;
      const double rho = radius(theta);
      rays[m] = rho;
      const Vec2 dir{std::cos(theta), std::sin(theta)};
      for (int i = 0; i < M_r; ++i) {
        VolumeGrid::Node node;
        node.x = anchor + (rho * u[i]) * dir;
        node.w = (kTwoPi / M_t) * rho * rho * u[i] * wu[i];
        node.comp = j;
        grid.component_area[j] += node.w;
        grid.nodes.push_back(node);
      }
    }
  }
  return grid;
}

double VolumeGrid::area() const {
  double s = 0.0;
  for (double a : component_area) s += a;
  return s;
}

double volume_integrate(const VolumeGrid& grid,
                        const std::function<double(Vec2)>& f) {
  double total = 0.0;
  for (const auto& node : grid.nodes) total += node.w * f(node.x);
  return total;
}

double volume_integrate(const VolumeGrid& grid, std::size_t comp,
                        const std::function<double(Vec2)>& f) {
  double total = 0.0;
  for (const auto& node : grid.nodes)
    if (node.comp == comp) total += node.w * f(node.x);
  return total;
}

std::vector<double> trig_derivative(const std::vector<double>& f) {
  const int N = static_cast<int>(f.size());
  if (N < 2 || N % 2 != 0)
    throw std::invalid_argument("spectral derivative needs even N samples");
  // Antisymmetric differentiation stencil D(d) = (-1)^d / (2 tan(pi d / N)).
  std::vector<double> D(N, 0.0);
  for (int d = 1; d < N; ++d) {
    const double sign = (d % 2 == 0) ? 1.0 : -1.0;
    D[d] = 0.5 * sign / std::tan(kPi * d / N);
  }
  std::vector<double> out(N, 0.0);
  for (int j = 0; j < N; ++j) {
    double s = 0.0;
    for (int k = 0; k < N; ++k) {
      int d = (j - k) % N;
      if (d < 0) d += N;
      s += D[d] * f[k];
    }
    out[j] = s;
  }
  return out;
}

double trig_interpolate(const std::vector<double>& f, double s) {
  const int N = static_cast<int>(f.size());
  if (N < 2 || N % 2 != 0)
    throw std::invalid_argument("trig interpolation needs even N samples");
  double sum = 0.0;
  for (int k = 0; k < N; ++k) {
    const double tau = s - kTwoPi * k / N;
    const double half = 0.5 * tau;
    const double sh = std::sin(half);
    if (std::abs(sh) < 1e-13) {
      sum += f[k];  // cardinal function is 1 at its own node
      continue;
    }
    sum += f[k] * std::sin(0.5 * N * tau) * (std::cos(half) / sh) / N;
  }
  return sum;
}

}  // namespace distpot
