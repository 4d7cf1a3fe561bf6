#pragma once
// Quadrature machinery: the spectrally accurate product rule for 2*pi-periodic
// logarithmic kernels, Gauss-Legendre nodes, polar tensor grids over starlike
// components, and trigonometric interpolation/differentiation utilities.

#include <functional>
#include <vector>

#include "distpot/geometry.hpp"

namespace distpot {

// Weights R_N(j - k) with
//   sum_k R_N(j-k) f(t_k) ~ int_0^{2pi} log(4 sin^2((t_j - t)/2)) f(t) dt,
// exact for trigonometric polynomials of degree < N/2. Built from the Fourier
// series log(4 sin^2(tau/2)) = -2 sum_{m>=1} cos(m tau)/m.
struct LogQuadRule {
  int N = 0;
  std::vector<double> R;  // indexed by (j - k) mod N

  explicit LogQuadRule(int N);
  double weight(int j, int k) const {
    int d = (j - k) % N;
    if (d < 0) d += N;
    return R[d];
  }
};

// Plain arclength trapezoid sum over all components.
double integrate_boundary(
    const BoundaryNodes& nodes,
    const std::function<double(std::size_t comp, int i, Vec2 point)>& f);

// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes,
                       std::vector<double>& weights);

// Polar tensor product grid: per component, M_t equispaced rays about the
// anchor times an M_r-point Gauss-Legendre rule along each ray, scaled to the
// boundary radius. Components must be starlike about their anchors.
struct VolumeGrid {
  struct Node {
    Vec2 x{};
    double w = 0.0;
    std::size_t comp = 0;
  };
  int M_r = 0, M_t = 0;
  std::vector<Node> nodes;
  std::vector<double> component_area;
  // Boundary radius about the anchor per component and ray (size M_t each).
  std::vector<std::vector<double>> ray_radius;

  double area() const;
};

VolumeGrid volume_grid(const Domain& domain, int M_r, int M_t);

double volume_integrate(const VolumeGrid& grid,
                        const std::function<double(Vec2)>& f);
// Restricted to one component.
double volume_integrate(const VolumeGrid& grid, std::size_t comp,
                        const std::function<double(Vec2)>& f);

// Spectral derivative of 2*pi-periodic samples on the equispaced grid
// t_j = 2*pi*j/N (exact for trigonometric polynomials of degree < N/2).
std::vector<double> trig_derivative(const std::vector<double>& f);

// Trigonometric interpolation of equispaced samples, evaluated at s.
double trig_interpolate(const std::vector<double>& f, double s);

}  // namespace distpot
