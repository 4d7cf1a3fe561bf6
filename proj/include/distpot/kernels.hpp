#pragma once
// Rotation-invariant fundamental solution of the Laplacian in dimension n >= 2,
// its derivatives, and the radial antiderivative used to push Newtonian volume
// moments to the boundary.

#include <array>
#include <span>
#include <vector>

#include "distpot/geometry.hpp"

namespace distpot::kernels {

// Surface measure of the unit sphere in R^n.
double sphere_measure(int n);

// S_n as a function of the radius r = |xi| (r > 0):
//   n = 2:  log(r) / (2*pi)
//   n > 2:  r^(2-n) / ((2-n) * s_n)
double fundamental_radial(int n, double r);

double eval_S(int n, std::span<const double> xi);
Vec2 grad_S2(Vec2 xi);
std::array<double, 3> grad_S3(const std::array<double, 3>& xi);
std::vector<double> grad_S(int n, std::span<const double> xi);

// Second partial derivative d_i d_j S_n at xi.
double second_derivative_S(int n, std::span<const double> xi, int i, int j);

// Radial antiderivative A_n with Laplacian(A_n(|x|)) = S_n(|x|):
//   n = 2:  r^2 (log r - 1) / (8*pi)
//   n = 3:  -r / (8*pi)
double radial_antiderivative(int n, double r);
double radial_antiderivative_deriv(int n, double r);

// Empirical check of the homogeneity bound
//   sup_xi |xi|^(|eta| + n - 2) |D^eta S_n(xi)| <= varsigma^|eta| * |eta|!
// for all multi-indices of a given order (1 or 2), sampled over the supplied
// radii and equispaced directions.
struct GrowthBoundReport {
  int n = 2;
  int order = 1;
  double observed_sup = 0.0;  // max over multi-indices and samples
  double bound = 0.0;         // varsigma^order * order!
  bool satisfied = false;
};

GrowthBoundReport growth_bound_report(int n, int order,
                                      std::span<const double> radii,
                                      int directions, double varsigma = 1.0);

}  // namespace distpot::kernels
