// Closed-form reference values computed independently of the solver path:
// disk Fourier calculus, radial Newtonian potentials in dimensions two and
// three, explicit potentials of low-order monomial densities, the truncated
// Dirichlet energy of the lacunary trace, and brute-force dense pairings.
// Every numeric expectation in the test suite traces back to one of these.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "distpot/densities.hpp"
#include "distpot/geometry.hpp"

namespace distpot::oracles {

// Fourier data on a circle of radius R about the origin:
// a0 + sum_k (a[k-1] cos k theta + b[k-1] sin k theta).
struct DiskFourier {
  double R = 1.0;
  double a0 = 0.0;
  std::vector<double> a, b;

  double boundary_value(double theta) const;
  // Harmonic extension a0 + sum (r/R)^k (...) evaluated at x (|x| <= R).
  double interior_value(Vec2 x) const;
  // Dirichlet-to-Neumann image: a0 -> 0, mode k -> (k/R) * mode k.
  DiskFourier steklov() const;
};

// Newtonian potential of the constant unit density over the ball of radius R
// in dimension n (2 or 3), evaluated at distance r from the center.
double radial_newtonian(int n, double R, double r);

// Potentials of the unit-disk densities y1 and y1^2 at any target.
double disk_potential_x(Vec2 x);
double disk_potential_x2(Vec2 x);

// Truncated Dirichlet energy over r <= 1 - eps of the harmonic extension of
// the lacunary cosine series with exponent alpha and K terms.
double hadamard_energy(double alpha, int K, double eps);

// Extension pairing evaluated on freshly built dense grids; reference value
// for the default-resolution pairing.
double brute_pairing(const DensityRep& rep, const TestField& v,
                     const Domain& domain, int N, int M_r, int M_t);

// Classically smooth solutions with known Laplacian representations and
// analytic gradients, sampled on the given discretization.
struct CatalogEntry {
  std::string name;
  HolderSolution u;
  std::function<Vec2(Vec2)> gradient;
};
std::vector<CatalogEntry> classical_catalog(const Domain& domain,
                                            const BoundaryNodes& nodes);

}  // namespace distpot::oracles
