// Interior Neumann solver for Delta u = f with distributional data on both
// sides: f is a density rep and the boundary datum g is mu0 plus the
// transposed Dirichlet-to-Neumann image of mu1. The boundary trace of u is
// found from a transpose-Galerkin system on the assembled operators and the
// field is rebuilt as volume potential plus harmonic correction.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "distpot/densities.hpp"
#include "distpot/normal_derivative.hpp"
#include "distpot/potentials.hpp"

namespace distpot {

enum class Normalization { kZeroMeanPerComponent, kValueAtAnchor };

struct NeumannProblem {
  DensityRep f;
  BoundaryData g;
  Normalization normalization = Normalization::kZeroMeanPerComponent;
  int basis_order = 16;            // trigonometric trial/test order K
  double compat_tolerance = 1e-6;  // scaled by perimeter and datum size
  double residual_tolerance = 1e-3;
};

// Solvability requires the flux of g over each component boundary to match
// the integral of f over that component.
struct CompatibilityReport {
  std::vector<double> defect;     // <g, indicator_j> - I_j[f]
  std::vector<double> tolerance;  // per-component scaled bound
  bool compatible = true;
};

CompatibilityReport check_compatibility(const NeumannProblem& problem,
                                        const PotentialEngine& eng);

class IncompatibleDataError : public std::runtime_error {
 public:
  IncompatibleDataError(std::string message, CompatibilityReport report)
      : std::runtime_error(std::move(message)), report(std::move(report)) {}
  CompatibilityReport report;
};

struct NeumannSolution {
  HolderSolution u;
  std::vector<double> normalization_constant;  // shift applied per component
  CompatibilityReport compatibility;
  std::vector<std::string> residual_test;  // battery entry names
  std::vector<double> residual;            // |<d_nu u, v> - <g, v>|
  double max_residual = 0.0;
  bool converged = true;
  double system_condition = 0.0;  // worst per-component Galerkin estimate
};

// Throws IncompatibleDataError when any defect exceeds its tolerance; a
// residual above problem.residual_tolerance only clears the converged flag.
NeumannSolution solve_neumann(const NeumannProblem& problem,
                              const PotentialEngine& eng);

// Two solutions of one problem may differ only by a constant per component.
struct UniquenessCertificate {
  std::vector<double> constant;  // weighted mean of u1 - u2 per component
  double deviation = 0.0;        // max |u1 - u2 - c_j| over probes
};
UniquenessCertificate uniqueness_certificate(const NeumannSolution& a,
                                             const NeumannSolution& b,
                                             const PotentialEngine& eng);

}  // namespace distpot
