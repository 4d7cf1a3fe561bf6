// Volume and layer potentials for distributional densities. Newtonian
// integrals are reduced by exact constant and linear moment identities to
// boundary integrals plus a twice-vanishing volume remainder, which keeps
// boundary-node and near-boundary targets accurate without hypersingular
// machinery.
#pragma once

#include <functional>
#include <vector>

#include "distpot/boundary_ops.hpp"
#include "distpot/densities.hpp"
#include "distpot/fieldexpr.hpp"
#include "distpot/geometry.hpp"
#include "distpot/quadrature.hpp"

namespace distpot {

// Accuracy channel for point evaluations.
struct EvalFlags {
  bool near_boundary = false;  // target inside the reduced-accuracy band
  bool near_node = false;      // target within 1e-12 of a quadrature node
  bool fd_gradient = false;    // a finite-difference gradient was used
};

// Raw single layer potential of nodal densities (one vector per component).
// Boundary-node targets are integrated with the logarithmic rule; everything
// else uses the plain trapezoid sum. A target within 1e-12 of a node (but off
// it) is evaluated at the node rule and flagged.
double single_layer(const std::vector<std::vector<double>>& phi, Vec2 x,
                    const BoundaryNodes& nodes, const LogQuadRule& rule,
                    EvalFlags* flags = nullptr);

// Evaluators of the distributional volume potential; see PotentialEngine.
struct PotentialField {
  std::function<double(Vec2)> interior;
  std::function<double(Vec2)> exterior;
  std::vector<std::vector<double>> trace;  // at boundary nodes
};

struct InfinityReport {
  double log_coefficient = 0.0;   // fitted c in theta ~ c ln R
  double mass_over_2pi = 0.0;     // I[rep] / (2 pi), the predicted c
  std::vector<double> residual;   // |theta - I * S(x - x0)| per radius
  double max_residual = 0.0;
};

// Precomputed geometric moments and volume-node tables over a fixed
// discretization. All evaluation methods are const and thread-safe.
class PotentialEngine {
 public:
  PotentialEngine(const OperatorSet& ops, const VolumeGrid& grid);

  const OperatorSet& operators() const { return *ops_; }
  const VolumeGrid& grid() const { return *grid_; }

  // Moment kernels of component m as functions of an arbitrary target:
  //   A    = integral over Omega_m of S(x-y) dy
  //   B_i  = integral of S(x-y) (y-x)_i dy
  //   C_j  = integral of dS/dx_j(x-y) dy  (the gradient of A)
  //   dB i j = d/dx_j of B_i
  // A, B, C switch to second-order boundary continuation near the component
  // boundary; dB falls back to the plain sum there (flagged).
  double moment_A(std::size_t m, Vec2 x, EvalFlags* flags = nullptr) const;
  Vec2 moment_B(std::size_t m, Vec2 x, EvalFlags* flags = nullptr) const;
  Vec2 moment_C(std::size_t m, Vec2 x, EvalFlags* flags = nullptr) const;
  double moment_dB(std::size_t m, int i, int j, Vec2 x,
                   EvalFlags* flags = nullptr) const;

  // Nodal moment traces on the component's own boundary.
  const std::vector<double>& trace_A(std::size_t m) const;
  const std::vector<double>& trace_B(std::size_t m, int i) const;
  const std::vector<double>& trace_C(std::size_t m, int j) const;
  const std::vector<double>& trace_dB(std::size_t m, int i, int j) const;

  // Newtonian potential of f over the whole domain, any target.
  double newtonian(const ScalarField& f, Vec2 x,
                   EvalFlags* flags = nullptr) const;
  // Integral of dS/dx_j(x-y) f(y) dy over the whole domain.
  double newtonian_dx(const ScalarField& f, int j, Vec2 x,
                      EvalFlags* flags = nullptr) const;

  // Own-component volume integrals at the component's boundary nodes:
  // P_m[f](y_i) and its x_j-derivative analogue. These feed boundary
  // pairings, where only same-component volume terms arise.
  std::vector<double> newtonian_own_trace(std::size_t m,
                                          const ScalarField& f) const;
  std::vector<double> newtonian_dx_own_trace(std::size_t m,
                                             const ScalarField& f,
                                             int j) const;

  // Whole-domain versions of the nodal traces: the own component goes
  // through the corrected tables above, every other component is a far
  // target and sums directly.
  std::vector<double> newtonian_trace(std::size_t m,
                                      const ScalarField& f) const;
  std::vector<double> newtonian_dx_trace(std::size_t m, const ScalarField& f,
                                         int j) const;

  // Single layer of a nodal density on component m with near-boundary
  // continuation (interior and exterior jets).
  double layer_value(std::size_t m, const std::vector<double>& phi, Vec2 x,
                     EvalFlags* flags = nullptr) const;

  // Gradient step used for moment-reduction gradients of expression fields.
  static constexpr double kReductionFdStep = 1e-3;

 private:
  struct Jet {
    std::vector<double> trace, dnu_in, dnu_out, arc2, lap_in, lap_out;
  };
  struct ComponentTables {
    std::vector<double> A, B[2], C[2], dB[2][2];
    Jet jetA, jetB[2], jetC[2];
    std::vector<std::size_t> volume_nodes;  // indices into grid nodes
    double band = 0.0;                      // near-boundary threshold
  };

  Vec2 reduction_gradient(const ScalarField& f, Vec2 x, EvalFlags* flags) const;
  double newtonian_component(std::size_t m, const ScalarField& f, Vec2 x,
                             EvalFlags* flags) const;
  double newtonian_dx_component(std::size_t m, const ScalarField& f, int j,
                                Vec2 x, EvalFlags* flags) const;

  const OperatorSet* ops_;
  const VolumeGrid* grid_;
  std::vector<ComponentTables> tables_;
};

// Three-term evaluation of the volume potential of a rep: Newtonian part of
// f0, single layers of the normal components of (f1, f2), and the
// x-derivative Newtonian integrals of (f1, f2).
double dist_volume_potential(const DensityRep& rep, const PotentialEngine& eng,
                             Vec2 x, EvalFlags* flags = nullptr);

// Same value restricted to exterior targets; throws if x is inside the
// closure or within one node spacing of the boundary.
double exterior_theta(const DensityRep& rep, const PotentialEngine& eng,
                      Vec2 x);

PotentialField make_potential_field(const DensityRep& rep,
                                    const PotentialEngine& eng);

// Fits the log coefficient of the exterior behavior along x0 + R e1 and
// compares against the integrated mass; radii must be increasing and start
// at no less than twice the domain diameter.
InfinityReport infinity_behavior(const DensityRep& rep,
                                 const PotentialEngine& eng,
                                 const std::vector<double>& radii);

}  // namespace distpot
