// Weak normal derivatives for fields whose Laplacian is a distributional
// density: the pairing <d_nu u, v> is evaluated from the boundary trace of u
// and the harmonic extension of the test field, so no hypersingular kernel
// and no off-boundary potential evaluation ever enters. Also recovers the
// boundary representation (mu0, mu1) of d_nu u.
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "distpot/boundary_ops.hpp"
#include "distpot/densities.hpp"
#include "distpot/potentials.hpp"

namespace distpot {

// Nodal boundary field, one value vector per component.
using BoundaryField = std::vector<std::vector<double>>;

BoundaryField sample_boundary(const std::function<double(Vec2)>& f,
                              const BoundaryNodes& nodes);

// The functional <E rep, .> applied to piecewise-harmonic fields given as a
// layer density plus constant per component. The volume integrals of the
// layer kernel against the rep are precomputed at the boundary nodes, so one
// instance can be paired with many extensions cheaply and without evaluating
// any potential away from the boundary.
class RepFunctional {
 public:
  RepFunctional(DensityRep rep, const PotentialEngine& eng);

  double operator()(const HarmonicField& g) const;
  // One component's share, from its layer density, equilibrium constant, and
  // prescribed trace.
  double pair_component(std::size_t m, const std::vector<double>& phi,
                        double c, const std::vector<double>& trace) const;

  const DensityRep& rep() const { return rep_; }
  double bulk_integral(std::size_t m) const { return bulk_integral_[m]; }

 private:
  const PotentialEngine* eng_;
  DensityRep rep_;
  std::vector<std::vector<double>> q_;     // per comp: volume kernel traces
  std::vector<double> bulk_integral_;      // integral of f0 per component
  std::vector<std::vector<double>> flux_;  // nodal normal . (f1, f2)
};

// Pairing evaluator standing in for the Laplacian of u; receives the test
// field's harmonic extension. The canonical instance is a RepFunctional.
using InteriorFunctional = std::function<double(const HarmonicField&)>;

// <d_nu u, v> = int u S+[v] dsigma + <E[u.lap_rep], extension of v>.
// Passing a RepFunctional built from u.lap_rep skips its reconstruction.
double pair_normal_derivative(const HolderSolution& u, const BoundaryField& v,
                              const PotentialEngine& eng,
                              const RepFunctional* cached = nullptr);

// General form: an arbitrary interior functional in place of E[lap_rep].
double pair_normal_derivative_general(const BoundaryField& u_trace,
                                      const InteriorFunctional& f_tilde,
                                      const BoundaryField& v,
                                      const OperatorSet& ops);

// <mu0 + S+^t[mu1], v> = int mu0 v dsigma + int mu1 S+[v] dsigma.
double pair_boundary_data(const BoundaryData& g, const BoundaryField& v,
                          const OperatorSet& ops);
double pair_boundary_data(const BoundaryField& mu0, const BoundaryField& mu1,
                          const BoundaryField& v, const OperatorSet& ops);

// Test battery: per component, the indicator of that component followed by
// cos(kt), sin(kt) in the curve parameter up to order K, zero elsewhere.
struct TrigTest {
  std::string name;
  std::size_t comp = 0;
  int order = 0;  // 0 for the indicator
  bool is_indicator = false;
  BoundaryField values;
};
std::vector<TrigTest> trig_battery(const OperatorSet& ops, int K);

// Nodal (mu0, mu1) recovery of d_nu u. mu1 is the trace of u minus the trace
// of the volume potential of its Laplacian; mu0 is recovered spectrally on
// the order-K trigonometric space per component through a Gram solve.
struct BoundaryDataEstimate {
  BoundaryField mu0;
  BoundaryField mu1;
  double gram_condition = 0.0;  // worst per-component estimate
  bool ill_conditioned = false;
};
BoundaryDataEstimate v1alpha_representation(const HolderSolution& u,
                                            const PotentialEngine& eng, int K);

}  // namespace distpot
