// Distributional densities of order -1: a bulk part f0 plus first derivatives
// of Hoelder parts (f1, f2), together with the integration functional and the
// extension pairing that make such a representation act on C^1 test fields.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "distpot/fieldexpr.hpp"
#include "distpot/geometry.hpp"
#include "distpot/quadrature.hpp"

namespace distpot {

using fieldexpr::ScalarField;

// Representation f0 + d/dx1 f1 + d/dx2 f2 with all parts Hoelder on the
// closure. A rep is a concrete representative, not an equivalence class;
// distinct reps of the same distribution agree in every pairing.
struct DensityRep {
  ScalarField f0;
  ScalarField f1;
  ScalarField f2;

  static DensityRep bulk(ScalarField density);
  static DensityRep zero();

  bool has_vector_part() const {
    return !f1.structurally_zero || !f2.structurally_zero;
  }
};

// Boundary datum mu0 + (transposed Dirichlet-to-Neumann)[mu1].
struct BoundaryData {
  ScalarField mu0;
  ScalarField mu1;
};

// Test function on the closed domain. Gradients are analytic when supplied;
// otherwise centered differences with step 1e-5 are used and flagged.
class TestField {
 public:
  using ValueFn = std::function<double(Vec2)>;
  using GradFn = std::function<Vec2(Vec2)>;

  TestField(std::string name, ValueFn value, GradFn gradient);
  TestField(std::string name, ValueFn value);

  double value(Vec2 x) const { return value_(x); }
  Vec2 gradient(Vec2 x) const;
  bool fd_gradient() const { return !grad_.has_value(); }
  const std::string& name() const { return name_; }

  static constexpr double kFdStep = 1e-5;

 private:
  std::string name_;
  ValueFn value_;
  std::optional<GradFn> grad_;
};

// Solution-like object: boundary trace, interior evaluator, and a
// representation of its Laplacian.
struct HolderSolution {
  std::vector<std::vector<double>> trace;  // per component, at boundary nodes
  std::function<double(Vec2)> interior_eval;
  DensityRep lap_rep;
};

// I[f] = integral of f0 over the domain plus the flux of (f1, f2) through the
// boundary; the whole-domain and single-component versions.
double density_integral(const DensityRep& rep, const Domain& domain,
                        const VolumeGrid& grid, const BoundaryNodes& nodes);
double density_integral(const DensityRep& rep, const Domain& domain,
                        const VolumeGrid& grid, const BoundaryNodes& nodes,
                        std::size_t component);

// The extension pairing: integral of f0 v, plus the boundary flux of the
// vector part weighted by v, minus the integral of (f1, f2) . grad v.
double pair_density(const DensityRep& rep, const TestField& v,
                    const Domain& domain, const VolumeGrid& grid,
                    const BoundaryNodes& nodes);

// Discrete Hoelder seminorm surrogate: max over sampled pairs of
// |f(x) - f(y)| / |x - y|^alpha.
double holder_seminorm_estimate(const std::function<double(Vec2)>& f,
                                double alpha, const std::vector<Vec2>& points);

// Harmonic polynomials through degree 4 plus seeded smooth bump combinations;
// every member carries an analytic gradient.
std::vector<TestField> standard_test_battery(unsigned seed = 7u);

}  // namespace distpot
