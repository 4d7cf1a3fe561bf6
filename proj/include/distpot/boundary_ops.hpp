// Dense boundary operators per component: the log-corrected single-layer
// matrix, the adjoint double-layer matrix with its curvature diagonal, the
// rank-one augmented Dirichlet solver, and the Dirichlet-to-Neumann map
// derived from them.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "distpot/geometry.hpp"
#include "distpot/quadrature.hpp"

namespace distpot {

class HarmonicField;

// Second derivative along arclength of nodal boundary values, by spectral
// differentiation in the curve parameter.
std::vector<double> second_arclength_derivative(
    const Curve& curve, const BoundaryNodes::Component& c,
    const std::vector<double>& values);

// Second-order continuation of boundary data into the domain: the value at
// gamma(t_star) - d * nu from nodal value, outward normal derivative, second
// arclength derivative, and interior Laplacian arrays (lap may be empty for
// harmonic fields). d > 0 moves inward, d < 0 outward.
double boundary_jet_value(const BoundaryNodes::Component& c,
                          const std::vector<double>& value,
                          const std::vector<double>& dnu,
                          const std::vector<double>& arc2,
                          const std::vector<double>& lap, double t_star,
                          double d);

// Diagnostic-only assembly faults, used by the verification suite to prove
// that the identity checks can actually fail.
struct AssemblyFaults {
  bool flip_adjoint_sign = false;
};

class OperatorSet {
 public:
  static OperatorSet assemble(const Domain& domain, const BoundaryNodes& nodes,
                              const LogQuadRule& rule,
                              const AssemblyFaults& faults = {});
  static OperatorSet assemble(const Domain& domain, int N,
                              const AssemblyFaults& faults = {});

  const Domain& domain() const { return *domain_; }
  const BoundaryNodes& nodes() const { return nodes_; }
  const LogQuadRule& rule() const { return rule_; }
  int N() const { return nodes_.N; }
  std::size_t component_count() const { return v_.size(); }

  const Eigen::MatrixXd& single_layer_matrix(std::size_t j) const;
  const Eigen::MatrixXd& adjoint_double_layer(std::size_t j) const;
  const Eigen::MatrixXd& steklov_matrix(std::size_t j) const;
  const Eigen::VectorXd& weight_vector(std::size_t j) const;

  // Mean arclength spacing of component j; near-boundary evaluation switches
  // to Taylor continuation inside twice this distance.
  double node_spacing(std::size_t j) const;
  double perimeter(std::size_t j) const;

  // Solves V phi + c = v on component j with the zero-mean side constraint.
  void dirichlet_density(std::size_t j, const std::vector<double>& v,
                         std::vector<double>& phi, double& c) const;

  HarmonicField dirichlet_solve(
      const std::vector<std::vector<double>>& trace) const;
  std::vector<std::vector<double>> steklov(
      const std::vector<std::vector<double>>& trace) const;

 private:
  const Domain* domain_ = nullptr;
  BoundaryNodes nodes_;
  LogQuadRule rule_{4};
  std::vector<Eigen::MatrixXd> v_;       // single layer
  std::vector<Eigen::MatrixXd> kp_;      // adjoint double layer
  std::vector<Eigen::MatrixXd> phi_of_;  // trace -> density map
  std::vector<Eigen::RowVectorXd> c_of_; // trace -> equilibrium constant
  std::vector<Eigen::MatrixXd> splus_;
  std::vector<Eigen::VectorXd> weights_;
  std::vector<double> spacing_;
  std::vector<double> perimeter_;

  friend class HarmonicField;
};

// Harmonic extension of Dirichlet data, represented per component as a
// single layer potential plus a constant.
class HarmonicField {
 public:
  struct Eval {
    double value = 0.0;
    bool inside = false;  // false means the target lies outside the domain
    bool near = false;    // within the reduced-accuracy boundary band
  };

  HarmonicField(const OperatorSet& ops,
                std::vector<std::vector<double>> trace);

  Eval evaluate(Vec2 x) const;
  double value(Vec2 x) const { return evaluate(x).value; }
  // Gradient by differentiated plain quadrature; accuracy degrades within
  // two node spacings of the boundary (near flag on evaluate()).
  Vec2 gradient(Vec2 x) const;

  const std::vector<double>& trace(std::size_t j) const { return trace_[j]; }
  const std::vector<double>& density(std::size_t j) const { return phi_[j]; }
  const std::vector<double>& normal_derivative(std::size_t j) const {
    return q_[j];
  }
  double constant(std::size_t j) const { return c_[j]; }
  const OperatorSet& operators() const { return *ops_; }

  // Adds a constant on one component (used by normalization).
  void shift(std::size_t j, double amount);

 private:
  const OperatorSet* ops_;
  std::vector<std::vector<double>> trace_;
  std::vector<std::vector<double>> phi_;
  std::vector<std::vector<double>> q_;        // outward normal derivative
  std::vector<std::vector<double>> trace_arc2_;  // second arclength derivative
  std::vector<double> c_;
};

}  // namespace distpot
