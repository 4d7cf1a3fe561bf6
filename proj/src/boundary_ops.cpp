#include "distpot/boundary_ops.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace distpot {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double log_kernel(Vec2 x, Vec2 y) { return std::log(norm(x - y)) / kTwoPi; }
}  // namespace

std::vector<double> second_arclength_derivative(
    const Curve& curve, const BoundaryNodes::Component& c,
    const std::vector<double>& values) {
  const int N = static_cast<int>(values.size());
  const std::vector<double> d1 = trig_derivative(values);
  const std::vector<double> d2 = trig_derivative(d1);
  std::vector<double> out(N);
  for (int i = 0; i < N; ++i) {
    const double sp = c.speed[i];
    const Vec2 dp = curve.derivative(c.t[i]);
    const Vec2 ddp = curve.second_derivative(c.t[i]);
    out[i] = d2[i] / (sp * sp) - d1[i] * dot(dp, ddp) / (sp * sp * sp * sp);
  }
  return out;
}

double boundary_jet_value(const BoundaryNodes::Component& c,
                          const std::vector<double>& value,
                          const std::vector<double>& dnu,
                          const std::vector<double>& arc2,
                          const std::vector<double>& lap, double t_star,
                          double d) {
  const double v = trig_interpolate(value, t_star);
  const double q = trig_interpolate(dnu, t_star);
  const double s2 = trig_interpolate(arc2, t_star);
  const double kappa = trig_interpolate(c.curvature, t_star);
  const double l = lap.empty() ? 0.0 : trig_interpolate(lap, t_star);
  return v - d * q + 0.5 * d * d * (l - kappa * q - s2);
}

OperatorSet OperatorSet::assemble(const Domain& domain, int N,
                                  const AssemblyFaults& faults) {
  return assemble(domain, boundary_nodes(domain, N), LogQuadRule(N), faults);
}

OperatorSet OperatorSet::assemble(const Domain& domain,
                                  const BoundaryNodes& nodes,
                                  const LogQuadRule& rule,
                                  const AssemblyFaults& faults) {
  if (rule.N != nodes.N)
    throw std::invalid_argument("operator assembly: rule/node size mismatch");
  OperatorSet ops;
  ops.domain_ = &domain;
  ops.nodes_ = nodes;
  ops.rule_ = rule;
  const int N = nodes.N;

  for (std::size_t j = 0; j < domain.component_count(); ++j) {
    const auto& c = nodes.comp[j];

    Eigen::MatrixXd V(N, N);
    for (int i = 0; i < N; ++i) {
      for (int k = 0; k < N; ++k) {
        if (i == k) {
          V(i, i) = rule.R[0] * c.speed[i] / (4.0 * kPi) +
                    c.weight[i] * std::log(c.speed[i]) / kTwoPi;
          continue;
        }
        const double r = norm(c.point[i] - c.point[k]);
        const double s = 2.0 * std::abs(std::sin(0.5 * (c.t[i] - c.t[k])));
        V(i, k) = rule.weight(i, k) * c.speed[k] / (4.0 * kPi) +
                  c.weight[k] * std::log(r / s) / kTwoPi;
      }
    }

    Eigen::MatrixXd Kp(N, N);
    for (int i = 0; i < N; ++i) {
      for (int k = 0; k < N; ++k) {
        if (i == k) {
          Kp(i, i) = c.curvature[i] * c.weight[i] / (4.0 * kPi);
          continue;
        }
        const Vec2 d = c.point[i] - c.point[k];
        Kp(i, k) = dot(c.normal[i], d) / (kTwoPi * dot(d, d)) * c.weight[k];
      }
    }
    if (faults.flip_adjoint_sign) Kp = -Kp;

    Eigen::VectorXd w(N);
    for (int i = 0; i < N; ++i) w(i) = c.weight[i];

    // Augmented system [V 1; w^T 0]: the extra unknown absorbs the
    // logarithmic-capacity degeneracy, the extra equation pins the density
    // mean.
    Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(N + 1, N + 1);
    aug.topLeftCorner(N, N) = V;
    aug.col(N).head(N).setOnes();
    aug.row(N).head(N) = w.transpose();
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(N + 1, N);
    rhs.topLeftCorner(N, N).setIdentity();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(aug);
    Eigen::MatrixXd sol = lu.solve(rhs);
    const double resid = (aug * sol - rhs).cwiseAbs().maxCoeff();
    if (!std::isfinite(resid) || resid > 1e-6) {
      std::ostringstream msg;
      msg << "augmented single-layer system is numerically singular on "
             "component "
          << j << " (residual " << resid
          << "); the geometry is capacity-degenerate, consider rescaling it";
      throw DomainError(msg.str());
    }

    Eigen::MatrixXd phi_of = sol.topRows(N);
    Eigen::RowVectorXd c_of = sol.row(N);
    Eigen::MatrixXd splus =
        (Kp - 0.5 * Eigen::MatrixXd::Identity(N, N)) * phi_of;

    double perim = 0.0;
    for (int i = 0; i < N; ++i) perim += c.weight[i];

    ops.v_.push_back(std::move(V));
    ops.kp_.push_back(std::move(Kp));
    ops.phi_of_.push_back(std::move(phi_of));
    ops.c_of_.push_back(std::move(c_of));
    ops.splus_.push_back(std::move(splus));
    ops.weights_.push_back(std::move(w));
    ops.perimeter_.push_back(perim);
    ops.spacing_.push_back(perim / N);
  }
  return ops;
}

const Eigen::MatrixXd& OperatorSet::single_layer_matrix(std::size_t j) const {
  return v_.at(j);
}
const Eigen::MatrixXd& OperatorSet::adjoint_double_layer(std::size_t j) const {
  return kp_.at(j);
}
const Eigen::MatrixXd& OperatorSet::steklov_matrix(std::size_t j) const {
  return splus_.at(j);
}
const Eigen::VectorXd& OperatorSet::weight_vector(std::size_t j) const {
  return weights_.at(j);
}
double OperatorSet::node_spacing(std::size_t j) const { return spacing_.at(j); }
double OperatorSet::perimeter(std::size_t j) const { return perimeter_.at(j); }

void OperatorSet::dirichlet_density(std::size_t j,
                                    const std::vector<double>& v,
                                    std::vector<double>& phi, double& c) const {
  const int N = nodes_.N;
  if (static_cast<int>(v.size()) != N)
    throw std::invalid_argument("dirichlet_density: trace size mismatch");
  Eigen::Map<const Eigen::VectorXd> vv(v.data(), N);
  Eigen::VectorXd p = phi_of_.at(j) * vv;
  phi.assign(p.data(), p.data() + N);
  c = c_of_.at(j) * vv;
}

HarmonicField OperatorSet::dirichlet_solve(
    const std::vector<std::vector<double>>& trace) const {
  return HarmonicField(*this, trace);
}

std::vector<std::vector<double>> OperatorSet::steklov(
    const std::vector<std::vector<double>>& trace) const {
  if (trace.size() != component_count())
    throw std::invalid_argument("steklov: component count mismatch");
  std::vector<std::vector<double>> out(trace.size());
  for (std::size_t j = 0; j < trace.size(); ++j) {
    Eigen::Map<const Eigen::VectorXd> vv(trace[j].data(), nodes_.N);
    Eigen::VectorXd s = splus_[j] * vv;
    out[j].assign(s.data(), s.data() + nodes_.N);
  }
  return out;
}

HarmonicField::HarmonicField(const OperatorSet& ops,
                             std::vector<std::vector<double>> trace)
    : ops_(&ops), trace_(std::move(trace)) {
  const std::size_t m = ops.component_count();
  if (trace_.size() != m)
    throw std::invalid_argument("harmonic field: component count mismatch");
  const int N = ops.N();
  phi_.resize(m);
  q_.resize(m);
  trace_arc2_.resize(m);
  c_.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    if (static_cast<int>(trace_[j].size()) != N)
      throw std::invalid_argument("harmonic field: trace size mismatch");
    ops.dirichlet_density(j, trace_[j], phi_[j], c_[j]);
    Eigen::Map<const Eigen::VectorXd> vv(trace_[j].data(), N);
    Eigen::VectorXd q = ops.steklov_matrix(j) * vv;
    q_[j].assign(q.data(), q.data() + N);
    trace_arc2_[j] = second_arclength_derivative(
        ops.domain().component(j), ops.nodes().comp[j], trace_[j]);
  }
}

void HarmonicField::shift(std::size_t j, double amount) {
  c_[j] += amount;
  for (auto& v : trace_[j]) v += amount;
}

HarmonicField::Eval HarmonicField::evaluate(Vec2 x) const {
  static const std::vector<double> kNoLap;
  const Domain& dom = ops_->domain();
  const auto inside = dom.component_containing(x);
  if (!inside) {
    // Points numerically on the boundary still get their trace value.
    std::size_t jb = 0;
    const auto cp = dom.closest_boundary_point(x, &jb);
    if (cp.distance < 1e-12) {
      Eval e;
      e.value = trig_interpolate(trace_[jb], cp.t);
      e.inside = true;
      e.near = true;
      return e;
    }
    return {std::numeric_limits<double>::quiet_NaN(), false, false};
  }

  const std::size_t j = *inside;
  const auto& c = ops_->nodes().comp[j];
  const auto cp = dom.closest_boundary_point(j, x);
  const double band = 2.0 * ops_->node_spacing(j);
  Eval e;
  e.inside = true;
  e.near = cp.distance < band;
  if (e.near) {
    // Second-order continuation from the boundary data; the trace already
    // contains the equilibrium constant.
    e.value = boundary_jet_value(c, trace_[j], q_[j], trace_arc2_[j], {}, cp.t,
                                 cp.distance);
    return e;
  }
  double sum = c_[j];
  for (int k = 0; k < ops_->N(); ++k)
    sum += c.weight[k] * phi_[j][k] * log_kernel(x, c.point[k]);
  e.value = sum;
  return e;
}

Vec2 HarmonicField::gradient(Vec2 x) const {
  const auto inside = ops_->domain().component_containing(x);
  if (!inside) return {std::numeric_limits<double>::quiet_NaN(),
                       std::numeric_limits<double>::quiet_NaN()};
  const std::size_t j = *inside;
  const auto& c = ops_->nodes().comp[j];
  Vec2 g{0.0, 0.0};
  for (int k = 0; k < ops_->N(); ++k) {
    const Vec2 d = x - c.point[k];
    const double scale = c.weight[k] * phi_[j][k] / (kTwoPi * dot(d, d));
    g.x += scale * d.x;
    g.y += scale * d.y;
  }
  return g;
}

}  // namespace distpot
