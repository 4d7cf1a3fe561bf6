#include "distpot/normal_derivative.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace distpot {

BoundaryField sample_boundary(const std::function<double(Vec2)>& f,
                              const BoundaryNodes& nodes) {
  BoundaryField out(nodes.comp.size());
  for (std::size_t m = 0; m < nodes.comp.size(); ++m) {
    out[m].resize(nodes.N);
    for (int i = 0; i < nodes.N; ++i) out[m][i] = f(nodes.comp[m].point[i]);
  }
  return out;
}

RepFunctional::RepFunctional(DensityRep rep, const PotentialEngine& eng)
    : eng_(&eng), rep_(std::move(rep)) {
  const auto& ops = eng.operators();
  const auto& nodes = ops.nodes();
  const int N = nodes.N;
  const std::size_t M = ops.component_count();
  q_.assign(M, std::vector<double>(N, 0.0));
  bulk_integral_.assign(M, 0.0);
  flux_.assign(M, std::vector<double>(N, 0.0));

  for (std::size_t m = 0; m < M; ++m) {
    if (!rep_.f0.structurally_zero) {
      const auto p = eng.newtonian_own_trace(m, rep_.f0);
      for (int i = 0; i < N; ++i) q_[m][i] += p[i];
      bulk_integral_[m] = volume_integrate(eng.grid(), m, rep_.f0.value);
    }
    const ScalarField* fv[2] = {&rep_.f1, &rep_.f2};
    for (int j = 0; j < 2; ++j) {
      if (fv[j]->structurally_zero) continue;
      const auto d = eng.newtonian_dx_own_trace(m, *fv[j], j);
      for (int i = 0; i < N; ++i) q_[m][i] += d[i];
      const auto& c = nodes.comp[m];
      for (int i = 0; i < N; ++i) {
        const double nu = j == 0 ? c.normal[i].x : c.normal[i].y;
        flux_[m][i] += nu * fv[j]->value(c.point[i]);
      }
    }
  }
}

double RepFunctional::pair_component(std::size_t m,
                                     const std::vector<double>& phi, double c,
                                     const std::vector<double>& trace) const {
  const auto& comp = eng_->operators().nodes().comp[m];
  double total = c * bulk_integral_[m];
  for (std::size_t i = 0; i < phi.size(); ++i)
    total += comp.weight[i] * (phi[i] * q_[m][i] + flux_[m][i] * trace[i]);
  return total;
}

double RepFunctional::operator()(const HarmonicField& g) const {
  double total = 0.0;
  for (std::size_t m = 0; m < q_.size(); ++m)
    total += pair_component(m, g.density(m), g.constant(m), g.trace(m));
  return total;
}

namespace {

// int_{boundary} a . S_plus[b] dsigma from the assembled map.
double steklov_pairing(const BoundaryField& a, const BoundaryField& b,
                       const OperatorSet& ops) {
  double total = 0.0;
  for (std::size_t m = 0; m < ops.component_count(); ++m) {
    const int N = ops.N();
    Eigen::Map<const Eigen::VectorXd> bv(b[m].data(), N);
    Eigen::VectorXd sb = ops.steklov_matrix(m) * bv;
    const auto& c = ops.nodes().comp[m];
    for (int i = 0; i < N; ++i) total += c.weight[i] * a[m][i] * sb(i);
  }
  return total;
}

bool rep_is_zero(const DensityRep& rep) {
  return rep.f0.structurally_zero && !rep.has_vector_part();
}

}  // namespace

double pair_normal_derivative(const HolderSolution& u, const BoundaryField& v,
                              const PotentialEngine& eng,
                              const RepFunctional* cached) {
  const auto& ops = eng.operators();
  if (u.trace.size() != ops.component_count() ||
      v.size() != ops.component_count())
    throw std::invalid_argument(
        "pair_normal_derivative: trace/test component mismatch");
  double total = steklov_pairing(u.trace, v, ops);
  if (cached == nullptr && rep_is_zero(u.lap_rep)) return total;
  HarmonicField g(ops, v);
  if (cached != nullptr) return total + (*cached)(g);
  return total + RepFunctional(u.lap_rep, eng)(g);
}

double pair_normal_derivative_general(const BoundaryField& u_trace,
                                      const InteriorFunctional& f_tilde,
                                      const BoundaryField& v,
                                      const OperatorSet& ops) {
  double total = steklov_pairing(u_trace, v, ops);
  HarmonicField g(ops, v);
  return total + f_tilde(g);
}

double pair_boundary_data(const BoundaryField& mu0, const BoundaryField& mu1,
                          const BoundaryField& v, const OperatorSet& ops) {
  double total = steklov_pairing(mu1, v, ops);
  for (std::size_t m = 0; m < ops.component_count(); ++m) {
    const auto& c = ops.nodes().comp[m];
    for (int i = 0; i < ops.N(); ++i)
      total += c.weight[i] * mu0[m][i] * v[m][i];
  }
  return total;
}

double pair_boundary_data(const BoundaryData& g, const BoundaryField& v,
                          const OperatorSet& ops) {
  const auto& nodes = ops.nodes();
  BoundaryField mu0(nodes.comp.size(), std::vector<double>(nodes.N, 0.0));
  BoundaryField mu1 = mu0;
  for (std::size_t m = 0; m < nodes.comp.size(); ++m) {
    for (int i = 0; i < nodes.N; ++i) {
      const Vec2 p = nodes.comp[m].point[i];
      if (!g.mu0.structurally_zero) mu0[m][i] = g.mu0.value(p);
      if (!g.mu1.structurally_zero) mu1[m][i] = g.mu1.value(p);
    }
  }
  return pair_boundary_data(mu0, mu1, v, ops);
}

std::vector<TrigTest> trig_battery(const OperatorSet& ops, int K) {
  const int N = ops.N();
  if (K < 1 || 2 * K >= N)
    throw std::invalid_argument(
        "trig_battery: order must satisfy 1 <= K < N/2");
  const std::size_t M = ops.component_count();
  std::vector<TrigTest> out;
  out.reserve(M * (2 * K + 1));
  for (std::size_t m = 0; m < M; ++m) {
    const auto& c = ops.nodes().comp[m];
    const BoundaryField zero(M, std::vector<double>(N, 0.0));

    TrigTest ind;
    ind.name = "chi_" + std::to_string(m);
    ind.comp = m;
    ind.is_indicator = true;
    ind.values = zero;
    ind.values[m].assign(N, 1.0);
    out.push_back(std::move(ind));

    for (int k = 1; k <= K; ++k) {
      TrigTest tc, ts;
      tc.name = "cos" + std::to_string(k) + "t_" + std::to_string(m);
      ts.name = "sin" + std::to_string(k) + "t_" + std::to_string(m);
      tc.comp = ts.comp = m;
      tc.order = ts.order = k;
      tc.values = zero;
      ts.values = zero;
      for (int i = 0; i < N; ++i) {
        tc.values[m][i] = std::cos(k * c.t[i]);
        ts.values[m][i] = std::sin(k * c.t[i]);
      }
      out.push_back(std::move(tc));
      out.push_back(std::move(ts));
    }
  }
  return out;
}

BoundaryDataEstimate v1alpha_representation(const HolderSolution& u,
                                            const PotentialEngine& eng,
                                            int K) {
  const auto& ops = eng.operators();
  const auto& nodes = ops.nodes();
  const int N = nodes.N;
  if (K < 1 || K > N / 4)
    throw std::invalid_argument(
        "v1alpha_representation: basis order must lie in [1, N/4]");

  BoundaryDataEstimate est;
  est.mu1.assign(nodes.comp.size(), std::vector<double>(N, 0.0));
  est.mu0 = est.mu1;

  const PotentialField vol = make_potential_field(u.lap_rep, eng);
  for (std::size_t m = 0; m < nodes.comp.size(); ++m)
    for (int i = 0; i < N; ++i)
      est.mu1[m][i] = u.trace[m][i] - vol.trace[m][i];

  const RepFunctional frep(u.lap_rep, eng);
  const auto battery = trig_battery(ops, K);
  const int nb = 2 * K + 1;  // per-component basis size, indicator included

  for (std::size_t m = 0; m < nodes.comp.size(); ++m) {
    const auto& c = nodes.comp[m];
    // Battery entries of component m are contiguous.
    const std::size_t base = m * static_cast<std::size_t>(nb);

    Eigen::MatrixXd gram(nb, nb);
    Eigen::VectorXd rhs(nb);
    for (int a = 0; a < nb; ++a) {
      const auto& va = battery[base + a];
      for (int b = 0; b <= a; ++b) {
        const auto& vb = battery[base + b];
        double s = 0.0;
        for (int i = 0; i < N; ++i)
          s += c.weight[i] * va.values[m][i] * vb.values[m][i];
        gram(a, b) = gram(b, a) = s;
      }
      rhs(a) = pair_normal_derivative(u, va.values, eng, &frep) -
               steklov_pairing(est.mu1, va.values, ops);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    const double cond = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    est.gram_condition = std::max(est.gram_condition, cond);
    if (cond > 1e8) est.ill_conditioned = true;

    Eigen::VectorXd coeff = gram.ldlt().solve(rhs);
    for (int i = 0; i < N; ++i) {
      double val = 0.0;
      for (int a = 0; a < nb; ++a)
        val += coeff(a) * battery[base + a].values[m][i];
      est.mu0[m][i] = val;
    }
  }
  return est;
}

}  // namespace distpot
