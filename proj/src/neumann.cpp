#include "distpot/neumann.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>

namespace distpot {

namespace {

// Nodal samples of the boundary datum, zeros for structurally zero parts.
void sample_datum(const BoundaryData& g, const BoundaryNodes& nodes,
                  BoundaryField& mu0, BoundaryField& mu1) {
  mu0.assign(nodes.comp.size(), std::vector<double>(nodes.N, 0.0));
  mu1 = mu0;
  for (std::size_t m = 0; m < nodes.comp.size(); ++m) {
    for (int i = 0; i < nodes.N; ++i) {
      const Vec2 p = nodes.comp[m].point[i];
      if (!g.mu0.structurally_zero) mu0[m][i] = g.mu0.value(p);
      if (!g.mu1.structurally_zero) mu1[m][i] = g.mu1.value(p);
    }
  }
}

double boundary_rule_area(const BoundaryNodes::Component& c) {
  double area = 0.0;
  for (std::size_t i = 0; i < c.point.size(); ++i)
    area += c.weight[i] * c.point[i].x * c.normal[i].x;
  return area;
}

}  // namespace

CompatibilityReport check_compatibility(const NeumannProblem& problem,
                                        const PotentialEngine& eng) {
  const auto& ops = eng.operators();
  const auto& nodes = ops.nodes();
  CompatibilityReport report;
  for (std::size_t m = 0; m < ops.component_count(); ++m) {
    const auto& c = nodes.comp[m];
    double flux = 0.0, m0max = 0.0, m1max = 0.0;
    for (int i = 0; i < nodes.N; ++i) {
      const Vec2 p = c.point[i];
      const double v0 =
          problem.g.mu0.structurally_zero ? 0.0 : problem.g.mu0.value(p);
      const double v1 =
          problem.g.mu1.structurally_zero ? 0.0 : problem.g.mu1.value(p);
      flux += c.weight[i] * v0;
      m0max = std::max(m0max, std::abs(v0));
      m1max = std::max(m1max, std::abs(v1));
    }
    const double mass =
        density_integral(problem.f, ops.domain(), eng.grid(), nodes, m);
    const double defect = flux - mass;
    const double tol = problem.compat_tolerance * (1.0 + ops.perimeter(m)) *
                       (1.0 + m0max + m1max);
    report.defect.push_back(defect);
    report.tolerance.push_back(tol);
    if (std::abs(defect) > tol) report.compatible = false;
  }
  return report;
}

NeumannSolution solve_neumann(const NeumannProblem& problem,
                              const PotentialEngine& eng) {
  const auto& ops = eng.operators();
  const auto& nodes = ops.nodes();
  const int N = nodes.N;
  const std::size_t M = ops.component_count();
  const int K = problem.basis_order;
  if (K < 1 || 2 * K >= N)
    throw std::invalid_argument(
        "solve_neumann: basis order must satisfy 1 <= K < N/2");

  NeumannSolution sol;
  sol.compatibility = check_compatibility(problem, eng);
  if (!sol.compatibility.compatible) {
    std::string msg = "incompatible Neumann data:";
    for (std::size_t m = 0; m < sol.compatibility.defect.size(); ++m) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "%s component %zu defect %.6g (tol %.3g)",
                    m == 0 ? "" : ";", m, sol.compatibility.defect[m],
                    sol.compatibility.tolerance[m]);
      msg += buf;
    }
    throw IncompatibleDataError(std::move(msg), sol.compatibility);
  }

  BoundaryField mu0, mu1;
  sample_datum(problem.g, nodes, mu0, mu1);

  const RepFunctional frep(problem.f, eng);
  const PotentialField vol = make_potential_field(problem.f, eng);
  const auto battery = trig_battery(ops, K);
  const int nb = 2 * K;  // trial size per component, constants excluded

  BoundaryField t(M, std::vector<double>(N, 0.0));
  for (std::size_t m = 0; m < M; ++m) {
    const std::size_t base = m * static_cast<std::size_t>(2 * K + 1);
    Eigen::MatrixXd B(N, nb);
    for (int l = 0; l < nb; ++l)
      B.col(l) = Eigen::Map<const Eigen::VectorXd>(
          battery[base + 1 + l].values[m].data(), N);
    const Eigen::MatrixXd SB = ops.steklov_matrix(m) * B;
    const Eigen::VectorXd& w = ops.weight_vector(m);

    // Row k tests against v_k, column l carries the trial mode b_l:
    // A(k, l) = integral of b_l * S_plus[v_k] over the component.
    Eigen::MatrixXd A = SB.transpose() * w.asDiagonal() * B;
    Eigen::VectorXd rhs(nb);
    std::vector<double> phi;
    double cc = 0.0;
    for (int k = 0; k < nb; ++k) {
      const auto& vk = battery[base + 1 + k];
      double gv = 0.0;
      for (int i = 0; i < N; ++i)
        gv += w(i) * (mu0[m][i] * vk.values[m][i] + mu1[m][i] * SB(i, k));
      // The harmonic extension of vk vanishes off component m, so only this
      // component's share of the interior pairing survives.
      ops.dirichlet_density(m, vk.values[m], phi, cc);
      rhs(k) = gv - frep.pair_component(m, phi, cc, vk.values[m]);
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    const double rc = lu.rcond();
    sol.system_condition = std::max(
        sol.system_condition,
        rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity());
    const Eigen::VectorXd coeff = lu.solve(rhs);
    Eigen::VectorXd tm = B * coeff;
    t[m].assign(tm.data(), tm.data() + N);
  }

  BoundaryField h(M, std::vector<double>(N, 0.0));
  for (std::size_t m = 0; m < M; ++m)
    for (int i = 0; i < N; ++i) h[m][i] = t[m][i] - vol.trace[m][i];
  HarmonicField corr(ops, std::move(h));

  sol.normalization_constant.assign(M, 0.0);
  for (std::size_t m = 0; m < M; ++m) {
    double shift = 0.0;
    if (problem.normalization == Normalization::kZeroMeanPerComponent) {
      const auto& c = nodes.comp[m];
      const double area = boundary_rule_area(c);
      // Mean of the harmonic part from the exact volume integral of the
      // layer kernel, plus the equilibrium constant.
      double hint = corr.constant(m) * area;
      const auto& A = eng.trace_A(m);
      for (int i = 0; i < N; ++i)
        hint += c.weight[i] * corr.density(m)[i] * A[i];
      // Mean of the volume-potential part through the pairing with the
      // component's Newtonian moment as test field.
      TestField psi(
          "component-moment",
          [&eng, m](Vec2 x) { return eng.moment_A(m, x); },
          [&eng, m](Vec2 x) { return eng.moment_C(m, x); });
      const double pint =
          pair_density(problem.f, psi, ops.domain(), eng.grid(), nodes);
      shift = -(hint + pint) / area;
    } else {
      const Vec2 anchor = ops.domain().anchor(m);
      shift = -(dist_volume_potential(problem.f, eng, anchor) +
                corr.value(anchor));
    }
    corr.shift(m, shift);
    sol.normalization_constant[m] = shift;
  }

  sol.u.lap_rep = problem.f;
  sol.u.trace.assign(M, std::vector<double>(N, 0.0));
  for (std::size_t m = 0; m < M; ++m)
    for (int i = 0; i < N; ++i)
      sol.u.trace[m][i] = vol.trace[m][i] + corr.trace(m)[i];
  sol.u.interior_eval = [engp = &eng, rep = problem.f, corr](Vec2 x) {
    return dist_volume_potential(rep, *engp, x) + corr.value(x);
  };

  for (const auto& entry : battery) {
    const double lhs = pair_normal_derivative(sol.u, entry.values, eng, &frep);
    const double rhs = pair_boundary_data(mu0, mu1, entry.values, ops);
    double r = std::abs(lhs - rhs);
    // A non-finite pairing must fail the battery, not vanish under max().
    if (!std::isfinite(r)) r = std::numeric_limits<double>::infinity();
    sol.residual_test.push_back(entry.name);
    sol.residual.push_back(r);
    sol.max_residual = std::max(sol.max_residual, r);
  }
  sol.converged = sol.max_residual <= problem.residual_tolerance;
  return sol;
}

UniquenessCertificate uniqueness_certificate(const NeumannSolution& a,
                                             const NeumannSolution& b,
                                             const PotentialEngine& eng) {
  const auto& ops = eng.operators();
  const auto& nodes = ops.nodes();
  const std::size_t M = ops.component_count();
  const int N = nodes.N;
  if (a.u.trace.size() != M || b.u.trace.size() != M)
    throw std::invalid_argument(
        "uniqueness_certificate: component count mismatch");
  for (std::size_t m = 0; m < M; ++m)
    if (a.u.trace[m].size() != static_cast<std::size_t>(N) ||
        b.u.trace[m].size() != static_cast<std::size_t>(N))
      throw std::invalid_argument(
          "uniqueness_certificate: discretization mismatch");

  UniquenessCertificate cert;
  cert.constant.resize(M);
  for (std::size_t m = 0; m < M; ++m) {
    const auto& c = nodes.comp[m];
    double num = 0.0, den = 0.0;
    for (int i = 0; i < N; ++i) {
      num += c.weight[i] * (a.u.trace[m][i] - b.u.trace[m][i]);
      den += c.weight[i];
    }
    const double cm = num / den;
    cert.constant[m] = cm;
    for (int i = 0; i < N; ++i)
      cert.deviation =
          std::max(cert.deviation,
                   std::abs(a.u.trace[m][i] - b.u.trace[m][i] - cm));
    // A few interior probes on spokes toward well-separated nodes.
    const Vec2 anchor = ops.domain().anchor(m);
    for (int s = 0; s < 8; ++s) {
      const Vec2 p = c.point[(N / 8) * s];
      const Vec2 x{anchor.x + 0.55 * (p.x - anchor.x),
                   anchor.y + 0.55 * (p.y - anchor.y)};
      const double d = a.u.interior_eval(x) - b.u.interior_eval(x);
      cert.deviation = std::max(cert.deviation, std::abs(d - cm));
    }
  }
  return cert;
}

}  // namespace distpot
