#include "distpot/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace distpot {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEightPi = 8.0 * std::numbers::pi;

inline double kernel_S(double r) { return std::log(r) / kTwoPi; }

// ln(r_ik / (2 |sin((t_i - t_k)/2)|)), the smooth complement of the periodic
// log split; its diagonal limit is ln(speed_i).
inline double log_split_rest(const BoundaryNodes::Component& c, int i, int k) {
  if (i == k) return std::log(c.speed[i]);
  const double r = norm(c.point[i] - c.point[k]);
  const double s = 2.0 * std::abs(std::sin(0.5 * (c.t[i] - c.t[k])));
  return std::log(r / s);
}

}  // namespace

double single_layer(const std::vector<std::vector<double>>& phi, Vec2 x,
                    const BoundaryNodes& nodes, const LogQuadRule& rule,
                    EvalFlags* flags) {
  if (phi.size() != nodes.comp.size())
    throw std::invalid_argument("single_layer: density component mismatch");
  const int N = nodes.N;

  // Locate the nearest node to decide whether the log rule applies.
  double best = std::numeric_limits<double>::infinity();
  std::size_t bm = 0;
  int bi = 0;
  for (std::size_t m = 0; m < nodes.comp.size(); ++m) {
    for (int i = 0; i < N; ++i) {
      const Vec2 d = x - nodes.comp[m].point[i];
      const double r2 = dot(d, d);
      if (r2 < best) {
        best = r2;
        bm = m;
        bi = i;
      }
    }
  }
  const bool node_target = best < 1e-24;
  if (node_target && best > 0.0 && flags) flags->near_node = true;

  double total = 0.0;
  for (std::size_t m = 0; m < nodes.comp.size(); ++m) {
    const auto& c = nodes.comp[m];
    if (node_target && m == bm) {
      for (int k = 0; k < N; ++k) {
        total += phi[m][k] * (rule.weight(bi, k) * c.speed[k] / (4.0 * kPi) +
                              c.weight[k] * log_split_rest(c, bi, k) / kTwoPi);
      }
      continue;
    }
    for (int k = 0; k < N; ++k)
      total += phi[m][k] * c.weight[k] * kernel_S(norm(x - c.point[k]));
  }
  return total;
}

PotentialEngine::PotentialEngine(const OperatorSet& ops, const VolumeGrid& grid)
    : ops_(&ops), grid_(&grid) {
  const auto& nodes = ops.nodes();
  const int N = nodes.N;
  const auto& rule = ops.rule();
  const double h = kTwoPi / N;
  const std::size_t M = ops.component_count();
  tables_.resize(M);

  for (std::size_t m = 0; m < M; ++m) {
    auto& tab = tables_[m];
    const auto& c = nodes.comp[m];
    const Curve& curve = ops.domain().component(m);
    tab.band = 2.0 * ops.node_spacing(m);
    for (std::size_t idx = 0; idx < grid.nodes.size(); ++idx)
      if (grid.nodes[idx].comp == m) tab.volume_nodes.push_back(idx);

    tab.A.assign(N, 0.0);
    for (int i = 0; i < 2; ++i) {
      tab.B[i].assign(N, 0.0);
      for (int j = 0; j < 2; ++j) tab.dB[i][j].assign(N, 0.0);
    }

    // Node-target boundary moments through the periodic log split. The
    // smooth prefactors all vanish on the diagonal.
    for (int i = 0; i < N; ++i) {
      double a = 0.0, b0 = 0.0, b1 = 0.0;
      double db[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
      for (int k = 0; k < N; ++k) {
        if (k == i) continue;
        const Vec2 d = c.point[k] - c.point[i];  // y - x
        const double r2 = dot(d, d);
        const double rest = log_split_rest(c, i, k);
        const double kress = rule.weight(i, k);

        const double ga = dot(d, c.normal[k]) * c.speed[k] / kEightPi;
        a += kress * ga + h * (2.0 * rest - 1.0) * ga;

        const double gb0 = c.normal[k].x * r2 * c.speed[k] / kEightPi;
        const double gb1 = c.normal[k].y * r2 * c.speed[k] / kEightPi;
        b0 += kress * gb0 + h * (2.0 * rest - 1.0) * gb0;
        b1 += kress * gb1 + h * (2.0 * rest - 1.0) * gb1;

        for (int bi = 0; bi < 2; ++bi) {
          const double nu_i = bi == 0 ? c.normal[k].x : c.normal[k].y;
          for (int bj = 0; bj < 2; ++bj) {
            const double xmy = bj == 0 ? -d.x : -d.y;  // (x - y)_j
            const double mfac = nu_i * xmy * c.speed[k] / kTwoPi;
            db[bi][bj] += 0.5 * kress * mfac + h * rest * mfac;
          }
        }
      }
      tab.A[i] = a;
      tab.B[0][i] = b0;
      tab.B[1][i] = b1;
      for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj) tab.dB[bi][bj][i] = db[bi][bj];
    }

    // C_j = -(single layer of nu_j); reuse the assembled matrix.
    Eigen::VectorXd nu0(N), nu1(N);
    for (int i = 0; i < N; ++i) {
      nu0(i) = c.normal[i].x;
      nu1(i) = c.normal[i].y;
    }
    const Eigen::MatrixXd& V = ops.single_layer_matrix(m);
    const Eigen::MatrixXd& Kp = ops.adjoint_double_layer(m);
    Eigen::VectorXd c0 = -(V * nu0), c1 = -(V * nu1);
    tab.C[0].assign(c0.data(), c0.data() + N);
    tab.C[1].assign(c1.data(), c1.data() + N);

    // Interior/exterior continuation jets.
    tab.jetA.trace = tab.A;
    tab.jetA.arc2 = second_arclength_derivative(curve, c, tab.A);
    tab.jetA.dnu_in.resize(N);
    for (int i = 0; i < N; ++i)
      tab.jetA.dnu_in[i] =
          c.normal[i].x * tab.C[0][i] + c.normal[i].y * tab.C[1][i];
    tab.jetA.dnu_out = tab.jetA.dnu_in;  // the gradient is continuous
    tab.jetA.lap_in.assign(N, 1.0);
    tab.jetA.lap_out.clear();

    for (int bi = 0; bi < 2; ++bi) {
      auto& jet = tab.jetB[bi];
      jet.trace = tab.B[bi];
      jet.arc2 = second_arclength_derivative(curve, c, jet.trace);
      jet.dnu_in.resize(N);
      for (int i = 0; i < N; ++i)
        jet.dnu_in[i] = c.normal[i].x * tab.dB[bi][0][i] +
                        c.normal[i].y * tab.dB[bi][1][i];
      jet.dnu_out = jet.dnu_in;
      jet.lap_in.resize(N);
      for (int i = 0; i < N; ++i) jet.lap_in[i] = -2.0 * tab.C[bi][i];
      jet.lap_out = jet.lap_in;
    }

    for (int bj = 0; bj < 2; ++bj) {
      auto& jet = tab.jetC[bj];
      const Eigen::VectorXd& nu = bj == 0 ? nu0 : nu1;
      jet.trace = tab.C[bj];
      jet.arc2 = second_arclength_derivative(curve, c, jet.trace);
      Eigen::VectorXd qin = 0.5 * nu - Kp * nu;   // density is -nu_j
      Eigen::VectorXd qout = -0.5 * nu - Kp * nu;
      jet.dnu_in.assign(qin.data(), qin.data() + N);
      jet.dnu_out.assign(qout.data(), qout.data() + N);
      jet.lap_in.clear();
      jet.lap_out.clear();
    }
  }
}

const std::vector<double>& PotentialEngine::trace_A(std::size_t m) const {
  return tables_.at(m).A;
}
const std::vector<double>& PotentialEngine::trace_B(std::size_t m,
                                                    int i) const {
  return tables_.at(m).B[i];
}
const std::vector<double>& PotentialEngine::trace_C(std::size_t m,
                                                    int j) const {
  return tables_.at(m).C[j];
}
const std::vector<double>& PotentialEngine::trace_dB(std::size_t m, int i,
                                                     int j) const {
  return tables_.at(m).dB[i][j];
}

namespace {

// Signed inward distance at a closest-point record: positive inside.
double signed_inward(const Domain& domain, std::size_t m,
                     const Domain::ClosestPoint& cp, Vec2 x) {
  const Vec2 nu = domain.component(m).outward_normal(cp.t);
  return dot(cp.point - x, nu) >= 0.0 ? cp.distance : -cp.distance;
}

}  // namespace

double PotentialEngine::moment_A(std::size_t m, Vec2 x,
                                 EvalFlags* flags) const {
  const auto& tab = tables_.at(m);
  const auto& c = ops_->nodes().comp[m];
  const auto cp = ops_->domain().closest_boundary_point(m, x);
  if (cp.distance < tab.band) {
    if (flags) flags->near_boundary = true;
    const double d = signed_inward(ops_->domain(), m, cp, x);
    const auto& lap = d >= 0.0 ? tab.jetA.lap_in : tab.jetA.lap_out;
    return boundary_jet_value(c, tab.jetA.trace, tab.jetA.dnu_in,
                              tab.jetA.arc2, lap, cp.t, d);
  }
  double sum = 0.0;
  for (int k = 0; k < ops_->N(); ++k) {
    const Vec2 d = c.point[k] - x;
    sum += c.weight[k] * dot(d, c.normal[k]) *
           (2.0 * std::log(norm(d)) - 1.0) / kEightPi;
  }
  return sum;
}

Vec2 PotentialEngine::moment_B(std::size_t m, Vec2 x, EvalFlags* flags) const {
  const auto& tab = tables_.at(m);
  const auto& c = ops_->nodes().comp[m];
  const auto cp = ops_->domain().closest_boundary_point(m, x);
  if (cp.distance < tab.band) {
    if (flags) flags->near_boundary = true;
    const double d = signed_inward(ops_->domain(), m, cp, x);
    Vec2 out;
    out.x = boundary_jet_value(c, tab.jetB[0].trace, tab.jetB[0].dnu_in,
                               tab.jetB[0].arc2, tab.jetB[0].lap_in, cp.t, d);
    out.y = boundary_jet_value(c, tab.jetB[1].trace, tab.jetB[1].dnu_in,
                               tab.jetB[1].arc2, tab.jetB[1].lap_in, cp.t, d);
    return out;
  }
  Vec2 sum{0.0, 0.0};
  for (int k = 0; k < ops_->N(); ++k) {
    const Vec2 d = c.point[k] - x;
    const double r2 = dot(d, d);
    const double w =
        c.weight[k] * r2 * (std::log(r2) - 1.0) / kEightPi;  // W(r)
    sum.x += w * c.normal[k].x;
    sum.y += w * c.normal[k].y;
  }
  return sum;
}

Vec2 PotentialEngine::moment_C(std::size_t m, Vec2 x, EvalFlags* flags) const {
  const auto& tab = tables_.at(m);
  const auto& c = ops_->nodes().comp[m];
  const auto cp = ops_->domain().closest_boundary_point(m, x);
  if (cp.distance < tab.band) {
    if (flags) flags->near_boundary = true;
    const double d = signed_inward(ops_->domain(), m, cp, x);
    Vec2 out;
    for (int j = 0; j < 2; ++j) {
      const auto& jet = tab.jetC[j];
      const auto& dnu = d >= 0.0 ? jet.dnu_in : jet.dnu_out;
      const double v =
          boundary_jet_value(c, jet.trace, dnu, jet.arc2, {}, cp.t, d);
      (j == 0 ? out.x : out.y) = v;
    }
    return out;
  }
  Vec2 sum{0.0, 0.0};
  for (int k = 0; k < ops_->N(); ++k) {
    const double s = c.weight[k] * kernel_S(norm(x - c.point[k]));
    sum.x -= s * c.normal[k].x;
    sum.y -= s * c.normal[k].y;
  }
  return sum;
}

double PotentialEngine::moment_dB(std::size_t m, int i, int j, Vec2 x,
                                  EvalFlags* flags) const {
  const auto& c = ops_->nodes().comp[m];
  const auto cp = ops_->domain().closest_boundary_point(m, x);
  if (cp.distance < tables_.at(m).band && flags) flags->near_boundary = true;
  double sum = 0.0;
  for (int k = 0; k < ops_->N(); ++k) {
    const Vec2 d = x - c.point[k];
    const double r = norm(d);
    // The integrand scales like r log r, so a coincident node contributes
    // nothing; skipping it avoids 0 * log 0.
    if (r < 1e-14) continue;
    const double nu_i = i == 0 ? c.normal[k].x : c.normal[k].y;
    const double dj = j == 0 ? d.x : d.y;
    sum += c.weight[k] * nu_i * dj * kernel_S(r);
  }
  return sum;
}

Vec2 PotentialEngine::reduction_gradient(const ScalarField& f, Vec2 x,
                                         EvalFlags* flags) const {
  const double h = kReductionFdStep;
  Vec2 g;
  g.x = (f.value({x.x + h, x.y}) - f.value({x.x - h, x.y})) / (2.0 * h);
  g.y = (f.value({x.x, x.y + h}) - f.value({x.x, x.y - h})) / (2.0 * h);
  if (flags) flags->fd_gradient = true;
  // A wild slope signals a merely-Hoelder part; constant reduction is then
  // the better-conditioned choice.
  if (!std::isfinite(g.x) || !std::isfinite(g.y) ||
      std::abs(g.x) + std::abs(g.y) > 100.0)
    return {0.0, 0.0};
  return g;
}

double PotentialEngine::newtonian_component(std::size_t m, const ScalarField& f,
                                            Vec2 x, EvalFlags* flags) const {
  const auto& tab = tables_.at(m);
  const auto cp = ops_->domain().closest_boundary_point(m, x);

  auto remainder = [&](Vec2 xs, double fx, Vec2 g) {
    double sum = 0.0;
    for (std::size_t idx : tab.volume_nodes) {
      const auto& node = grid_->nodes[idx];
      const Vec2 dy = node.x - x;
      const double r2 = dot(dy, dy);
      if (r2 < 1e-28) continue;
      const Vec2 ds = node.x - xs;
      const double bracket = f.value(node.x) - fx - g.x * ds.x - g.y * ds.y;
      sum += node.w * bracket * 0.5 * std::log(r2) / kTwoPi;
    }
    return sum;
  };

  if (cp.distance >= tab.band) {
    const bool inside = ops_->domain().component_containing(x) ==
                        std::optional<std::size_t>(m);
    if (!inside) {
      double sum = 0.0;
      for (std::size_t idx : tab.volume_nodes) {
        const auto& node = grid_->nodes[idx];
        sum += node.w * f.value(node.x) * kernel_S(norm(node.x - x));
      }
      return sum;
    }
    const double fx = f.value(x);
    const Vec2 g = reduction_gradient(f, x, flags);
    const Vec2 B = moment_B(m, x, flags);
    return fx * moment_A(m, x, flags) + g.x * B.x + g.y * B.y +
           remainder(x, fx, g);
  }

  if (flags) flags->near_boundary = true;
  const Vec2 xs = cp.point;
  const double fx = f.value(xs);
  const Vec2 g = reduction_gradient(f, xs, flags);
  const double A = moment_A(m, x, flags);
  const Vec2 B = moment_B(m, x, flags);
  return fx * A + g.x * (B.x + (x.x - xs.x) * A) +
         g.y * (B.y + (x.y - xs.y) * A) + remainder(xs, fx, g);
}

double PotentialEngine::newtonian(const ScalarField& f, Vec2 x,
                                  EvalFlags* flags) const {
  if (f.structurally_zero) return 0.0;
  double total = 0.0;
  for (std::size_t m = 0; m < tables_.size(); ++m)
    total += newtonian_component(m, f, x, flags);
  return total;
}

double PotentialEngine::newtonian_dx_component(std::size_t m,
                                               const ScalarField& f, int j,
                                               Vec2 x, EvalFlags* flags) const {
  const auto& tab = tables_.at(m);
  const auto cp = ops_->domain().closest_boundary_point(m, x);

  auto remainder = [&](Vec2 xs, double fx, Vec2 g) {
    double sum = 0.0;
    for (std::size_t idx : tab.volume_nodes) {
      const auto& node = grid_->nodes[idx];
      const Vec2 dy = x - node.x;  // x - y
      const double r2 = dot(dy, dy);
      if (r2 < 1e-28) continue;
      const Vec2 ds = node.x - xs;
      const double bracket = f.value(node.x) - fx - g.x * ds.x - g.y * ds.y;
      sum += node.w * bracket * (j == 0 ? dy.x : dy.y) / (kTwoPi * r2);
    }
    return sum;
  };

  if (cp.distance >= tab.band) {
    const bool inside = ops_->domain().component_containing(x) ==
                        std::optional<std::size_t>(m);
    if (!inside) {
      double sum = 0.0;
      for (std::size_t idx : tab.volume_nodes) {
        const auto& node = grid_->nodes[idx];
        const Vec2 d = x - node.x;
        sum += node.w * f.value(node.x) * (j == 0 ? d.x : d.y) /
               (kTwoPi * dot(d, d));
      }
      return sum;
    }
    const double fx = f.value(x);
    const Vec2 g = reduction_gradient(f, x, flags);
    const Vec2 C = moment_C(m, x, flags);
    const double Cj = j == 0 ? C.x : C.y;
    const double A = moment_A(m, x, flags);
    double val = fx * Cj;
    val += g.x * (moment_dB(m, 0, j, x, flags) + (j == 0 ? A : 0.0));
    val += g.y * (moment_dB(m, 1, j, x, flags) + (j == 1 ? A : 0.0));
    return val + remainder(x, fx, g);
  }

  if (flags) flags->near_boundary = true;
  const Vec2 xs = cp.point;
  const double fx = f.value(xs);
  const Vec2 g = reduction_gradient(f, xs, flags);
  const Vec2 C = moment_C(m, x, flags);
  const double Cj = j == 0 ? C.x : C.y;
  const double A = moment_A(m, x, flags);
  double val = fx * Cj;
  val += g.x * (moment_dB(m, 0, j, x, flags) + (j == 0 ? A : 0.0) +
                (x.x - xs.x) * Cj);
  val += g.y * (moment_dB(m, 1, j, x, flags) + (j == 1 ? A : 0.0) +
                (x.y - xs.y) * Cj);
  return val + remainder(xs, fx, g);
}

double PotentialEngine::newtonian_dx(const ScalarField& f, int j, Vec2 x,
                                     EvalFlags* flags) const {
  if (f.structurally_zero) return 0.0;
  double total = 0.0;
  for (std::size_t m = 0; m < tables_.size(); ++m)
    total += newtonian_dx_component(m, f, j, x, flags);
  return total;
}

std::vector<double> PotentialEngine::newtonian_own_trace(
    std::size_t m, const ScalarField& f) const {
  const auto& tab = tables_.at(m);
  const auto& c = ops_->nodes().comp[m];
  const int N = ops_->N();
  std::vector<double> out(N, 0.0);
  if (f.structurally_zero) return out;
  for (int i = 0; i < N; ++i) {
    const Vec2 y = c.point[i];
    const double fx = f.value(y);
    const Vec2 g = reduction_gradient(f, y, nullptr);
    double val = fx * tab.A[i] + g.x * tab.B[0][i] + g.y * tab.B[1][i];
    for (std::size_t idx : tab.volume_nodes) {
      const auto& node = grid_->nodes[idx];
      const Vec2 ds = node.x - y;
      const double bracket = f.value(node.x) - fx - g.x * ds.x - g.y * ds.y;
      val += node.w * bracket * 0.5 * std::log(dot(ds, ds)) / kTwoPi;
    }
    out[i] = val;
  }
  return out;
}

std::vector<double> PotentialEngine::newtonian_dx_own_trace(
    std::size_t m, const ScalarField& f, int j) const {
  const auto& tab = tables_.at(m);
  const auto& c = ops_->nodes().comp[m];
  const int N = ops_->N();
  std::vector<double> out(N, 0.0);
  if (f.structurally_zero) return out;
  for (int i = 0; i < N; ++i) {
    const Vec2 y = c.point[i];
    const double fx = f.value(y);
    const Vec2 g = reduction_gradient(f, y, nullptr);
    double val = fx * tab.C[j][i];
    val += g.x * (tab.dB[0][j][i] + (j == 0 ? tab.A[i] : 0.0));
    val += g.y * (tab.dB[1][j][i] + (j == 1 ? tab.A[i] : 0.0));
    for (std::size_t idx : tab.volume_nodes) {
      const auto& node = grid_->nodes[idx];
      const Vec2 d = y - node.x;
      const Vec2 ds = node.x - y;
      const double bracket = f.value(node.x) - fx - g.x * ds.x - g.y * ds.y;
      val += node.w * bracket * (j == 0 ? d.x : d.y) / (kTwoPi * dot(d, d));
    }
    out[i] = val;
  }
  return out;
}

std::vector<double> PotentialEngine::newtonian_trace(
    std::size_t m, const ScalarField& f) const {
  std::vector<double> out = newtonian_own_trace(m, f);
  if (f.structurally_zero) return out;
  const auto& c = ops_->nodes().comp[m];
  for (std::size_t m2 = 0; m2 < tables_.size(); ++m2) {
    if (m2 == m) continue;
    for (int i = 0; i < ops_->N(); ++i)
      out[i] += newtonian_component(m2, f, c.point[i], nullptr);
  }
  return out;
}

std::vector<double> PotentialEngine::newtonian_dx_trace(std::size_t m,
                                                        const ScalarField& f,
                                                        int j) const {
  std::vector<double> out = newtonian_dx_own_trace(m, f, j);
  if (f.structurally_zero) return out;
  const auto& c = ops_->nodes().comp[m];
  for (std::size_t m2 = 0; m2 < tables_.size(); ++m2) {
    if (m2 == m) continue;
    for (int i = 0; i < ops_->N(); ++i)
      out[i] += newtonian_dx_component(m2, f, j, c.point[i], nullptr);
  }
  return out;
}

double PotentialEngine::layer_value(std::size_t m,
                                    const std::vector<double>& phi, Vec2 x,
                                    EvalFlags* flags) const {
  const auto& tab = tables_.at(m);
  const auto& c = ops_->nodes().comp[m];
  const int N = ops_->N();
  const auto cp = ops_->domain().closest_boundary_point(m, x);
  if (cp.distance < tab.band) {
    if (flags) flags->near_boundary = true;
    Eigen::Map<const Eigen::VectorXd> pv(phi.data(), N);
    Eigen::VectorXd tr = ops_->single_layer_matrix(m) * pv;
    Eigen::VectorXd kp = ops_->adjoint_double_layer(m) * pv;
    std::vector<double> trace(tr.data(), tr.data() + N);
    const double d = signed_inward(ops_->domain(), m, cp, x);
    std::vector<double> dnu(N);
    for (int i = 0; i < N; ++i)
      dnu[i] = (d >= 0.0 ? -0.5 : 0.5) * phi[i] + kp(i);
    const auto arc2 = second_arclength_derivative(
        ops_->domain().component(m), c, trace);
    return boundary_jet_value(c, trace, dnu, arc2, {}, cp.t, d);
  }
  double sum = 0.0;
  for (int k = 0; k < N; ++k)
    sum += c.weight[k] * phi[k] * kernel_S(norm(x - c.point[k]));
  return sum;
}

double dist_volume_potential(const DensityRep& rep, const PotentialEngine& eng,
                             Vec2 x, EvalFlags* flags) {
  double total = 0.0;
  if (!rep.f0.structurally_zero) total += eng.newtonian(rep.f0, x, flags);
  const ScalarField* fv[2] = {&rep.f1, &rep.f2};
  const auto& nodes = eng.operators().nodes();
  for (int j = 0; j < 2; ++j) {
    if (fv[j]->structurally_zero) continue;
    for (std::size_t m = 0; m < eng.operators().component_count(); ++m) {
      const auto& c = nodes.comp[m];
      std::vector<double> phi(nodes.N);
      for (int k = 0; k < nodes.N; ++k) {
        const double nu = j == 0 ? c.normal[k].x : c.normal[k].y;
        phi[k] = nu * fv[j]->value(c.point[k]);
      }
      total += eng.layer_value(m, phi, x, flags);
    }
    total += eng.newtonian_dx(*fv[j], j, x, flags);
  }
  return total;
}

double exterior_theta(const DensityRep& rep, const PotentialEngine& eng,
                      Vec2 x) {
  const auto& dom = eng.operators().domain();
  if (dom.component_containing(x))
    throw std::invalid_argument("exterior_theta: target lies inside the domain");
  std::size_t jb = 0;
  const auto cp = dom.closest_boundary_point(x, &jb);
  if (cp.distance < eng.operators().node_spacing(jb))
    throw std::invalid_argument(
        "exterior_theta: target closer to the boundary than one node spacing");
  return dist_volume_potential(rep, eng, x, nullptr);
}

PotentialField make_potential_field(const DensityRep& rep,
                                    const PotentialEngine& eng) {
  PotentialField field;
  const PotentialEngine* e = &eng;
  field.interior = [e, rep](Vec2 x) {
    return dist_volume_potential(rep, *e, x, nullptr);
  };
  field.exterior = field.interior;
  // Traces are assembled from the nodal paths rather than generic target
  // evaluation: own-component volume terms go through the corrected tables
  // and the flux layers through the single layer matrix, which is exact in
  // the boundary limit.
  const auto& ops = eng.operators();
  const auto& nodes = ops.nodes();
  const int N = nodes.N;
  const std::size_t M = nodes.comp.size();
  field.trace.assign(M, std::vector<double>(N, 0.0));
  const ScalarField* fv[2] = {&rep.f1, &rep.f2};
  for (std::size_t m = 0; m < M; ++m) {
    auto& tr = field.trace[m];
    if (!rep.f0.structurally_zero) {
      const auto part = eng.newtonian_trace(m, rep.f0);
      for (int i = 0; i < N; ++i) tr[i] += part[i];
    }
    for (int j = 0; j < 2; ++j) {
      if (fv[j]->structurally_zero) continue;
      const auto part = eng.newtonian_dx_trace(m, *fv[j], j);
      for (int i = 0; i < N; ++i) tr[i] += part[i];
      for (std::size_t m2 = 0; m2 < M; ++m2) {
        const auto& c2 = nodes.comp[m2];
        std::vector<double> phi(N);
        for (int k = 0; k < N; ++k) {
          const double nu = j == 0 ? c2.normal[k].x : c2.normal[k].y;
          phi[k] = nu * fv[j]->value(c2.point[k]);
        }
        if (m2 == m) {
          Eigen::Map<const Eigen::VectorXd> pv(phi.data(), N);
          const Eigen::VectorXd vtr = ops.single_layer_matrix(m) * pv;
          for (int i = 0; i < N; ++i) tr[i] += vtr[i];
        } else {
          for (int i = 0; i < N; ++i)
            tr[i] += eng.layer_value(m2, phi, nodes.comp[m].point[i], nullptr);
        }
      }
    }
  }
  return field;
}

InfinityReport infinity_behavior(const DensityRep& rep,
                                 const PotentialEngine& eng,
                                 const std::vector<double>& radii) {
  if (radii.size() < 2)
    throw std::invalid_argument("infinity_behavior needs at least two radii");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (radii[i] <= radii[i - 1])
      throw std::invalid_argument("infinity_behavior radii must increase");

  const auto& dom = eng.operators().domain();
  Vec2 lo{1e300, 1e300}, hi{-1e300, -1e300};
  for (std::size_t j = 0; j < dom.component_count(); ++j) {
    const auto box = dom.bounding_box(j);
    lo.x = std::min(lo.x, box[0].x);
    lo.y = std::min(lo.y, box[0].y);
    hi.x = std::max(hi.x, box[1].x);
    hi.y = std::max(hi.y, box[1].y);
  }
  const double diam = norm(hi - lo);
  if (radii.front() < 2.0 * diam)
    throw std::invalid_argument(
        "infinity_behavior radii must start at twice the domain diameter");

  // Expansion point: area centroid of the first component.
  const auto& c0 = eng.operators().nodes().comp[0];
  double area = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < c0.point.size(); ++i) {
    area += c0.weight[i] * c0.point[i].x * c0.normal[i].x;
    cx += c0.weight[i] * 0.5 * c0.point[i].x * c0.point[i].x *
          c0.normal[i].x;
    cy += c0.weight[i] * 0.5 * c0.point[i].y * c0.point[i].y *
          c0.normal[i].y;
  }
  const Vec2 x0{cx / area, cy / area};

  const double mass = density_integral(rep, dom, eng.grid(),
                                       eng.operators().nodes());
  InfinityReport report;
  report.mass_over_2pi = mass / kTwoPi;
  std::vector<double> theta(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const Vec2 x{x0.x + radii[i], x0.y};
    theta[i] = dist_volume_potential(rep, eng, x, nullptr);
    report.residual.push_back(
        std::abs(theta[i] - mass * kernel_S(radii[i])));
  }
  report.max_residual = 0.0;
  for (double r : report.residual)
    report.max_residual = std::max(report.max_residual, r);
  const std::size_t n = radii.size();
  report.log_coefficient = (theta[n - 1] - theta[n - 2]) /
                           (std::log(radii[n - 1]) - std::log(radii[n - 2]));
  return report;
}

}  // namespace distpot
