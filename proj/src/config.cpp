// Strict JSON problem configuration plus the command bodies shared by the
// CLI and the python bindings. Parsing rejects unknown keys so that a typo
// in a config file fails loudly instead of silently using a default.

#include "distpot/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "distpot/boundary_ops.hpp"
#include "distpot/fieldexpr.hpp"
#include "distpot/geometry.hpp"
#include "distpot/potentials.hpp"
#include "distpot/quadrature.hpp"

namespace distpot {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void require_object(const json& j, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& item : j.items()) {
    const bool known =
        std::any_of(allowed.begin(), allowed.end(),
                    [&](const char* key) { return item.key() == key; });
    if (!known) fail(where, "unknown key \"" + item.key() + "\"");
  }
}

double get_number(const json& obj, const char* key, const std::string& where,
                  double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key, "expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const char* key, const std::string& where,
            int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(where + "." + key, "expected an integer");
  return v.get<int>();
}

std::string get_string(const json& obj, const char* key,
                       const std::string& where, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(where + "." + key, "expected a string");
  return v.get<std::string>();
}

Vec2 get_vec2(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(where, "expected a pair of numbers [x, y]");
  return Vec2{j[0].get<double>(), j[1].get<double>()};
}

std::vector<double> get_number_list(const json& obj, const char* key,
                                    const std::string& where) {
  if (!obj.contains(key)) fail(where, std::string("missing key \"") + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_array()) fail(where + "." + key, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(where + "." + key, "expected an array of numbers");
    out.push_back(v[i].get<double>());
  }
  return out;
}

CurveSpec parse_curve(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected a curve object");
  const std::string kind = get_string(j, "kind", where, "");
  if (kind.empty()) fail(where, "missing key \"kind\"");
  if (!j.contains("center")) fail(where, "missing key \"center\"");
  const Vec2 center = get_vec2(j.at("center"), where + ".center");

  if (kind == "circle") {
    require_object(j, where, {"kind", "center", "radius"});
    const double r = get_number(j, "radius", where, 0.0);
    if (!(r > 0.0)) fail(where, "circle needs radius > 0");
    return CurveSpec::circle(center, r);
  }
  if (kind == "ellipse") {
    require_object(j, where, {"kind", "center", "semi_a", "semi_b"});
    const double a = get_number(j, "semi_a", where, 0.0);
    const double b = get_number(j, "semi_b", where, 0.0);
    if (!(a > 0.0) || !(b > 0.0)) fail(where, "ellipse needs semi_a, semi_b > 0");
    return CurveSpec::ellipse(center, a, b);
  }
  if (kind == "trig") {
    require_object(j, where, {"kind", "center", "x_cos", "x_sin", "y_cos", "y_sin"});
    return CurveSpec::trig(center, get_number_list(j, "x_cos", where),
                           get_number_list(j, "x_sin", where),
                           get_number_list(j, "y_cos", where),
                           get_number_list(j, "y_sin", where));
  }
  fail(where, "unknown curve kind \"" + kind + "\" (circle, ellipse, trig)");
}

ScalarField parse_field(const std::string& text, Vec2 anchor,
                        const std::string& where) {
  try {
    return ScalarField::from_expression(text, anchor);
  } catch (const fieldexpr::ParseError& e) {
    fail(where, std::string(e.what()) + " in \"" + text + "\" at offset " +
                    std::to_string(e.position));
  }
}

// Expressions use polar coordinates relative to the first component's center.
NeumannProblem build_problem(const ProblemConfig& config, const Domain& domain) {
  const Vec2 anchor = domain.anchor(0);
  NeumannProblem problem;
  problem.f.f0 = parse_field(config.f0, anchor, "config.f.f0");
  problem.f.f1 = parse_field(config.f1, anchor, "config.f.f1");
  problem.f.f2 = parse_field(config.f2, anchor, "config.f.f2");
  problem.g.mu0 = parse_field(config.mu0, anchor, "config.g.mu0");
  problem.g.mu1 = parse_field(config.mu1, anchor, "config.g.mu1");
  problem.normalization = config.normalization;
  problem.basis_order = config.disc.K;
  problem.compat_tolerance = config.compat_tolerance;
  problem.residual_tolerance = config.residual_tolerance;
  return problem;
}

void print_compatibility(const CompatibilityReport& rep, std::ostream& out) {
  char line[160];
  for (std::size_t j = 0; j < rep.defect.size(); ++j) {
    std::snprintf(line, sizeof line,
                  "component %zu: defect %.6g (tolerance %.3g) %s\n", j,
                  rep.defect[j], rep.tolerance[j],
                  std::abs(rep.defect[j]) <= rep.tolerance[j] ? "ok" : "FAIL");
    out << line;
  }
}

void write_probe_csv(const std::string& path, const std::vector<Vec2>& probes,
                     const std::vector<double>& values) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open CSV output file \"" + path + "\"");
  file << "x,y,u\n";
  char line[160];
  for (std::size_t i = 0; i < probes.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", probes[i].x,
                  probes[i].y, values[i]);
    file << line;
  }
}

std::vector<Vec2> effective_probes(const ProblemConfig& config,
                                   const Domain& domain) {
  if (!config.probes.empty()) return config.probes;
  std::vector<Vec2> probes;
  for (std::size_t j = 0; j < domain.component_count(); ++j)
    probes.push_back(domain.anchor(j));
  return probes;
}

}  // namespace

ProblemConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  require_object(root, "config",
                 {"domain", "f", "g", "discretization", "normalization",
                  "tolerances", "oracle", "output"});

  ProblemConfig cfg;
  if (!root.contains("domain")) fail("config", "missing required key \"domain\"");
  const json& dom = root.at("domain");
  if (!dom.is_array() || dom.empty())
    fail("config.domain", "expected a non-empty array of curve objects");
  for (std::size_t i = 0; i < dom.size(); ++i)
    cfg.domain.push_back(
        parse_curve(dom[i], "config.domain[" + std::to_string(i) + "]"));

  if (root.contains("f")) {
    const json& f = root.at("f");
    require_object(f, "config.f", {"f0", "f1", "f2"});
    cfg.f0 = get_string(f, "f0", "config.f", cfg.f0);
    cfg.f1 = get_string(f, "f1", "config.f", cfg.f1);
    cfg.f2 = get_string(f, "f2", "config.f", cfg.f2);
  }
  if (root.contains("g")) {
    const json& g = root.at("g");
    require_object(g, "config.g", {"mu0", "mu1"});
    cfg.mu0 = get_string(g, "mu0", "config.g", cfg.mu0);
    cfg.mu1 = get_string(g, "mu1", "config.g", cfg.mu1);
  }
  if (root.contains("discretization")) {
    const json& d = root.at("discretization");
    require_object(d, "config.discretization", {"N", "M_r", "M_t", "K"});
    cfg.disc.N = get_int(d, "N", "config.discretization", cfg.disc.N);
    cfg.disc.M_r = get_int(d, "M_r", "config.discretization", cfg.disc.M_r);
    cfg.disc.M_t = get_int(d, "M_t", "config.discretization", cfg.disc.M_t);
    cfg.disc.K = get_int(d, "K", "config.discretization", cfg.disc.K);
    if (cfg.disc.N < 8 || cfg.disc.N % 2 != 0)
      fail("config.discretization.N", "must be even and at least 8");
    if (cfg.disc.M_r < 2) fail("config.discretization.M_r", "must be at least 2");
    if (cfg.disc.M_t < 4) fail("config.discretization.M_t", "must be at least 4");
    if (cfg.disc.K < 1 || 2 * cfg.disc.K >= cfg.disc.N)
      fail("config.discretization.K", "must satisfy 1 <= K < N/2");
  }
  const std::string norm =
      get_string(root, "normalization", "config", "zero-mean");
  if (norm == "zero-mean") {
    cfg.normalization = Normalization::kZeroMeanPerComponent;
  } else if (norm == "anchor-value") {
    cfg.normalization = Normalization::kValueAtAnchor;
  } else {
    fail("config.normalization",
         "expected \"zero-mean\" or \"anchor-value\", got \"" + norm + "\"");
  }
  if (root.contains("tolerances")) {
    const json& t = root.at("tolerances");
    require_object(t, "config.tolerances", {"compat", "residual"});
    cfg.compat_tolerance =
        get_number(t, "compat", "config.tolerances", cfg.compat_tolerance);
    cfg.residual_tolerance =
        get_number(t, "residual", "config.tolerances", cfg.residual_tolerance);
    if (!(cfg.compat_tolerance > 0.0))
      fail("config.tolerances.compat", "must be positive");
    if (!(cfg.residual_tolerance > 0.0))
      fail("config.tolerances.residual", "must be positive");
  }
  cfg.oracle = get_string(root, "oracle", "config", "");
  if (root.contains("output")) {
    const json& o = root.at("output");
    require_object(o, "config.output", {"probes", "csv"});
    if (o.contains("probes")) {
      const json& p = o.at("probes");
      if (!p.is_array()) fail("config.output.probes", "expected an array of points");
      for (std::size_t i = 0; i < p.size(); ++i)
        cfg.probes.push_back(get_vec2(
            p[i], "config.output.probes[" + std::to_string(i) + "]"));
    }
    cfg.csv_path = get_string(o, "csv", "config.output", "");
  }

  // Check the expression fields up front so a syntax error is a config error,
  // not a mid-solve surprise. The anchor only shifts r/theta, so the spec
  // center is as good as the validated one here.
  const Vec2 anchor = cfg.domain.front().center;
  parse_field(cfg.f0, anchor, "config.f.f0");
  parse_field(cfg.f1, anchor, "config.f.f1");
  parse_field(cfg.f2, anchor, "config.f.f2");
  parse_field(cfg.mu0, anchor, "config.g.mu0");
  parse_field(cfg.mu1, anchor, "config.g.mu1");
  return cfg;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open config file \"" + path + "\"");
  std::ostringstream text;
  text << file.rdbuf();
  return parse_config(text.str());
}

SweepSpec parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos)
    throw ConfigError("sweep: expected N=v1,v2,... or K=v1,v2,...");
  const std::string var = text.substr(0, eq);
  if (var != "N" && var != "K")
    throw ConfigError("sweep: variable must be N or K, got \"" + var + "\"");
  SweepSpec spec;
  spec.variable = var[0];
  std::istringstream rest(text.substr(eq + 1));
  std::string token;
  while (std::getline(rest, token, ',')) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw ConfigError("sweep: bad integer \"" + token + "\"");
    }
    if (used != token.size() || value <= 0)
      throw ConfigError("sweep: bad integer \"" + token + "\"");
    spec.values.push_back(value);
  }
  if (spec.values.empty()) throw ConfigError("sweep: needs at least one value");
  return spec;
}

int run_solve(const ProblemConfig& config, std::ostream& out) {
  try {
    const Domain domain = build_domain(config.domain);
    const OperatorSet ops = OperatorSet::assemble(domain, config.disc.N);
    const VolumeGrid grid = volume_grid(domain, config.disc.M_r, config.disc.M_t);
    const PotentialEngine eng(ops, grid);
    const NeumannProblem problem = build_problem(config, domain);
    const NeumannSolution sol = solve_neumann(problem, eng);

    char line[200];
    std::snprintf(line, sizeof line,
                  "solved: %zu component(s), N=%d, grid %dx%d, trig order %d\n",
                  domain.component_count(), config.disc.N, config.disc.M_r,
                  config.disc.M_t, config.disc.K);
    out << line;
    print_compatibility(sol.compatibility, out);
    std::snprintf(line, sizeof line, "system condition estimate: %.3g\n",
                  sol.system_condition);
    out << line;
    std::snprintf(line, sizeof line,
                  "max residual over %zu test functionals: %.6g (%s)\n",
                  sol.residual.size(), sol.max_residual,
                  sol.converged ? "converged" : "NOT CONVERGED");
    out << line;
    for (std::size_t j = 0; j < sol.normalization_constant.size(); ++j) {
      std::snprintf(line, sizeof line, "normalization shift c_%zu = %.9g\n", j,
                    sol.normalization_constant[j]);
      out << line;
    }

    const std::vector<Vec2> probes = effective_probes(config, domain);
    std::vector<double> values;
    values.reserve(probes.size());
    for (const Vec2& p : probes) {
      values.push_back(sol.u.interior_eval(p));
      std::snprintf(line, sizeof line, "u(% .12g, % .12g) = %.12g\n", p.x, p.y,
                    values.back());
      out << line;
    }
    if (!config.csv_path.empty()) {
      write_probe_csv(config.csv_path, probes, values);
      out << "wrote " << config.csv_path << "\n";
    }
    return sol.converged ? kOk : kNotConverged;
  } catch (const IncompatibleDataError& err) {
    out << "incompatible data: " << err.what() << "\n";
    print_compatibility(err.report, out);
    return kIncompatible;
  } catch (const DomainError& err) {
    out << "invalid domain: " << err.what() << "\n";
    return kBadConfig;
  } catch (const fieldexpr::EvalError& err) {
    out << "expression evaluation failed: " << err.what() << "\n";
    return kBadConfig;
  } catch (const std::invalid_argument& err) {
    out << "invalid parameter: " << err.what() << "\n";
    return kBadConfig;
  }
}

int run_check_compat(const ProblemConfig& config, std::ostream& out) {
  try {
    const Domain domain = build_domain(config.domain);
    const OperatorSet ops = OperatorSet::assemble(domain, config.disc.N);
    const VolumeGrid grid = volume_grid(domain, config.disc.M_r, config.disc.M_t);
    const PotentialEngine eng(ops, grid);
    const NeumannProblem problem = build_problem(config, domain);
    const CompatibilityReport rep = check_compatibility(problem, eng);
    print_compatibility(rep, out);
    out << (rep.compatible ? "compatible\n" : "incompatible\n");
    return rep.compatible ? kOk : kIncompatible;
  } catch (const DomainError& err) {
    out << "invalid domain: " << err.what() << "\n";
    return kBadConfig;
  } catch (const fieldexpr::EvalError& err) {
    out << "expression evaluation failed: " << err.what() << "\n";
    return kBadConfig;
  } catch (const std::invalid_argument& err) {
    out << "invalid parameter: " << err.what() << "\n";
    return kBadConfig;
  }
}

int run_verify(const VerifyOptions& options, std::ostream& out) {
  const VerifyReport report = run_verification(options);
  char line[220];
  std::size_t passed = 0;
  for (const VerifyCheck& c : report.checks) {
    std::snprintf(line, sizeof line,
                  "%-46s expected % .9e  got % .9e  tol %.1e  %s\n",
                  c.name.c_str(), c.expected, c.got, c.tol,
                  c.pass ? "ok" : "FAIL");
    out << line;
    if (c.pass) ++passed;
  }
  std::snprintf(line, sizeof line, "%zu/%zu checks passed (%zu defined)\n",
                passed, report.checks.size(), report.total);
  out << line;
  return report.all_passed ? kOk : kVerifyFailed;
}

int run_converge(const ProblemConfig& config, const SweepSpec& sweep,
                 std::ostream& out) {
  // Reference solutions are zero-mean solutions on the unit disk; that is
  // enough to watch the error decay under refinement.
  std::function<double(Vec2)> reference;
  if (config.oracle == "disk-bulk") {
    reference = [](Vec2 p) { return 0.25 * dot(p, p) - 0.125; };
  } else if (config.oracle == "disk-cos-classical" ||
             config.oracle == "disk-cos-distributional") {
    reference = [](Vec2 p) { return p.x; };
  } else {
    out << "no reference solution named \"" << config.oracle << "\"\n";
    return kNoOracle;
  }

  std::vector<Vec2> probes = config.probes;
  if (probes.empty())
    probes = {{0.3, 0.0}, {0.0, 0.4}, {-0.25, 0.2}, {0.5, 0.0}, {0.35, -0.35}};

  try {
    out << "resolution,max_probe_error,max_residual\n";
    char line[160];
    for (const int value : sweep.values) {
      Discretization disc = config.disc;
      if (sweep.variable == 'N') {
        disc.N = value;
      } else {
        disc.K = value;
      }
      if (2 * disc.K >= disc.N)
        throw ConfigError("sweep: need K < N/2 at every step");
      const Domain domain = build_domain(config.domain);
      const OperatorSet ops = OperatorSet::assemble(domain, disc.N);
      const VolumeGrid grid = volume_grid(domain, disc.M_r, disc.M_t);
      const PotentialEngine eng(ops, grid);
      NeumannProblem problem = build_problem(config, domain);
      problem.basis_order = disc.K;
      const NeumannSolution sol = solve_neumann(problem, eng);
      double err = 0.0;
      for (const Vec2& p : probes)
        err = std::max(err, std::abs(sol.u.interior_eval(p) - reference(p)));
      std::snprintf(line, sizeof line, "%d,%.17g,%.17g\n", value, err,
                    sol.max_residual);
      out << line;
    }
    return kOk;
  } catch (const IncompatibleDataError& err) {
    out << "incompatible data: " << err.what() << "\n";
    return kIncompatible;
  } catch (const DomainError& err) {
    out << "invalid domain: " << err.what() << "\n";
    return kBadConfig;
  } catch (const std::invalid_argument& err) {
    out << "invalid parameter: " << err.what() << "\n";
    return kBadConfig;
  }
}

}  // namespace distpot
