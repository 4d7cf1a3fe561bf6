// JSON problem configuration and the command bodies behind the CLI. Exit
// codes are stable across versions: 0 success, 1 verification failure,
// 2 invalid config, 3 incompatible data, 4 non-converged solve, 5 no oracle
// available for a convergence sweep.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "distpot/neumann.hpp"
#include "distpot/verify.hpp"

namespace distpot {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Discretization {
  int N = 256;
  int M_r = 48;
  int M_t = 96;
  int K = 16;
};

struct ProblemConfig {
  std::vector<CurveSpec> domain;
  std::string f0 = "0", f1 = "0", f2 = "0";  // density rep expressions
  std::string mu0 = "0", mu1 = "0";          // boundary datum expressions
  Discretization disc;
  Normalization normalization = Normalization::kZeroMeanPerComponent;
  double compat_tolerance = 1e-6;
  double residual_tolerance = 1e-3;
  std::string oracle;        // reference solution name for sweeps, optional
  std::vector<Vec2> probes;  // evaluation points for reports and CSV
  std::string csv_path;      // optional CSV output path
};

// Strict parsing: unknown keys anywhere are rejected, malformed JSON is
// reported with its byte position.
ProblemConfig parse_config(const std::string& json_text);
ProblemConfig load_config(const std::string& path);

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kBadConfig = 2,
  kIncompatible = 3,
  kNotConverged = 4,
  kNoOracle = 5,
};

struct SweepSpec {
  char variable = 'N';  // 'N' or 'K'
  std::vector<int> values;
};
SweepSpec parse_sweep(const std::string& text);  // e.g. "N=64,128,256"

int run_solve(const ProblemConfig& config, std::ostream& out);
int run_check_compat(const ProblemConfig& config, std::ostream& out);
int run_verify(const VerifyOptions& options, std::ostream& out);
int run_converge(const ProblemConfig& config, const SweepSpec& sweep,
                 std::ostream& out);

}  // namespace distpot
