// Built-in identity suite. Every check compares a solver-path quantity with
// an independently derived value (Fourier spectra, radial closed forms,
// divergence-theorem integrals), so a binary can re-certify itself at run
// time. The suite also accepts injected assembly faults to prove that the
// checks can fail.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "distpot/boundary_ops.hpp"

namespace distpot {

struct VerifyCheck {
  std::string name;
  double expected = 0.0;
  double got = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  double tol_scale = 1.0;   // multiplies every tolerance
  std::string filter;       // substring selection on check names
  AssemblyFaults faults{};  // diagnostic fault injection
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;  // after filtering
  std::size_t total = 0;            // before filtering
  bool all_passed = true;
};

VerifyReport run_verification(const VerifyOptions& options = {});

}  // namespace distpot
