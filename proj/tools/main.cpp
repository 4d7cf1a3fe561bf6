// Command line front end. Subcommands map one-to-one onto the run_* command
// bodies; all printing and exit codes live there so the python bindings
// behave identically.

#include <exception>
#include <iostream>
#include <string>

#include <Eigen/Core>

#include "CLI11.hpp"

#include "distpot/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"distpot: planar Poisson problems with distributional data"};
  app.require_subcommand(1);

  int threads = 1;
  app.add_option("--threads", threads, "Eigen thread count")
      ->check(CLI::PositiveNumber);

  std::string config_path;
  std::string filter;
  double tol_scale = 1.0;
  std::string sweep_text;

  CLI::App* solve =
      app.add_subcommand("solve", "solve a Neumann problem from a JSON config");
  solve->add_option("config", config_path, "path to the problem config")
      ->required();

  CLI::App* verify =
      app.add_subcommand("verify", "run the built-in verification suite");
  verify->add_option("--filter", filter, "substring filter on check names");
  verify->add_option("--tol-scale", tol_scale, "scale all check tolerances")
      ->check(CLI::PositiveNumber);

  CLI::App* compat = app.add_subcommand(
      "check-compat", "report per-component compatibility defects");
  compat->add_option("config", config_path, "path to the problem config")
      ->required();

  CLI::App* converge = app.add_subcommand(
      "converge", "sweep a resolution parameter against a reference solution");
  converge->add_option("config", config_path, "path to the problem config")
      ->required();
  converge
      ->add_option("--sweep", sweep_text,
                   "comma-separated values, e.g. N=64,128,256 or K=4,8,16")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? distpot::kOk : distpot::kBadConfig;
  }

  Eigen::setNbThreads(threads);

  try {
    if (solve->parsed())
      return distpot::run_solve(distpot::load_config(config_path), std::cout);
    if (verify->parsed()) {
      distpot::VerifyOptions options;
      options.filter = filter;
      options.tol_scale = tol_scale;
      return distpot::run_verify(options, std::cout);
    }
    if (compat->parsed())
      return distpot::run_check_compat(distpot::load_config(config_path),
                                       std::cout);
    if (converge->parsed())
      return distpot::run_converge(distpot::load_config(config_path),
                                   distpot::parse_sweep(sweep_text), std::cout);
  } catch (const distpot::ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return distpot::kBadConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return distpot::kBadConfig;
  }
  return distpot::kOk;
}
