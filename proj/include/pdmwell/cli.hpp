#pragma once

#include <iosfwd>
#include <string>

namespace pdmwell::cli {

/// Fully parsed invocation of one subcommand.
struct RunConfig {
  std::string command = "spectrum"; // spectrum, density, verify, limit-study
  std::string model = "semi";       // semi or confined
  double a = 1;
  double b = 2;
  double m0 = 1;
  double omega = 1;
  double hbar = 1;
  int nmax = 10;
  int samples = 400;
  std::string format = "csv"; // csv or json; verify always emits json
  std::string out_path;       // empty writes to the caller's stream
  std::string suite = "all";  // verify: all, ortho, residual, oracle, limits
  int level = 0;              // limit-study: level under study
  double b_start = 64;        // limit-study: first outer-wall position
  double b_factor = 2;        // limit-study: growth factor per step
  int steps = 5;              // limit-study: number of steps
};

/// Runs one subcommand against a validated config, writing the payload to
/// `out`. Returns 0 on success and 1 when a verification suite fails.
/// Parameter problems surface as std::domain_error.
int run_command(const RunConfig& config, std::ostream& out);

/// Command-line entry point: parses argv, dispatches, honors --out. Payload
/// goes to `out` (or the --out file), diagnostics to `err`.
/// Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pdmwell::cli
