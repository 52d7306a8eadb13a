#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace defgpa::cli {

enum ExitCode : int { kOk = 0, kRuntime = 1, kUsage = 2 };

struct RunConfig {
  std::string input;
  std::string format = "json";
  std::string model = "affine";
  long ctrl = 3;
  long flat_axes = 0;
  double theta = 1.0;
  std::string nu = "auto";
  std::optional<double> lambda_internal;
  std::optional<std::string> reflection_ref;
  std::optional<std::string> output;
  bool with_cve = false;
  bool timing = false;
  long group_size = 1;
  std::optional<unsigned long long> seed;
  std::vector<double> theta_grid;
};

/// Parses argv and dispatches to solve / sweep / cve / prior.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_solve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_cve(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_prior(const RunConfig& config, std::ostream& out, std::ostream& err);

/// 11 log-spaced values over [1e-5, 1e5].
std::vector<double> default_theta_grid();

}  // namespace defgpa::cli
