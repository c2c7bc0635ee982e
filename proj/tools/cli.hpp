#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace weingarten::cli {

/// Settings for one run. Unset fields take per-command defaults, so a config
/// file only needs what differs from them.
struct RunConfig {
  std::string command;  // "rot-r3 integrate", "parab-h3 classify", ...

  std::optional<double> a, b, c, z0;
  std::optional<double> lambda, mu, r0, r0_prime;
  std::optional<double> f0, f1, g0, g1, r1;
  std::optional<double> u0, u1, u, radius;
  std::optional<double> tol, horizon, threshold;
  std::optional<int> periods, samples, phi_samples, harmonics, v_samples;
  std::optional<std::string> surface, center_law;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;

  bool operator==(const RunConfig&) const = default;
};

/// Lists the commands in the order `figures reproduce` and the help text use.
const std::vector<std::string>& commands();

nlohmann::json to_json(const RunConfig& cfg);
/// Throws UsageError on unknown keys, wrong types or non-finite numbers.
RunConfig config_from_json(const nlohmann::json& j);

/// Fields set in `over` replace those in `base`.
RunConfig merge(RunConfig base, const RunConfig& over);

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { Pass = 0, Usage = 1, VerdictFailure = 2 };

struct RunResult {
  int exit_code = Pass;
  nlohmann::json report;
  std::vector<std::filesystem::path> artifacts;
};

/// Runs one command and writes its artifacts under the output directory
/// (WEINGARTEN_OUT wins over the config). Library errors on bad input map to
/// Usage, numerical failures to VerdictFailure.
RunResult run(const RunConfig& cfg, std::ostream& log);

/// Parses argv (flags over an optional --config file) and calls run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace weingarten::cli
