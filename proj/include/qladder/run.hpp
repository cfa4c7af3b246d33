#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "qladder/systems.hpp"
#include "qladder/types.hpp"

namespace qladder::cli {

/// Configuration or usage problem; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  nlohmann::json* raw = nullptr;  // owned externally
  std::string method = "analytic";
  double t_start = 0.0;
  double t_stop = 10.0;
  std::size_t num_points = 101;
  std::string output_path;
  std::string format = "csv";  // csv | structured
};

/// One of the two ladder shapes a config can describe.
struct BuiltSystem {
  std::optional<SystemSpec> ladder;
  std::optional<DegenerateSystemSpec> degenerate;
  std::string family;
  std::size_t n_max = 0;  // truncation for open families
};

BuiltSystem build_system(const nlohmann::json& system);
RunConfig parse_run_config(nlohmann::json& config);

// Exit codes: 0 success, 1 verification failure, 2 usage/config error,
// 3 numerical failure.
int run_simulate(nlohmann::json& config, std::ostream& diag);
int run_spectral(nlohmann::json& config, std::ostream& diag);
int run_verify(nlohmann::json& config, std::ostream& diag);
int run_families(std::ostream& out);

/// Trajectory CSV rows: t,rho_0,...,rho_<top>,mean_n,norm at 17 significant
/// digits, LF line endings.
void write_trajectory_csv(const AmplitudeTrajectory& traj, std::ostream& out);

}  // namespace qladder::cli
