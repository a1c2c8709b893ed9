#ifndef VORTEX3_CLI_COMMANDS_HPP
#define VORTEX3_CLI_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace vortex3::cli {

enum ExitCode : int { exit_ok = 0, exit_config_error = 1, exit_runtime_error = 2 };

//! Fixed 17-significant-digit formatting used for every CSV field.
std::string format_double(double v);

//! Runs the configured formulation(s), writing trajectory_<name>.csv and summary.json into `out`.
int cmd_simulate(const Config& cfg, const std::filesystem::path& out, std::ostream& log);

//! Vorticity parameters, M = 0 region, stratum and equilibria; plus the state's classification
//! when an initial condition is configured.
nlohmann::json classify_report(const Config& cfg);
int cmd_classify(const Config& cfg, const std::filesystem::path* out, std::ostream& os);

//! One CSV record per grid point in grid order (header first); empty for an empty grid.
std::vector<std::string> sweep_rows(const SweepConfig& sweep, unsigned jobs);
int cmd_sweep(const Config& cfg, const std::filesystem::path& out, unsigned jobs, std::ostream& log);

//! Randomized consistency harness: invariant drift and cross-formulation agreement.
int cmd_check(std::uint64_t seed, std::size_t count, std::ostream& os);

} // namespace vortex3::cli

#endif // VORTEX3_CLI_COMMANDS_HPP
