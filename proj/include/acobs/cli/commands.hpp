#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace acobs::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;     ///< verify failure or unexpected error
inline constexpr int kConfig = 2;      ///< malformed or invalid scenario
inline constexpr int kDivergence = 3;  ///< integration diverged
inline constexpr int kStrict = 4;      ///< --strict and too many singular samples
}  // namespace exit_code

/// Integrates the scenario and writes the trajectory CSV.
int cmd_simulate(const std::filesystem::path& scenario, const std::filesystem::path& output,
                 std::ostream& out, std::ostream& err);

/// Evaluates the rank condition along the scenario's trajectory (or along a
/// previously written trajectory CSV) and writes the report CSV. With
/// strict, more than the scenario's strict_fraction of singular samples
/// exits with kStrict.
int cmd_analyze(const std::filesystem::path& scenario, const std::filesystem::path& output,
                bool strict, const std::optional<std::filesystem::path>& trajectory,
                std::ostream& out, std::ostream& err);

int cmd_verify(std::uint64_t seed, int n_states, bool mutate, std::ostream& out, std::ostream& err);

}  // namespace acobs::cli
