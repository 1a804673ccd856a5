#pragma once

// CSV interchange for trajectories and observability reports. Values are
// written with 17 significant digits so they parse back bit-exactly; absent
// values are empty fields; lines end in LF.

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "acobs/obsv/report.hpp"
#include "acobs/sim/trajectory.hpp"

namespace acobs::cli {

std::string format_double(double value);

std::vector<std::string> trajectory_header(sim::MachineKind machine);
std::vector<std::string> report_header(sim::MachineKind machine);

void write_trajectory_csv(std::ostream& out, const sim::Trajectory& traj);
void write_report_csv(std::ostream& out, const obsv::ObservabilityReport& report);

/// Inverse of write_trajectory_csv. The header must match the machine's
/// column set; dt is recovered from the first two time stamps.
sim::Trajectory read_trajectory_csv(std::istream& in, sim::MachineKind machine);

/// Writes through a sibling temporary file renamed into place on success,
/// so a failed run never leaves a partial file behind.
void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& writer);

}  // namespace acobs::cli
