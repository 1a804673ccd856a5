#pragma once

// Sectioned key-value scenario files.
//
// Grammar (one item per line, surrounding whitespace ignored):
//   # comment                  full-line or trailing comment
//   [section]                  one of machine, initial, excitation, load, sim, analysis
//   key = value                keys are unique within a section
//
// Unknown sections or keys are rejected. Machine constants that are not
// given fall back to the desk-scale defaults, and a notice is recorded for
// each of them.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "acobs/obsv/report.hpp"
#include "acobs/sim/scenario.hpp"

namespace acobs::cli {

struct ScenarioConfig {
    sim::Scenario scenario;
    obsv::AnalysisOptions analysis;
    double strict_fraction = 0.01;  ///< singular fraction tolerated under --strict
    std::vector<std::string> notices;
};

/// Throws ConfigError naming the offending section/key.
ScenarioConfig parse_scenario(std::string_view text);

ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace acobs::cli
