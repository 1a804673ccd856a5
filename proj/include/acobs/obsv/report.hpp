#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "acobs/obsv/rank.hpp"
#include "acobs/sim/scenario.hpp"
#include "acobs/sim/trajectory.hpp"

namespace acobs::obsv {

struct AnalysisOptions {
    double rank_tol = kDefaultRankTol;
    bool oracle = true;  ///< also evaluate the finite-difference determinant
};

/// Per-sample observability record.
///
/// The singular values belong to the equilibrated closed-form matrix
/// (6×6 for the IM, the 5×5 first-five-lines submatrix for the SM).
/// Margins: IM (ω_s, critical rate); SM (ω, dθ_O/dt) plus the approximation
/// factor. Margins are empty where the angle is undefined or, for the SM,
/// at the two trajectory ends.
struct SampleReport {
    double t = 0.0;
    Eigen::VectorXd state;
    Eigen::VectorXd u;
    double delta_closed = 0.0;
    std::optional<double> delta_numeric;  ///< oracle determinant in closed-form units
    double delta_normalized = 0.0;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    int rank = 0;
    std::optional<double> margin_lhs;
    std::optional<double> margin_rhs;
    std::optional<double> approx_factor;
    bool observable = false;
};

struct SingularInterval {
    std::size_t first;  ///< first singular sample index
    std::size_t last;   ///< last singular sample index (inclusive)
    double t_begin;
    double t_end;
};

struct ReportSummary {
    std::size_t samples = 0;
    double fraction_observable = 0.0;
    double min_sigma_ratio = 0.0;
    double min_abs_delta = 0.0;
    std::vector<SingularInterval> singular_intervals;
};

struct ObservabilityReport {
    sim::MachineKind machine = sim::MachineKind::IM;
    std::vector<SampleReport> samples;
    ReportSummary summary;
};

/// Evaluates the rank condition at every sample of a trajectory produced
/// from the scenario. Sample order is preserved.
ObservabilityReport analyze_trajectory(const sim::Trajectory& traj, const sim::Scenario& scenario,
                                       const AnalysisOptions& options = {});

ReportSummary summarize(const std::vector<SampleReport>& samples);

}  // namespace acobs::obsv
