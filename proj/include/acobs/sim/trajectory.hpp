#pragma once

#include <vector>

#include <Eigen/Dense>

#include "acobs/models/im.hpp"
#include "acobs/models/sm.hpp"
#include "acobs/sim/scenario.hpp"

namespace acobs::sim {

struct TrajectorySample {
    double t = 0.0;
    Eigen::VectorXd state;  ///< machine state (θ wrapped to [0, 2π) for the SM)
    Eigen::VectorXd u;      ///< input at t
    Eigen::VectorXd du;     ///< analytic input derivative at t
};

/// Samples on the uniform grid t_k = k·dt.
struct Trajectory {
    MachineKind machine = MachineKind::IM;
    double dt = 0.0;
    std::vector<TrajectorySample> samples;

    std::size_t size() const { return samples.size(); }
};

models::IMState im_state(const TrajectorySample& sample);
models::SMState sm_state(const TrajectorySample& sample);

/// Fixed-step RK4 over the scenario horizon. Deterministic; throws
/// DivergenceError if any state component leaves [−1e9, 1e9].
Trajectory integrate(const Scenario& scenario);

/// Resistant torque resolved by the load's balance flag: the motor torque
/// at the initial state.
double balanced_load(const Scenario& scenario);

/// Periodic electrical steady state of the IM for the scenario's initial
/// speed, from the phasor balance of the current/flux equations. Requires
/// zero, dc or sinusoid excitation. Speed and T_r are copied from x0.
models::IMState steady_state_hint(const Scenario& scenario);

}  // namespace acobs::sim
