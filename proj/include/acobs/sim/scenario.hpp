#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "acobs/models/im.hpp"
#include "acobs/models/params.hpp"
#include "acobs/models/sm.hpp"
#include "acobs/sim/excitation.hpp"

namespace acobs::sim {

enum class MachineKind { IM, WRSM, NWRSM, IPMSM, SPMSM, SyRM };

std::string_view to_string(MachineKind kind);
std::optional<MachineKind> parse_machine(std::string_view name);

constexpr bool is_sm(MachineKind kind) { return kind != MachineKind::IM; }
models::SMVariant sm_variant(MachineKind kind);

/// State dimension (6 for the IM, 5 for the SM family).
int state_dim(MachineKind kind);
/// Input dimension (2 for the IM, 3 for the SM family).
int input_dim(MachineKind kind);

struct LoadSegment {
    double t_start;
    double value;  ///< T_r [N·m]
};

/// Piecewise-constant resistant torque.
struct LoadProfile {
    std::vector<LoadSegment> segments;  ///< sorted by t_start
    bool locked_rotor = false;          ///< mechanical derivatives forced to zero
    bool balance = false;               ///< constant T_r equal to the initial motor torque

    /// Value of the last segment starting at or before t (0 before the first).
    double at(double t) const;
};

using MachineParams = std::variant<models::IMParams, models::SMParams>;
using MachineState = std::variant<models::IMState, models::SMState>;

struct Scenario {
    MachineKind machine = MachineKind::IM;
    MachineParams params = models::IMParams{};
    MachineState x0 = models::IMState{};
    ExcitationProfile excitation;
    LoadProfile load;
    double dt = 1e-4;
    double duration = 0.1;
    /// Accept negative resistances (the remaining checks still apply); used to
    /// provoke an unstable machine on purpose.
    bool allow_negative_resistance = false;

    const models::IMParams& im_params() const { return std::get<models::IMParams>(params); }
    const models::SMParams& sm_params() const { return std::get<models::SMParams>(params); }
};

/// Throws std::invalid_argument (or ParameterError) on an inconsistent scenario.
void validate(const Scenario& scenario);

/// Number of integration steps, round(duration/dt).
long step_count(const Scenario& scenario);

}  // namespace acobs::sim
