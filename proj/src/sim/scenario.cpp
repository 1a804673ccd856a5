#include "acobs/sim/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace acobs::sim {

std::string_view to_string(MachineKind kind) {
    switch (kind) {
        case MachineKind::IM: return "im";
        case MachineKind::WRSM: return "wrsm";
        case MachineKind::NWRSM: return "n-wrsm";
        case MachineKind::IPMSM: return "ipmsm";
        case MachineKind::SPMSM: return "spmsm";
        case MachineKind::SyRM: return "syrm";
    }
    return "?";
}

std::optional<MachineKind> parse_machine(std::string_view name) {
    for (auto kind : {MachineKind::IM, MachineKind::WRSM, MachineKind::NWRSM, MachineKind::IPMSM,
                      MachineKind::SPMSM, MachineKind::SyRM}) {
        if (to_string(kind) == name) return kind;
    }
    return std::nullopt;
}

models::SMVariant sm_variant(MachineKind kind) {
    switch (kind) {
        case MachineKind::WRSM: return models::SMVariant::WRSM;
        case MachineKind::NWRSM: return models::SMVariant::NWRSM;
        case MachineKind::IPMSM: return models::SMVariant::IPMSM;
        case MachineKind::SPMSM: return models::SMVariant::SPMSM;
        case MachineKind::SyRM: return models::SMVariant::SyRM;
        case MachineKind::IM: break;
    }
    throw std::invalid_argument("induction machine has no synchronous variant");
}

int state_dim(MachineKind kind) { return is_sm(kind) ? models::SMState::kDim : models::IMState::kDim; }

int input_dim(MachineKind kind) { return is_sm(kind) ? 3 : 2; }

double LoadProfile::at(double t) const {
    double value = 0.0;
    for (const auto& seg : segments) {
        if (seg.t_start <= t) value = seg.value;
    }
    return value;
}

void validate(const Scenario& scenario) {
    if (!(scenario.dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(scenario.duration >= scenario.dt)) throw std::invalid_argument("duration must be >= dt");
    validate(scenario.excitation);
    if (is_sm(scenario.machine)) {
        const auto* p = std::get_if<models::SMParams>(&scenario.params);
        if (p == nullptr || !std::holds_alternative<models::SMState>(scenario.x0)) {
            throw std::invalid_argument("synchronous scenario needs SM parameters and state");
        }
        if (p->variant != sm_variant(scenario.machine)) {
            throw std::invalid_argument("parameter variant does not match machine type");
        }
        models::SMParams checked = *p;
        if (scenario.allow_negative_resistance) {
            checked.R_s = std::abs(checked.R_s);
            checked.R_f = std::abs(checked.R_f);
        }
        models::validate(checked);
    } else {
        const auto* p = std::get_if<models::IMParams>(&scenario.params);
        if (p == nullptr || !std::holds_alternative<models::IMState>(scenario.x0)) {
            throw std::invalid_argument("induction scenario needs IM parameters and state");
        }
        models::IMParams checked = *p;
        if (scenario.allow_negative_resistance) {
            checked.R_s = std::abs(checked.R_s);
            checked.R_r = std::abs(checked.R_r);
        }
        models::validate(checked);
    }
    for (std::size_t i = 1; i < scenario.load.segments.size(); ++i) {
        if (!(scenario.load.segments[i].t_start > scenario.load.segments[i - 1].t_start)) {
            throw std::invalid_argument("load segments must be strictly increasing in t_start");
        }
    }
    if (scenario.load.balance && !scenario.load.segments.empty()) {
        throw std::invalid_argument("load balance and explicit load segments are exclusive");
    }
}

long step_count(const Scenario& scenario) {
    return std::lround(scenario.duration / scenario.dt);
}

}  // namespace acobs::sim
