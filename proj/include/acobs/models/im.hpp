#pragma once

// Induction machine in the two-phase stator frame: stator currents, rotor
// fluxes, electrical speed and a slowly varying resistant torque.

#include "acobs/linalg.hpp"
#include "acobs/models/params.hpp"

namespace acobs::models {

struct IMState {
    Vec2 current = Vec2::Zero();  ///< (i_sα, i_sβ) [A]
    Vec2 flux = Vec2::Zero();     ///< (ψ_rα, ψ_rβ) [Wb]
    double omega = 0.0;           ///< electrical rotor speed [rad/s]
    double load_torque = 0.0;     ///< resistant torque T_r [N·m]

    static constexpr int kDim = 6;

    Vec6 to_vector() const;
    static IMState from_vector(const Vec6& v);
};

/// Time derivative of the state; the IM carries Ṫ_r = 0.
IMState im_dynamics(const IMState& x, const Vec2& stator_voltage, const IMParams& params);

/// Electromagnetic torque (3pM/2L_r)·𝓘ᵀ𝕁Ψ [N·m].
double im_motor_torque(const IMState& x, const IMParams& params);

/// Scaled variables Ĩ = σL_s·𝓘, Ψ̃ = (M/L_r)·Ψ; speed and torque unchanged.
IMState im_scale(const IMState& x, const IMParams& params);
IMState im_unscale(const IMState& scaled, const IMParams& params);

}  // namespace acobs::models
