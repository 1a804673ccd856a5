#pragma once

// Synchronous machine family modeled as a salient wound-rotor machine in
// the stationary αβ frame. Machines without a field winding keep the field
// current as a pinned state component (ψ_r/M_f for magnets, 0 for SyRM).

#include "acobs/linalg.hpp"
#include "acobs/models/params.hpp"

namespace acobs::models {

struct SMState {
    Vec3 current = Vec3::Zero();  ///< (i_α, i_β, i_f) [A]
    double omega = 0.0;           ///< electrical rotor speed [rad/s]
    double theta = 0.0;           ///< electrical rotor position [rad]

    static constexpr int kDim = 5;

    Vec5 to_vector() const;
    static SMState from_vector(const Vec5& v);
};

/// Position-dependent inductance matrix 𝔏(θ) and its first two θ-derivatives.
struct InductanceMatrices {
    Mat3 L;
    Mat3 dL;
    Mat3 ddL;
};

/// Throws SingularInductanceError when |det 𝔏| < 1e−12·‖𝔏‖³.
InductanceMatrices sm_inductance(double theta, const SMParams& params);

/// Same matrices without the singularity guard.
InductanceMatrices sm_inductance_unchecked(double theta, const SMParams& params);

/// Analytic 3×3 inverse with the determinant guard.
Mat3 invert_inductance(const Mat3& L);

/// Inverse used by the current dynamics. Wound-rotor variants invert the
/// full 𝔏; pinned-field variants invert the stator block and leave a zero
/// field row, which realizes di_f/dt = 0.
Mat3 sm_effective_inverse(double theta, const SMParams& params);

/// Resistance matrix ℜ = diag(R_s, R_s, R_f).
Mat3 sm_resistance(const SMParams& params);

/// Motor torque T_m [N·m].
double sm_torque(const SMState& x, const SMParams& params);

/// Time derivative of the state under voltage (v_α, v_β, v_f) and load T_r.
SMState sm_dynamics(const SMState& x, const Vec3& voltage, double load_torque,
                    const SMParams& params);

/// Copy of x with the field current forced to its pinned value
/// (identity for wound-rotor variants).
SMState pin_field(const SMState& x, const SMParams& params);

}  // namespace acobs::models
