#pragma once

// Partial observability of the synchronous machine family from the
// currents and their first time derivatives.

#include <cstddef>

#include "acobs/linalg.hpp"
#include "acobs/models/sm.hpp"
#include "acobs/sim/trajectory.hpp"

namespace acobs::obsv {

/// Rows (i_α, i_β, i_f, di_α/dt, di_β/dt, di_f/dt); columns
/// (i_α, i_β, i_f, ω, θ).
struct SMObservabilityMatrix {
    Mat65 full;

    /// Output rows plus the stator-current derivative rows.
    Mat5 first_five() const { return full.topRows<5>(); }
};

/// Throws SingularInductanceError for a singular inductance matrix.
SMObservabilityMatrix sm_obsv_matrix(const models::SMState& x, const Vec3& u,
                                     const models::SMParams& params);

/// Rotor-frame currents and their total time derivatives (Park of the
/// stationary-frame rates plus the frame-rotation term).
struct DqQuantities {
    double i_d;
    double i_q;
    double i_f;
    double di_d;
    double di_q;
    double di_f;
    double omega;
};

DqQuantities sm_dq_quantities(const models::SMState& x, const Vec3& u,
                              const models::SMParams& params);

/// Closed-form determinants of the 5×5 submatrix. Each takes the constants
/// it needs straight from params, so a formula can be evaluated on another
/// variant's parameter set (used for the specialization identities).
namespace delta {

/// General flux form with the variant's flux substitution for ψ_d.
double general(const DqQuantities& q, const models::SMParams& params);
double wrsm(const DqQuantities& q, const models::SMParams& params);
double non_salient_wrsm(const DqQuantities& q, const models::SMParams& params);
double ipmsm(const DqQuantities& q, const models::SMParams& params);
double spmsm(const DqQuantities& q, const models::SMParams& params);
double syrm(const DqQuantities& q, const models::SMParams& params);

/// Formula printed for the variant.
double specialized(models::SMVariant variant, const DqQuantities& q, const models::SMParams& params);
/// Sum of the absolute values of the general form's terms; the scale for
/// comparing two evaluations of the determinant.
double magnitude(const DqQuantities& q, const models::SMParams& params);

}  // namespace delta

/// Specialized determinant for params.variant. Throws std::logic_error if
/// it disagrees with the general form.
double sm_delta(const models::SMState& x, const Vec3& u, const models::SMParams& params);

/// ‖Ψ_O‖²/|L_D L_q|·(R_s/L_0); sm_delta divided by it is a dimensionless
/// margin.
double sm_delta_normalization(const models::SMState& x, const models::SMParams& params);

struct ObservabilityVector {
    double d;      ///< Ψ_Od = L_δ i_d + M_f i_f (ψ_r for magnets) [Wb]
    double q;      ///< Ψ_Oq = L_Δ i_q [Wb]
    double angle;  ///< θ_O ∈ (−π, π] in the rotor frame
};

/// Throws UndefinedAngleError when both components are below 1e−12.
ObservabilityVector sm_observability_vector(const models::SMState& x,
                                            const models::SMParams& params);

/// ((Ψ_Od)² + L_Δ² i_q²)/((Ψ_Od)² + L_Δ L_δ i_q²); exactly 1 whenever
/// L_Δ = L_δ.
double sm_approx_factor(const models::SMState& x, const models::SMParams& params);

struct SMGeometricMargin {
    double omega;          ///< electrical rotor speed [rad/s]
    double dtheta_o;       ///< rotation rate of Ψ_O relative to the rotor [rad/s]
    double approx_factor;
};

/// dθ_O/dt by a centered difference of the unwrapped angle; k ∈ [1, n−2].
SMGeometricMargin sm_geometric_margin(const sim::Trajectory& traj, std::size_t k,
                                      const models::SMParams& params);

}  // namespace acobs::obsv
