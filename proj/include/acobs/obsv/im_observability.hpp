#pragma once

// Observability of the induction machine from the scaled stator currents
// and their first two time derivatives.

#include "acobs/linalg.hpp"
#include "acobs/models/im.hpp"

namespace acobs::obsv {

/// 6×6 observability matrix in scaled variables. Rows (y, ẏ, ÿ) × (α, β);
/// columns (ĩ_sα, ĩ_sβ, ψ̃_rα, ψ̃_rβ, ω_e, T_r). dω_e/dt is taken from the
/// model at x.
Mat6 im_obsv_matrix(const models::IMState& x, const models::IMParams& params);

/// Closed-form determinant
/// (p/J)(M/L_r)²[(1/τ_r)ω̇_e‖Ψ_r‖² − (ω_e² + 1/τ_r²)(ψ̇_rα ψ_rβ − ψ̇_rβ ψ_rα)].
/// Equals det(im_obsv_matrix).
double im_delta(const models::IMState& x, const models::IMParams& params);

/// (p/J)(M/L_r)²‖Ψ_r‖²(ω_e² + 1/τ_r²)/τ_r. Dividing im_delta by it gives
/// τ_r·(ω_s − critical_rate), a dimensionless margin.
double im_delta_normalization(const models::IMState& x, const models::IMParams& params);

/// Both sides of the geometric condition. The determinant factors as
/// normalization·τ_r·(omega_s − critical_rate), so the machine loses the
/// rank condition exactly when the flux angle turns at critical_rate.
struct IMGeometricMargin {
    double omega_s;        ///< rotor-flux angle rate dθ_s/dt [rad/s]
    double critical_rate;  ///< −τ_r ω̇_e/(1 + τ_r²ω_e²) [rad/s]
};

/// Throws UndefinedAngleError when ‖Ψ_r‖ ≤ 1e−12.
IMGeometricMargin im_geometric_margin(const models::IMState& x, const models::IMParams& params);

}  // namespace acobs::obsv
