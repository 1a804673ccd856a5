#pragma once

// Finite-difference realization of the observability rank condition: the
// stacked output derivatives are evaluated from the model equations in
// physical units and differentiated numerically with respect to the state.
// Nothing here reuses the closed-form matrices it is meant to check; the
// model equations are transcribed again and evaluated in long double.

#include <Eigen/Dense>

#include "acobs/linalg.hpp"
#include "acobs/models/im.hpp"
#include "acobs/models/sm.hpp"
#include "acobs/sim/scenario.hpp"

namespace acobs::obsv {

inline constexpr double kOracleStep = 1e-6;

/// Per-coordinate central-difference step max(base, base·|x_i|).
double oracle_step(double coordinate, double base = kOracleStep);

/// (y, ẏ, ÿ) of the IM with y = 𝓘_s, input u and its derivative du held fixed.
Vec6 im_output_derivatives(const models::IMState& x, const Vec2& u, const Vec2& du,
                           const models::IMParams& params);

/// (y, ẏ) of the SM with y = 𝓘.
Vec6 sm_output_derivatives(const models::SMState& x, const Vec3& u,
                           const models::SMParams& params);

/// ∂(y, …, y⁽ᵒʳᵈᵉʳ⁾)/∂x for the IM, order ∈ {1, 2}; (2 + 2·order)×6.
MatX lie_oracle_im(const models::IMState& x, const Vec2& u, const Vec2& du,
                   const models::IMParams& params, int order, double base_step = kOracleStep);

/// ∂(y, ẏ)/∂x for the SM; order must be 1; 6×5.
MatX lie_oracle_sm(const models::SMState& x, const Vec3& u, const models::SMParams& params,
                   int order = 1, double base_step = kOracleStep);

/// Dispatch on the machine kind with flat state/input vectors.
MatX lie_oracle(sim::MachineKind machine, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                const Eigen::VectorXd& du, const sim::MachineParams& params, int order,
                double base_step = kOracleStep);

/// Constant s with im_delta = s·det(lie_oracle_im(order 2)): the oracle
/// differentiates physical outputs by physical states, the closed form uses
/// Ĩ = σL_s𝓘 and Ψ̃ = (M/L_r)Ψ, so s = (σL_s)⁴/(M/L_r)².
double im_oracle_scale(const models::IMParams& params);

/// Map the 6×6 physical-unit oracle matrix into the scaled variables of
/// im_obsv_matrix.
Mat6 im_oracle_to_scaled(const Mat6& physical, const models::IMParams& params);

}  // namespace acobs::obsv
