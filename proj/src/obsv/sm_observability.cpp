#include "acobs/obsv/sm_observability.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "acobs/errors.hpp"
#include "acobs/models/transforms.hpp"

namespace acobs::obsv {

using models::SMParams;
using models::SMState;
using models::SMVariant;

SMObservabilityMatrix sm_obsv_matrix(const SMState& x, const Vec3& u, const SMParams& params) {
    const models::InductanceMatrices m = models::sm_inductance_unchecked(x.theta, params);
    const Mat3 inv = models::sm_effective_inverse(x.theta, params);
    const Mat3 r_eq = models::sm_resistance(params) + m.dL * x.omega;
    const Vec3 rate = inv * (u - r_eq * x.current);

    SMObservabilityMatrix o;
    o.full.setZero();
    o.full.topLeftCorner<3, 3>().setIdentity();
    o.full.block<3, 3>(3, 0) = -inv * r_eq;
    o.full.block<3, 1>(3, 3) = -inv * m.dL * x.current;
    o.full.block<3, 1>(3, 4) = -inv * m.dL * rate - inv * m.ddL * (x.omega * x.current);
    return o;
}

DqQuantities sm_dq_quantities(const SMState& x, const Vec3& u, const SMParams& params) {
    const SMState rate = models::sm_dynamics(x, u, 0.0, params);
    const Vec2 i_dq = models::park(x.current.head<2>(), x.theta);
    const Vec2 rate_dq = models::park(rate.current.head<2>(), x.theta);
    DqQuantities q{};
    q.i_d = i_dq(0);
    q.i_q = i_dq(1);
    q.i_f = x.current(2);
    q.di_d = rate_dq(0) + x.omega * i_dq(1);
    q.di_q = rate_dq(1) - x.omega * i_dq(0);
    q.di_f = rate.current(2);
    q.omega = x.omega;
    return q;
}

namespace delta {

namespace {

struct Axes {
    double L_d, L_q, L_delta;
};

Axes axes(const SMParams& p) {
    return {p.L_0 + p.L_2, p.L_0 - p.L_2, 2.0 * p.L_2};
}

double field_reduction(const SMParams& p) { return p.M_f * p.M_f / p.L_f; }

}  // namespace

double general(const DqQuantities& q, const SMParams& params) {
    const models::SMInductances l = models::sm_inductances(params);
    double psi_d = l.L_d * q.i_d;
    double dpsi_d = l.L_d * q.di_d;
    switch (params.variant) {
        case SMVariant::WRSM:
        case SMVariant::NWRSM:
            psi_d += params.M_f * q.i_f;
            dpsi_d += params.M_f * q.di_f;
            break;
        case SMVariant::IPMSM:
        case SMVariant::SPMSM:
            psi_d += params.psi_r;
            break;
        case SMVariant::SyRM:
            break;
    }
    const double psi_q = l.L_q * q.i_q;
    const double dpsi_q = l.L_q * q.di_q;
    const double lead = psi_d - l.L_q * q.i_d;
    // L_Δ/(L_D L_q)·[(1/L_Δ)(ψ_d − L_q i_d)²ω + …] with the 1/L_Δ multiplied through
    return (lead * lead * q.omega +
            l.L_Delta * (l.L_delta * q.i_q * q.i_q * q.omega + dpsi_d * q.i_q + dpsi_q * q.i_d -
                         (q.di_d * psi_q + q.di_q * psi_d))) /
           (l.L_D * l.L_q);
}

double wrsm(const DqQuantities& q, const SMParams& params) {
    const Axes ax = axes(params);
    const double L_D = ax.L_d - field_reduction(params);
    const double L_Delta = ax.L_delta - field_reduction(params);
    const double od = ax.L_delta * q.i_d + params.M_f * q.i_f;
    return (od * od + L_Delta * ax.L_delta * q.i_q * q.i_q) * q.omega / (L_D * ax.L_q) +
           L_Delta / (L_D * ax.L_q) *
               ((ax.L_delta * q.di_d + params.M_f * q.di_f) * q.i_q - od * q.di_q);
}

double non_salient_wrsm(const DqQuantities& q, const SMParams& params) {
    const Axes ax = axes(params);
    const double L_D = ax.L_d - field_reduction(params);
    return params.M_f * params.M_f / (L_D * ax.L_q) *
           (q.i_f * q.i_f * q.omega -
            params.M_f / params.L_f * (q.i_q * q.di_f - q.i_f * q.di_q));
}

double ipmsm(const DqQuantities& q, const SMParams& params) {
    const Axes ax = axes(params);
    const double od = ax.L_delta * q.i_d + params.psi_r;
    return (od * od + ax.L_delta * ax.L_delta * q.i_q * q.i_q) * q.omega / (ax.L_d * ax.L_q) +
           ax.L_delta / (ax.L_d * ax.L_q) * (ax.L_delta * q.di_d * q.i_q - od * q.di_q);
}

double spmsm(const DqQuantities& q, const SMParams& params) {
    return params.psi_r * params.psi_r / (params.L_0 * params.L_0) * q.omega;
}

double syrm(const DqQuantities& q, const SMParams& params) {
    const Axes ax = axes(params);
    return ax.L_delta * ax.L_delta / (ax.L_d * ax.L_q) *
           ((q.i_d * q.i_d + q.i_q * q.i_q) * q.omega + q.di_d * q.i_q - q.i_d * q.di_q);
}

double specialized(SMVariant variant, const DqQuantities& q, const SMParams& params) {
    switch (variant) {
        case SMVariant::WRSM: return wrsm(q, params);
        case SMVariant::NWRSM: return non_salient_wrsm(q, params);
        case SMVariant::IPMSM: return ipmsm(q, params);
        case SMVariant::SPMSM: return spmsm(q, params);
        case SMVariant::SyRM: return syrm(q, params);
    }
    throw std::invalid_argument("unknown synchronous variant");
}

double magnitude(const DqQuantities& q, const SMParams& params) {
    const models::SMInductances l = models::sm_inductances(params);
    const double psi_d = std::abs(l.L_d * q.i_d) + std::abs(params.M_f * q.i_f) + std::abs(params.psi_r);
    const double dpsi_d = std::abs(l.L_d * q.di_d) + std::abs(params.M_f * q.di_f);
    const double lead = psi_d + std::abs(l.L_q * q.i_d);
    return (lead * lead * std::abs(q.omega) +
            std::abs(l.L_Delta) *
                (std::abs(l.L_delta) * q.i_q * q.i_q * std::abs(q.omega) + dpsi_d * std::abs(q.i_q) +
                 std::abs(l.L_q * q.di_q * q.i_d) + std::abs(q.di_d * l.L_q * q.i_q) +
                 std::abs(q.di_q) * psi_d)) /
           std::abs(l.L_D * l.L_q);
}

}  // namespace delta

double sm_delta(const SMState& x, const Vec3& u, const SMParams& params) {
    const DqQuantities q = sm_dq_quantities(x, u, params);
    const double value = delta::specialized(params.variant, q, params);
    const double general = delta::general(q, params);

    const double bound = delta::magnitude(q, params);
    if (std::abs(value - general) > 1e-9 * bound + 1e-300) {
        throw std::logic_error("specialized and general determinant forms disagree");
    }
    return value;
}

ObservabilityVector sm_observability_vector(const SMState& x, const SMParams& params) {
    const models::SMInductances l = models::sm_inductances(params);
    const Vec2 i_dq = models::park(x.current.head<2>(), x.theta);
    ObservabilityVector v{};
    double field = 0.0;
    switch (params.variant) {
        case SMVariant::WRSM:
        case SMVariant::NWRSM: field = params.M_f * x.current(2); break;
        case SMVariant::IPMSM:
        case SMVariant::SPMSM: field = params.psi_r; break;
        case SMVariant::SyRM: break;
    }
    v.d = l.L_delta * i_dq(0) + field;
    v.q = l.L_Delta * i_dq(1);
    if (std::abs(v.d) < 1e-12 && std::abs(v.q) < 1e-12) {
        throw UndefinedAngleError("observability vector vanishes");
    }
    v.angle = std::atan2(v.q, v.d);
    if (v.angle == -std::numbers::pi) v.angle = std::numbers::pi;
    return v;
}

double sm_delta_normalization(const SMState& x, const SMParams& params) {
    const models::SMInductances l = models::sm_inductances(params);
    const Vec2 i_dq = models::park(x.current.head<2>(), x.theta);
    double field = 0.0;
    if (params.variant == SMVariant::WRSM || params.variant == SMVariant::NWRSM) {
        field = params.M_f * x.current(2);
    } else if (params.variant != SMVariant::SyRM) {
        field = params.psi_r;
    }
    const double od = l.L_delta * i_dq(0) + field;
    const double oq = l.L_Delta * i_dq(1);
    return (od * od + oq * oq) / std::abs(l.L_D * l.L_q) * (params.R_s / params.L_0);
}

double sm_approx_factor(const SMState& x, const SMParams& params) {
    const models::SMInductances l = models::sm_inductances(params);
    const Vec2 i_dq = models::park(x.current.head<2>(), x.theta);
    double field = 0.0;
    if (params.variant == SMVariant::WRSM || params.variant == SMVariant::NWRSM) {
        field = params.M_f * x.current(2);
    } else if (params.variant != SMVariant::SyRM) {
        field = params.psi_r;
    }
    const double od = l.L_delta * i_dq(0) + field;
    const double iq2 = i_dq(1) * i_dq(1);
    const double num = od * od + l.L_Delta * l.L_Delta * iq2;
    const double den = od * od + l.L_Delta * l.L_delta * iq2;
    if (num == den) return 1.0;
    return num / den;
}

SMGeometricMargin sm_geometric_margin(const sim::Trajectory& traj, std::size_t k,
                                      const SMParams& params) {
    if (k < 1 || k + 1 >= traj.size()) {
        throw std::out_of_range("centered difference needs 1 <= k <= n-2");
    }
    const SMState prev = sim::sm_state(traj.samples[k - 1]);
    const SMState here = sim::sm_state(traj.samples[k]);
    const SMState next = sim::sm_state(traj.samples[k + 1]);
    const double a0 = sm_observability_vector(prev, params).angle;
    const double a2 = sm_observability_vector(next, params).angle;
    sm_observability_vector(here, params);

    double step = std::remainder(a2 - a0, 2.0 * std::numbers::pi);
    SMGeometricMargin m{};
    m.omega = here.omega;
    m.dtheta_o = step / (traj.samples[k + 1].t - traj.samples[k - 1].t);
    m.approx_factor = sm_approx_factor(here, params);
    return m;
}

}  // namespace acobs::obsv
