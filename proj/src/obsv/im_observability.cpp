#include "acobs/obsv/im_observability.hpp"

#include <cmath>

#include "acobs/errors.hpp"

namespace acobs::obsv {

using models::IMDerived;
using models::IMParams;
using models::IMState;

Mat6 im_obsv_matrix(const IMState& x, const IMParams& params) {
    const IMDerived d = models::im_derived(params);
    const IMState s = models::im_scale(x, params);
    const double a = d.a;
    const double amb = d.a - d.b;
    const double inv_tau = 1.0 / d.tau_r;
    const double cj = d.c / params.J;
    const double pj = params.p / params.J;
    const double w = s.omega;
    const double ia = s.current(0);
    const double ib = s.current(1);
    const double pa = s.flux(0);
    const double pb = s.flux(1);
    const double w_dot = cj * (-ia * pb + ib * pa) - pj * s.load_torque;

    const double d11 = a * a - amb * inv_tau - cj * pb * pb;
    const double d12 = -amb * w + cj * pa * pb;
    const double d21 = amb * w + cj * pa * pb;
    const double d22 = a * a - amb * inv_tau - cj * pa * pa;

    const double e11 = a * inv_tau - inv_tau * inv_tau + w * w + cj * ib * pb;
    const double e12 = a * w - 2.0 * w * inv_tau + w_dot - cj * ia * pb;
    const double e21 = -a * w + 2.0 * w * inv_tau - w_dot - cj * ib * pa;
    const double e22 = a * inv_tau - inv_tau * inv_tau + w * w + cj * ia * pa;

    const double f11 = 2.0 * w * pa - amb * ib + (a - 2.0 * inv_tau) * pb;
    const double f12 = -pj * pb;
    const double f21 = 2.0 * w * pb + amb * ia + (2.0 * inv_tau - a) * pa;
    const double f22 = pj * pa;

    Mat6 o;
    o << 1.0, 0.0, 0.0, 0.0, 0.0, 0.0,
         0.0, 1.0, 0.0, 0.0, 0.0, 0.0,
         a, 0.0, inv_tau, w, pb, 0.0,
         0.0, a, -w, inv_tau, -pa, 0.0,
         d11, d12, e11, e12, f11, f12,
         d21, d22, e21, e22, f21, f22;
    return o;
}

double im_delta(const IMState& x, const IMParams& params) {
    const IMDerived d = models::im_derived(params);
    const IMState rate = models::im_dynamics(x, Vec2::Zero(), params);
    const double mr = params.M / params.L_r;
    const double inv_tau = 1.0 / d.tau_r;
    const double pa = x.flux(0);
    const double pb = x.flux(1);
    const double cross = rate.flux(0) * pb - rate.flux(1) * pa;
    return params.p / params.J * mr * mr *
           (inv_tau * rate.omega * x.flux.squaredNorm() -
            (x.omega * x.omega + inv_tau * inv_tau) * cross);
}

double im_delta_normalization(const IMState& x, const IMParams& params) {
    const IMDerived d = models::im_derived(params);
    const double mr = params.M / params.L_r;
    const double inv_tau = 1.0 / d.tau_r;
    return params.p / params.J * mr * mr * x.flux.squaredNorm() *
           (x.omega * x.omega + inv_tau * inv_tau) * inv_tau;
}

IMGeometricMargin im_geometric_margin(const IMState& x, const IMParams& params) {
    const double norm2 = x.flux.squaredNorm();
    if (!(std::sqrt(norm2) > 1e-12)) {
        throw UndefinedAngleError("rotor flux angle undefined for zero flux");
    }
    const IMDerived d = models::im_derived(params);
    const IMState rate = models::im_dynamics(x, Vec2::Zero(), params);
    IMGeometricMargin m{};
    m.omega_s = (rate.flux(1) * x.flux(0) - rate.flux(0) * x.flux(1)) / norm2;
    const double tw = d.tau_r * x.omega;
    m.critical_rate = -d.tau_r * rate.omega / (1.0 + tw * tw);
    return m;
}

}  // namespace acobs::obsv
