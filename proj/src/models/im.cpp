#include "acobs/models/im.hpp"

namespace acobs::models {

Vec6 IMState::to_vector() const {
    Vec6 v;
    v << current, flux, omega, load_torque;
    return v;
}

IMState IMState::from_vector(const Vec6& v) {
    IMState x;
    x.current = v.segment<2>(0);
    x.flux = v.segment<2>(2);
    x.omega = v(4);
    x.load_torque = v(5);
    return x;
}

IMState im_dynamics(const IMState& x, const Vec2& stator_voltage, const IMParams& params) {
    const IMDerived d = im_derived(params);
    const Mat2 gamma = Mat2::Identity() / d.tau_r - x.omega * rot90();

    IMState rate;
    rate.current = (stator_voltage - d.r_s * x.current + params.M / params.L_r * gamma * x.flux) /
                   (d.sigma * params.L_s);
    rate.flux = -gamma * x.flux + params.M / d.tau_r * x.current;
    rate.omega = 1.5 * params.p * params.p / params.J * params.M / params.L_r *
                     x.current.dot(rot90() * x.flux) -
                 params.p / params.J * x.load_torque;
    rate.load_torque = 0.0;
    return rate;
}

double im_motor_torque(const IMState& x, const IMParams& params) {
    return 1.5 * params.p * params.M / params.L_r * x.current.dot(rot90() * x.flux);
}

IMState im_scale(const IMState& x, const IMParams& params) {
    const IMDerived d = im_derived(params);
    IMState s = x;
    s.current = d.sigma * params.L_s * x.current;
    s.flux = params.M / params.L_r * x.flux;
    return s;
}

IMState im_unscale(const IMState& scaled, const IMParams& params) {
    const IMDerived d = im_derived(params);
    IMState x = scaled;
    x.current = scaled.current / (d.sigma * params.L_s);
    x.flux = scaled.flux * params.L_r / params.M;
    return x;
}

}  // namespace acobs::models
