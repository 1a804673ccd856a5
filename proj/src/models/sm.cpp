#include "acobs/models/sm.hpp"

#include <cmath>

#include "acobs/errors.hpp"

namespace acobs::models {

Vec5 SMState::to_vector() const {
    Vec5 v;
    v << current, omega, theta;
    return v;
}

SMState SMState::from_vector(const Vec5& v) {
    SMState x;
    x.current = v.head<3>();
    x.omega = v(3);
    x.theta = v(4);
    return x;
}

InductanceMatrices sm_inductance_unchecked(double theta, const SMParams& params) {
    const double c1 = std::cos(theta);
    const double s1 = std::sin(theta);
    const double c2 = std::cos(2.0 * theta);
    const double s2 = std::sin(2.0 * theta);
    const double L0 = params.L_0;
    const double L2 = params.L_2;
    const double Mf = params.M_f;

    InductanceMatrices m;
    m.L << L0 + L2 * c2, L2 * s2, Mf * c1,
           L2 * s2, L0 - L2 * c2, Mf * s1,
           Mf * c1, Mf * s1, params.L_f;
    m.dL << -2.0 * L2 * s2, 2.0 * L2 * c2, -Mf * s1,
            2.0 * L2 * c2, 2.0 * L2 * s2, Mf * c1,
            -Mf * s1, Mf * c1, 0.0;
    m.ddL << -4.0 * L2 * c2, -4.0 * L2 * s2, -Mf * c1,
             -4.0 * L2 * s2, 4.0 * L2 * c2, -Mf * s1,
             -Mf * c1, -Mf * s1, 0.0;
    return m;
}

Mat3 invert_inductance(const Mat3& L) {
    Mat3 cof;
    cof(0, 0) = L(1, 1) * L(2, 2) - L(1, 2) * L(2, 1);
    cof(0, 1) = L(1, 2) * L(2, 0) - L(1, 0) * L(2, 2);
    cof(0, 2) = L(1, 0) * L(2, 1) - L(1, 1) * L(2, 0);
    cof(1, 0) = L(0, 2) * L(2, 1) - L(0, 1) * L(2, 2);
    cof(1, 1) = L(0, 0) * L(2, 2) - L(0, 2) * L(2, 0);
    cof(1, 2) = L(0, 1) * L(2, 0) - L(0, 0) * L(2, 1);
    cof(2, 0) = L(0, 1) * L(1, 2) - L(0, 2) * L(1, 1);
    cof(2, 1) = L(0, 2) * L(1, 0) - L(0, 0) * L(1, 2);
    cof(2, 2) = L(0, 0) * L(1, 1) - L(0, 1) * L(1, 0);
    const double det = L(0, 0) * cof(0, 0) + L(0, 1) * cof(0, 1) + L(0, 2) * cof(0, 2);
    const double norm = L.norm();
    if (!(std::abs(det) >= 1e-12 * norm * norm * norm)) {
        throw SingularInductanceError("inductance matrix is singular (det = " +
                                      std::to_string(det) + ")");
    }
    return cof.transpose() / det;
}

InductanceMatrices sm_inductance(double theta, const SMParams& params) {
    InductanceMatrices m = sm_inductance_unchecked(theta, params);
    invert_inductance(m.L);
    return m;
}

Mat3 sm_effective_inverse(double theta, const SMParams& params) {
    const InductanceMatrices m = sm_inductance_unchecked(theta, params);
    if (!has_pinned_field(params.variant)) return invert_inductance(m.L);

    const Mat2 stator = m.L.topLeftCorner<2, 2>();
    const double det = stator.determinant();
    const double norm = stator.norm();
    if (!(std::abs(det) >= 1e-12 * norm * norm)) {
        throw SingularInductanceError("stator inductance block is singular");
    }
    Mat3 inv = Mat3::Zero();
    inv.topLeftCorner<2, 2>() << stator(1, 1), -stator(0, 1), -stator(1, 0), stator(0, 0);
    inv.topLeftCorner<2, 2>() /= det;
    return inv;
}

Mat3 sm_resistance(const SMParams& params) {
    return Vec3(params.R_s, params.R_s, params.R_f).asDiagonal();
}

double sm_torque(const SMState& x, const SMParams& params) {
    const double ia = x.current(0);
    const double ib = x.current(1);
    const double i_f = x.current(2);
    const double th = x.theta;
    const double p = params.p;
    return 1.5 * p * params.M_f * i_f * (ib * std::cos(th) - ia * std::sin(th)) -
           1.5 * p * params.L_2 *
               ((ia * ia - ib * ib) * std::sin(2.0 * th) - 2.0 * ia * ib * std::cos(2.0 * th));
}

SMState sm_dynamics(const SMState& x, const Vec3& voltage, double load_torque,
                    const SMParams& params) {
    const InductanceMatrices m = sm_inductance_unchecked(x.theta, params);
    const Mat3 inv = sm_effective_inverse(x.theta, params);
    const Mat3 r_eq = sm_resistance(params) + m.dL * x.omega;

    SMState rate;
    rate.current = inv * (voltage - r_eq * x.current);
    rate.omega = params.p / params.J * (sm_torque(x, params) - load_torque);
    rate.theta = x.omega;
    return rate;
}

SMState pin_field(const SMState& x, const SMParams& params) {
    if (!has_pinned_field(params.variant)) return x;
    SMState pinned = x;
    pinned.current(2) = pinned_field_current(params);
    return pinned;
}

}  // namespace acobs::models
