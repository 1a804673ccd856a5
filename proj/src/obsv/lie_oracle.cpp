#include "acobs/obsv/lie_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace acobs::obsv {

using models::IMParams;
using models::IMState;
using models::SMParams;
using models::SMState;

double oracle_step(double coordinate, double base) {
    return std::max(base, base * std::abs(coordinate));
}

namespace {

using Real = long double;
using RVec2 = Eigen::Matrix<Real, 2, 1>;
using RVec3 = Eigen::Matrix<Real, 3, 1>;
using RVec6 = Eigen::Matrix<Real, 6, 1>;
using RMat2 = Eigen::Matrix<Real, 2, 2>;
using RMat3 = Eigen::Matrix<Real, 3, 3>;

RMat2 r_rot90() {
    RMat2 j;
    j << 0, -1, 1, 0;
    return j;
}

/// x = (i_α, i_β, ψ_α, ψ_β, ω_e, T_r); returns (y, ẏ, ÿ).
RVec6 im_outputs(const RVec6& x, const RVec2& u, const RVec2& du, const IMParams& params) {
    const Real Ls = params.L_s, Lr = params.L_r, M = params.M;
    const Real tau = Lr / params.R_r;
    const Real sigma = 1 - M * M / (Ls * Lr);
    const Real rs = params.R_s + params.R_r * M * M / (Lr * Lr);
    const Real sl = sigma * Ls;
    const Real p = params.p, J = params.J;

    const RVec2 i = x.segment<2>(0);
    const RVec2 psi = x.segment<2>(2);
    const Real w = x(4);
    const RMat2 jj = r_rot90();
    const RMat2 gamma = RMat2::Identity() / tau - w * jj;

    const RVec2 di = (u - rs * i + M / Lr * gamma * psi) / sl;
    const RVec2 dpsi = -gamma * psi + M / tau * i;
    const Real dw = Real(1.5) * p * p / J * M / Lr * i.dot(jj * psi) - p / J * x(5);
    const RVec2 ddi = (du - rs * di + M / Lr * (gamma * dpsi - dw * jj * psi)) / sl;

    RVec6 out;
    out << i, di, ddi;
    return out;
}

/// x = (i_α, i_β, i_f, ω, θ); returns (y, ẏ).
RVec6 sm_outputs(const Eigen::Matrix<Real, 5, 1>& x, const RVec3& u, const SMParams& params) {
    const Real th = x(4);
    const Real w = x(3);
    const Real c1 = std::cos(th), s1 = std::sin(th);
    const Real c2 = std::cos(2 * th), s2 = std::sin(2 * th);
    const Real L0 = params.L_0, L2 = params.L_2, Mf = params.M_f;

    RMat3 L;
    L << L0 + L2 * c2, L2 * s2, Mf * c1,
         L2 * s2, L0 - L2 * c2, Mf * s1,
         Mf * c1, Mf * s1, params.L_f;
    RMat3 dL;
    dL << -2 * L2 * s2, 2 * L2 * c2, -Mf * s1,
          2 * L2 * c2, 2 * L2 * s2, Mf * c1,
          -Mf * s1, Mf * c1, 0;
    const RVec3 i = x.head<3>();
    const RVec3 rhs = u - (RVec3(params.R_s, params.R_s, params.R_f).asDiagonal() * i + w * dL * i);

    RVec3 di = RVec3::Zero();
    if (models::has_pinned_field(params.variant)) {
        di.head<2>() = L.topLeftCorner<2, 2>().partialPivLu().solve(rhs.head<2>());
    } else {
        di = L.partialPivLu().solve(rhs);
    }
    RVec6 out;
    out << i, di;
    return out;
}

Vec6 to_double(const RVec6& v) { return v.cast<double>(); }

}  // namespace

Vec6 im_output_derivatives(const IMState& x, const Vec2& u, const Vec2& du,
                           const IMParams& params) {
    return to_double(im_outputs(x.to_vector().cast<Real>(), u.cast<Real>(), du.cast<Real>(), params));
}

Vec6 sm_output_derivatives(const SMState& x, const Vec3& u, const SMParams& params) {
    return to_double(sm_outputs(x.to_vector().cast<Real>(), u.cast<Real>(), params));
}

MatX lie_oracle_im(const IMState& x, const Vec2& u, const Vec2& du, const IMParams& params,
                   int order, double base_step) {
    if (order != 1 && order != 2) throw std::invalid_argument("IM oracle order must be 1 or 2");
    const int rows = 2 + 2 * order;
    const RVec6 x0 = x.to_vector().cast<Real>();
    const RVec2 ur = u.cast<Real>();
    const RVec2 dur = du.cast<Real>();
    MatX o(rows, 6);
    for (int j = 0; j < 6; ++j) {
        const Real h = oracle_step(static_cast<double>(x0(j)), base_step);
        RVec6 plus = x0;
        RVec6 minus = x0;
        plus(j) += h;
        minus(j) -= h;
        const RVec6 diff = im_outputs(plus, ur, dur, params) - im_outputs(minus, ur, dur, params);
        o.col(j) = (diff.head(rows) / (plus(j) - minus(j))).cast<double>();
    }
    return o;
}

MatX lie_oracle_sm(const SMState& x, const Vec3& u, const SMParams& params, int order,
                   double base_step) {
    if (order != 1) throw std::invalid_argument("SM oracle order must be 1");
    using RVec5 = Eigen::Matrix<Real, 5, 1>;
    const RVec5 x0 = x.to_vector().cast<Real>();
    const RVec3 ur = u.cast<Real>();
    MatX o(6, 5);
    for (int j = 0; j < 5; ++j) {
        const Real h = oracle_step(static_cast<double>(x0(j)), base_step);
        RVec5 plus = x0;
        RVec5 minus = x0;
        plus(j) += h;
        minus(j) -= h;
        const RVec6 diff = sm_outputs(plus, ur, params) - sm_outputs(minus, ur, params);
        o.col(j) = (diff / (plus(j) - minus(j))).cast<double>();
    }
    return o;
}

MatX lie_oracle(sim::MachineKind machine, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                const Eigen::VectorXd& du, const sim::MachineParams& params, int order,
                double base_step) {
    if (sim::is_sm(machine)) {
        return lie_oracle_sm(SMState::from_vector(x), u.head<3>(), std::get<SMParams>(params),
                             order, base_step);
    }
    return lie_oracle_im(IMState::from_vector(x), u.head<2>(), du.head<2>(),
                         std::get<IMParams>(params), order, base_step);
}

double im_oracle_scale(const IMParams& params) {
    const models::IMDerived d = models::im_derived(params);
    const double sl = d.sigma * params.L_s;
    const double mr = params.M / params.L_r;
    return sl * sl * sl * sl / (mr * mr);
}

Mat6 im_oracle_to_scaled(const Mat6& physical, const IMParams& params) {
    const models::IMDerived d = models::im_derived(params);
    const double sl = d.sigma * params.L_s;
    const double mr = params.M / params.L_r;
    Vec6 col_scale;
    col_scale << 1.0 / sl, 1.0 / sl, 1.0 / mr, 1.0 / mr, 1.0, 1.0;
    // scaled outputs are σL_s times the physical ones
    return sl * physical * col_scale.asDiagonal();
}

}  // namespace acobs::obsv
