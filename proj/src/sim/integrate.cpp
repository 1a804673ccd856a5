#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "acobs/errors.hpp"
#include "acobs/models/transforms.hpp"
#include "acobs/sim/rk4.hpp"
#include "acobs/sim/trajectory.hpp"

namespace acobs::sim {

namespace {

constexpr double kDivergenceLimit = 1e9;

void check_divergence(const Eigen::VectorXd& x, double t) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x(i)) || std::abs(x(i)) > kDivergenceLimit) {
            throw DivergenceError("state component " + std::to_string(i) +
                                  " diverged at t = " + std::to_string(t));
        }
    }
}

}  // namespace

models::IMState im_state(const TrajectorySample& sample) {
    return models::IMState::from_vector(sample.state);
}

models::SMState sm_state(const TrajectorySample& sample) {
    return models::SMState::from_vector(sample.state);
}

double balanced_load(const Scenario& scenario) {
    if (is_sm(scenario.machine)) {
        return models::sm_torque(std::get<models::SMState>(scenario.x0), scenario.sm_params());
    }
    return models::im_motor_torque(std::get<models::IMState>(scenario.x0), scenario.im_params());
}

Trajectory integrate(const Scenario& scenario) {
    validate(scenario);
    const long steps = step_count(scenario);
    const double dt = scenario.dt;
    const bool sm = is_sm(scenario.machine);
    const int nu = input_dim(scenario.machine);
    const LoadProfile& load = scenario.load;
    const double balance_value = load.balance ? balanced_load(scenario) : 0.0;
    auto load_at = [&](double t) { return load.balance ? balance_value : load.at(t); };
    const bool im_load_override = !sm && (load.balance || !load.segments.empty());

    Eigen::VectorXd x;
    if (sm) {
        x = models::pin_field(std::get<models::SMState>(scenario.x0), scenario.sm_params()).to_vector();
    } else {
        x = std::get<models::IMState>(scenario.x0).to_vector();
    }

    Trajectory traj;
    traj.machine = scenario.machine;
    traj.dt = dt;
    traj.samples.reserve(static_cast<std::size_t>(steps) + 1);

    for (long k = 0;; ++k) {
        const double t = static_cast<double>(k) * dt;
        if (im_load_override) x(5) = load_at(t);

        TrajectorySample sample;
        sample.t = t;
        sample.state = x;
        if (sm) sample.state(4) = models::wrap_two_pi(x(4));
        const ExcitationSample e = excite(scenario.excitation, t);
        sample.u = e.u.head(nu);
        sample.du = e.du.head(nu);
        traj.samples.push_back(std::move(sample));
        if (k == steps) break;

        if (sm) {
            const models::SMParams& params = scenario.sm_params();
            const double load_torque = load_at(t);
            auto rhs = [&](double tau, const Eigen::VectorXd& v) -> Eigen::VectorXd {
                const Vec3 u = excite(scenario.excitation, tau).u;
                models::SMState rate =
                    models::sm_dynamics(models::SMState::from_vector(v), u, load_torque, params);
                if (load.locked_rotor) rate.omega = 0.0;
                return rate.to_vector();
            };
            x = rk4_step(rhs, t, x, dt);
            x = models::pin_field(models::SMState::from_vector(x), params).to_vector();
        } else {
            const models::IMParams& params = scenario.im_params();
            auto rhs = [&](double tau, const Eigen::VectorXd& v) -> Eigen::VectorXd {
                const Vec2 u = excite(scenario.excitation, tau).u.head<2>();
                models::IMState rate = models::im_dynamics(models::IMState::from_vector(v), u, params);
                if (load.locked_rotor) rate.omega = 0.0;
                return rate.to_vector();
            };
            x = rk4_step(rhs, t, x, dt);
        }
        check_divergence(x, static_cast<double>(k + 1) * dt);
    }
    return traj;
}

models::IMState steady_state_hint(const Scenario& scenario) {
    if (scenario.machine != MachineKind::IM) {
        throw std::invalid_argument("steady_state_hint applies to the induction machine only");
    }
    const auto& ex = scenario.excitation;
    double omega_s = 0.0;
    switch (ex.kind) {
        case ExcitationKind::Zero:
        case ExcitationKind::DC:
            break;
        case ExcitationKind::Sinusoid:
            omega_s = 2.0 * std::numbers::pi * ex.frequency;
            break;
        default:
            throw std::invalid_argument("steady_state_hint needs zero, dc or sinusoid excitation");
    }
    const models::IMParams& params = scenario.im_params();
    const models::IMDerived d = models::im_derived(params);
    models::IMState x0 = std::get<models::IMState>(scenario.x0);

    using cplx = std::complex<double>;
    const double amp = ex.kind == ExcitationKind::Zero ? 0.0 : ex.amplitude;
    const cplx v = std::polar(amp, ex.phase);
    const cplx j(0.0, 1.0);
    // Scaled current/flux phasors rotating at ω_s; 𝕁₂ acts as multiplication by j.
    const cplx gamma = 1.0 / d.tau_r - j * x0.omega;
    const cplx m11 = j * omega_s - d.a;
    const cplx m12 = -gamma;
    const cplx m21 = d.a - d.b;
    const cplx m22 = j * omega_s + gamma;
    const cplx det = m11 * m22 - m12 * m21;
    const double size = std::abs(m11 * m22) + std::abs(m12 * m21);
    if (!(std::abs(det) > 1e-12 * size)) {
        throw SingularPhasorError("steady-state phasor system is singular");
    }
    const cplx current = m22 * v / det;
    const cplx flux = -m21 * v / det;

    models::IMState scaled = x0;
    scaled.current = Vec2(current.real(), current.imag());
    scaled.flux = Vec2(flux.real(), flux.imag());
    return models::im_unscale(scaled, params);
}

}  // namespace acobs::sim
