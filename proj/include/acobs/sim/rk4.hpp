#pragma once

#include <Eigen/Dense>

namespace acobs::sim {

/// One classical fourth-order Runge–Kutta step of ẋ = f(t, x).
template <typename Rhs>
Eigen::VectorXd rk4_step(const Rhs& f, double t, const Eigen::VectorXd& x, double dt) {
    const Eigen::VectorXd k1 = f(t, x);
    const Eigen::VectorXd k2 = f(t + 0.5 * dt, x + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = f(t + 0.5 * dt, x + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = f(t + dt, x + dt * k3);
    return x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace acobs::sim
