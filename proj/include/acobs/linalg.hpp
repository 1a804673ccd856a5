#pragma once

// Fixed-size linear algebra vocabulary shared by every module.

#include <Eigen/Dense>

namespace acobs {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat65 = Eigen::Matrix<double, 6, 5>;
using MatX = Eigen::MatrixXd;

/// Quarter-turn rotation [[0, -1], [1, 0]].
inline Mat2 rot90() {
    Mat2 j;
    j << 0.0, -1.0, 1.0, 0.0;
    return j;
}

}  // namespace acobs
