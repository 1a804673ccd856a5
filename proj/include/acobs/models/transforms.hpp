#pragma once

#include "acobs/linalg.hpp"

namespace acobs::models {

/// Stationary (αβ) to rotor (dq) frame: rotation by −θ.
Vec2 park(const Vec2& v, double theta);

/// Rotor (dq) to stationary (αβ) frame: rotation by +θ.
Vec2 inverse_park(const Vec2& v, double theta);

/// Wrap an angle to [0, 2π).
double wrap_two_pi(double angle);

}  // namespace acobs::models
