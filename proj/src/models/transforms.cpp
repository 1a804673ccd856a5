#include "acobs/models/transforms.hpp"

#include <cmath>
#include <numbers>

namespace acobs::models {

Vec2 park(const Vec2& v, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c * v.x() + s * v.y(), -s * v.x() + c * v.y()};
}

Vec2 inverse_park(const Vec2& v, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

double wrap_two_pi(double angle) {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    double w = std::fmod(angle, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    // fmod of a tiny negative value can round up to exactly 2π
    if (w >= kTwoPi) w = 0.0;
    return w;
}

}  // namespace acobs::models
