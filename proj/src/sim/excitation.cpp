#include "acobs/sim/excitation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace acobs::sim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void validate(const ExcitationProfile& profile) {
    if (!(profile.amplitude >= 0.0)) throw std::invalid_argument("amplitude must be >= 0");
    if (!(profile.frequency >= 0.0)) throw std::invalid_argument("frequency must be >= 0");
    if (!(profile.field_frequency >= 0.0)) {
        throw std::invalid_argument("field_frequency must be >= 0");
    }
}

ExcitationSample excite(const ExcitationProfile& profile, double t) {
    ExcitationSample s{Vec3::Zero(), Vec3::Zero()};
    const double A = profile.amplitude;
    const double f0 = profile.frequency;
    const double rate = profile.frequency_rate;

    double amp = 0.0;
    double amp_rate = 0.0;
    double angle = profile.phase;
    double angle_rate = 0.0;
    switch (profile.kind) {
        case ExcitationKind::Zero:
            break;
        case ExcitationKind::DC:
            amp = A;
            break;
        case ExcitationKind::Sinusoid:
            amp = A;
            angle += kTwoPi * f0 * t;
            angle_rate = kTwoPi * f0;
            break;
        case ExcitationKind::Chirp:
            amp = A;
            angle += kTwoPi * (f0 * t + 0.5 * rate * t * t);
            angle_rate = kTwoPi * (f0 + rate * t);
            break;
        case ExcitationKind::RampedSinusoid:
            if (f0 > 0.0) {
                amp = A * (f0 + rate * t) / f0;
                amp_rate = A * rate / f0;
            } else {
                amp = A;
            }
            angle += kTwoPi * (f0 * t + 0.5 * rate * t * t);
            angle_rate = kTwoPi * (f0 + rate * t);
            break;
    }

    const double c = std::cos(angle);
    const double sn = std::sin(angle);
    s.u(0) = amp * c;
    s.u(1) = amp * sn;
    s.du(0) = amp_rate * c - amp * angle_rate * sn;
    s.du(1) = amp_rate * sn + amp * angle_rate * c;

    const double wf = kTwoPi * profile.field_frequency;
    s.u(2) = profile.field_voltage * std::cos(wf * t);
    s.du(2) = -profile.field_voltage * wf * std::sin(wf * t);
    return s;
}

}  // namespace acobs::sim
