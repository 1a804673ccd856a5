#pragma once

// Open-loop voltage excitation with closed-form time derivatives.

#include "acobs/linalg.hpp"

namespace acobs::sim {

enum class ExcitationKind { Zero, DC, Sinusoid, RampedSinusoid, Chirp };

/// Two-phase stator voltage A·(cos φ(t), sin φ(t)) plus an optional field
/// channel v_f = field_voltage·cos(2π·field_frequency·t).
///
/// - sinusoid: φ(t) = 2πf·t + phase
/// - chirp: φ(t) = 2π(f·t + ½·frequency_rate·t²) + phase, constant amplitude
/// - ramped-sinusoid: chirp phase with a volts-per-hertz amplitude
///   A·f(t)/f (A when f = 0), f(t) = f + frequency_rate·t
/// - dc: A·(cos phase, sin phase)
struct ExcitationProfile {
    ExcitationKind kind = ExcitationKind::Zero;
    double amplitude = 0.0;       ///< [V]
    double frequency = 0.0;       ///< initial frequency [Hz]
    double frequency_rate = 0.0;  ///< [Hz/s]
    double phase = 0.0;           ///< [rad]
    double field_voltage = 0.0;   ///< [V]
    double field_frequency = 0.0; ///< [Hz]
};

/// Throws std::invalid_argument on negative amplitude or frequency.
void validate(const ExcitationProfile& profile);

struct ExcitationSample {
    Vec3 u;   ///< (v_α, v_β, v_f)
    Vec3 du;  ///< exact time derivative of u
};

ExcitationSample excite(const ExcitationProfile& profile, double t);

}  // namespace acobs::sim
