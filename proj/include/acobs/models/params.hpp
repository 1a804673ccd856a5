#pragma once

// Machine constants for the induction machine and the synchronous-machine
// family, together with the coefficients derived from them.

#include <string>
#include <string_view>

namespace acobs::models {

// =============================================================================
// Induction machine
// =============================================================================

struct IMParams {
    double R_s = 1.2;   ///< stator resistance [Ω]
    double R_r = 1.0;   ///< rotor resistance [Ω]
    double L_s = 0.12;  ///< stator inductance [H]
    double L_r = 0.12;  ///< rotor inductance [H]
    double M = 0.11;    ///< mutual inductance [H]
    int p = 2;          ///< pole pairs
    double J = 0.01;    ///< rotor + load inertia [kg·m²]
};

/// Coefficients of the current/flux model and its scaled form.
struct IMDerived {
    double r_s;    ///< equivalent resistance R_s + R_r M²/L_r² [Ω]
    double sigma;  ///< leakage coefficient 1 − M²/(L_s L_r)
    double tau_r;  ///< rotor time constant L_r/R_r [s]
    double a;      ///< −r_s/(σ L_s) [1/s]
    double b;      ///< −R_s/(σ L_s) [1/s]
    double c;      ///< 3p²/(2σ L_s)
};

/// Throws ParameterError unless all constants are positive and σ ∈ (0, 1).
void validate(const IMParams& params);

/// Throws ParameterError when σ ∉ (0, 1); resistance signs are not checked.
IMDerived im_derived(const IMParams& params);

// =============================================================================
// Synchronous machine family
// =============================================================================

enum class SMVariant { WRSM, NWRSM, IPMSM, SPMSM, SyRM };

std::string_view to_string(SMVariant variant);

/// True for the variants without a field winding (i_f pinned).
constexpr bool has_pinned_field(SMVariant v) {
    return v == SMVariant::IPMSM || v == SMVariant::SPMSM || v == SMVariant::SyRM;
}

struct SMParams {
    double R_s = 0.5;     ///< stator resistance [Ω]
    double R_f = 2.0;     ///< field resistance [Ω]
    double L_0 = 10e-3;   ///< mean stator self-inductance [H]
    double L_2 = 2e-3;    ///< saliency inductance [H]
    double M_f = 50e-3;   ///< stator–field mutual inductance [H]
    double L_f = 0.5;     ///< field inductance [H]
    double psi_r = 0.1;   ///< permanent-magnet flux [Wb]
    int p = 3;            ///< pole pairs
    double J = 0.005;     ///< inertia [kg·m²]
    SMVariant variant = SMVariant::WRSM;
};

/// Desk-scale defaults with the variant constraints applied
/// (L_2 = 0 for the non-salient variants, ψ_r = 0 for the SyRM).
SMParams default_sm_params(SMVariant variant);

/// Axis inductances. L_D and L_Δ carry the field-winding reduction only
/// for the wound-rotor variants.
struct SMInductances {
    double L_d;
    double L_q;
    double L_delta;
    double L_D;
    double L_Delta;
};

void validate(const SMParams& params);

SMInductances sm_inductances(const SMParams& params);

/// Field current that stands in for the magnet flux (ψ_r/M_f), or 0 for SyRM.
double pinned_field_current(const SMParams& params);

}  // namespace acobs::models
