#include "acobs/models/params.hpp"

#include <cmath>
#include <string>

#include "acobs/errors.hpp"

namespace acobs::models {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ParameterError(std::string(name) + " must be positive and finite (got " +
                             std::to_string(value) + ")");
    }
}

}  // namespace

void validate(const IMParams& params) {
    require_positive(params.R_s, "R_s");
    require_positive(params.R_r, "R_r");
    require_positive(params.L_s, "L_s");
    require_positive(params.L_r, "L_r");
    require_positive(params.M, "M");
    require_positive(params.J, "J");
    if (params.p < 1) throw ParameterError("p must be at least 1");
    const double sigma = 1.0 - params.M * params.M / (params.L_s * params.L_r);
    if (!(sigma > 0.0 && sigma < 1.0)) {
        throw ParameterError("sigma = 1 - M^2/(L_s L_r) must lie in (0, 1) (got " +
                             std::to_string(sigma) + ")");
    }
}

IMDerived im_derived(const IMParams& params) {
    require_positive(params.L_s, "L_s");
    require_positive(params.L_r, "L_r");
    if (params.R_r == 0.0) throw ParameterError("R_r must be nonzero");
    IMDerived d{};
    d.sigma = 1.0 - params.M * params.M / (params.L_s * params.L_r);
    if (!(d.sigma > 0.0 && d.sigma < 1.0)) {
        throw ParameterError("sigma = 1 - M^2/(L_s L_r) must lie in (0, 1) (got " +
                             std::to_string(d.sigma) + ")");
    }
    d.r_s = params.R_s + params.R_r * params.M * params.M / (params.L_r * params.L_r);
    d.tau_r = params.L_r / params.R_r;
    d.a = -d.r_s / (d.sigma * params.L_s);
    d.b = -params.R_s / (d.sigma * params.L_s);
    d.c = 3.0 * params.p * params.p / (2.0 * d.sigma * params.L_s);
    return d;
}

std::string_view to_string(SMVariant variant) {
    switch (variant) {
        case SMVariant::WRSM: return "wrsm";
        case SMVariant::NWRSM: return "n-wrsm";
        case SMVariant::IPMSM: return "ipmsm";
        case SMVariant::SPMSM: return "spmsm";
        case SMVariant::SyRM: return "syrm";
    }
    return "?";
}

SMParams default_sm_params(SMVariant variant) {
    SMParams params;
    params.variant = variant;
    if (variant == SMVariant::NWRSM || variant == SMVariant::SPMSM) params.L_2 = 0.0;
    if (variant == SMVariant::SyRM) params.psi_r = 0.0;
    return params;
}

void validate(const SMParams& params) {
    require_positive(params.R_s, "R_s");
    require_positive(params.L_0, "L_0");
    require_positive(params.J, "J");
    if (params.p < 1) throw ParameterError("p must be at least 1");
    if (!std::isfinite(params.L_2)) throw ParameterError("L_2 must be finite");
    if (!(params.L_0 + params.L_2 > 0.0)) throw ParameterError("L_d = L_0 + L_2 must be positive");
    if (!(params.L_0 - params.L_2 > 0.0)) throw ParameterError("L_q = L_0 - L_2 must be positive");

    const auto v = params.variant;
    if ((v == SMVariant::NWRSM || v == SMVariant::SPMSM) && params.L_2 != 0.0) {
        throw ParameterError("L_2 must be 0 for non-salient variant " + std::string(to_string(v)));
    }
    if (v == SMVariant::SyRM && params.psi_r != 0.0) {
        throw ParameterError("psi_r must be 0 for syrm");
    }
    if (v == SMVariant::WRSM || v == SMVariant::NWRSM) {
        require_positive(params.R_f, "R_f");
        require_positive(params.L_f, "L_f");
        require_positive(params.M_f, "M_f");
        if (!(params.L_0 + params.L_2 - params.M_f * params.M_f / params.L_f > 0.0)) {
            throw ParameterError("L_D = L_d - M_f^2/L_f must be positive");
        }
    } else {
        if (!(params.psi_r >= 0.0) || !std::isfinite(params.psi_r)) {
            throw ParameterError("psi_r must be non-negative and finite");
        }
        if (params.psi_r != 0.0) require_positive(params.M_f, "M_f");
    }
}

SMInductances sm_inductances(const SMParams& params) {
    SMInductances l{};
    l.L_d = params.L_0 + params.L_2;
    l.L_q = params.L_0 - params.L_2;
    l.L_delta = l.L_d - l.L_q;
    if (has_pinned_field(params.variant)) {
        l.L_D = l.L_d;
        l.L_Delta = l.L_delta;
    } else {
        const double field = params.M_f * params.M_f / params.L_f;
        l.L_D = l.L_d - field;
        l.L_Delta = l.L_delta - field;
    }
    return l;
}

double pinned_field_current(const SMParams& params) {
    if (params.variant == SMVariant::SyRM || params.psi_r == 0.0) return 0.0;
    return params.psi_r / params.M_f;
}

}  // namespace acobs::models
