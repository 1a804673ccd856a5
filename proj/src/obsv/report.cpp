#include "acobs/obsv/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "acobs/errors.hpp"
#include "acobs/obsv/im_observability.hpp"
#include "acobs/obsv/lie_oracle.hpp"
#include "acobs/obsv/sm_observability.hpp"

namespace acobs::obsv {

namespace {

void fill_rank(SampleReport& r, const MatX& closed, double rank_tol) {
    const RankResult rank = rank_analysis(equilibrate(closed), rank_tol);
    r.sigma_min = rank.sigma_min;
    r.sigma_max = rank.sigma_max;
    r.rank = rank.rank;
    r.observable = rank.sigma_min > rank_tol * rank.sigma_max;
}

SampleReport analyze_im(const sim::TrajectorySample& s, const models::IMParams& params,
                        const AnalysisOptions& options) {
    SampleReport r;
    r.t = s.t;
    r.state = s.state;
    r.u = s.u;
    const models::IMState x = sim::im_state(s);
    r.delta_closed = im_delta(x, params);
    const double norm = im_delta_normalization(x, params);
    r.delta_normalized = norm > 0.0 ? r.delta_closed / norm : r.delta_closed;
    if (options.oracle) {
        const MatX oracle = lie_oracle_im(x, s.u.head<2>(), s.du.head<2>(), params, 2);
        r.delta_numeric = im_oracle_scale(params) * oracle.determinant();
    }
    fill_rank(r, im_obsv_matrix(x, params), options.rank_tol);
    try {
        const IMGeometricMargin m = im_geometric_margin(x, params);
        r.margin_lhs = m.omega_s;
        r.margin_rhs = m.critical_rate;
    } catch (const UndefinedAngleError&) {
    }
    return r;
}

SampleReport analyze_sm(const sim::Trajectory& traj, std::size_t k,
                        const models::SMParams& params, const AnalysisOptions& options) {
    const sim::TrajectorySample& s = traj.samples[k];
    SampleReport r;
    r.t = s.t;
    r.state = s.state;
    r.u = s.u;
    const models::SMState x = sim::sm_state(s);
    const Vec3 u = s.u.head<3>();
    r.delta_closed = sm_delta(x, u, params);
    const double norm = sm_delta_normalization(x, params);
    r.delta_normalized = norm > 0.0 ? r.delta_closed / norm : r.delta_closed;
    if (options.oracle) {
        const MatX oracle = lie_oracle_sm(x, u, params);
        r.delta_numeric = oracle.topRows(5).determinant();
    }
    fill_rank(r, sm_obsv_matrix(x, u, params).first_five(), options.rank_tol);
    if (k >= 1 && k + 1 < traj.size()) {
        try {
            const SMGeometricMargin m = sm_geometric_margin(traj, k, params);
            r.margin_lhs = m.omega;
            r.margin_rhs = m.dtheta_o;
            if (std::isfinite(m.approx_factor)) r.approx_factor = m.approx_factor;
        } catch (const UndefinedAngleError&) {
        }
    }
    return r;
}

}  // namespace

ReportSummary summarize(const std::vector<SampleReport>& samples) {
    ReportSummary s;
    s.samples = samples.size();
    if (samples.empty()) return s;
    std::size_t observable = 0;
    s.min_sigma_ratio = std::numeric_limits<double>::infinity();
    s.min_abs_delta = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const SampleReport& r = samples[k];
        if (r.observable) {
            ++observable;
        } else if (!s.singular_intervals.empty() && s.singular_intervals.back().last + 1 == k) {
            s.singular_intervals.back().last = k;
            s.singular_intervals.back().t_end = r.t;
        } else {
            s.singular_intervals.push_back({k, k, r.t, r.t});
        }
        const double ratio = r.sigma_max > 0.0 ? r.sigma_min / r.sigma_max : 0.0;
        s.min_sigma_ratio = std::min(s.min_sigma_ratio, ratio);
        s.min_abs_delta = std::min(s.min_abs_delta, std::abs(r.delta_closed));
    }
    s.fraction_observable = static_cast<double>(observable) / static_cast<double>(samples.size());
    return s;
}

ObservabilityReport analyze_trajectory(const sim::Trajectory& traj, const sim::Scenario& scenario,
                                       const AnalysisOptions& options) {
    if (traj.machine != scenario.machine) {
        throw std::invalid_argument("trajectory and scenario machines differ");
    }
    ObservabilityReport report;
    report.machine = traj.machine;
    report.samples.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        if (sim::is_sm(traj.machine)) {
            report.samples.push_back(analyze_sm(traj, k, scenario.sm_params(), options));
        } else {
            report.samples.push_back(analyze_im(traj.samples[k], scenario.im_params(), options));
        }
    }
    report.summary = summarize(report.samples);
    return report;
}

}  // namespace acobs::obsv
