#include "acobs/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include "acobs/cli/csv.hpp"
#include "acobs/errors.hpp"
#include "acobs/models/transforms.hpp"
#include "acobs/obsv/im_observability.hpp"
#include "acobs/obsv/lie_oracle.hpp"
#include "acobs/obsv/rank.hpp"
#include "acobs/obsv/sm_observability.hpp"

namespace acobs::cli {

namespace {

using models::IMParams;
using models::IMState;
using models::SMParams;
using models::SMState;
using models::SMVariant;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOracleTol = 1e-5;
constexpr double kScaleCvTol = 1e-8;
constexpr double kChainTol = 1e-12;

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double sym(double r) { return uniform(-r, r); }

    IMState im_state() {
        IMState x;
        x.current = Vec2(sym(20.0), sym(20.0));
        x.flux = Vec2(sym(1.0), sym(1.0));
        x.omega = sym(600.0);
        x.load_torque = sym(10.0);
        return x;
    }

    SMState sm_state(const SMParams& params) {
        SMState x;
        x.current = Vec3(sym(20.0), sym(20.0), uniform(-10.0, 10.0));
        x.omega = sym(600.0);
        x.theta = uniform(0.0, kTwoPi);
        return models::pin_field(x, params);
    }

    Vec3 sm_input() { return Vec3(sym(300.0), sym(300.0), sym(50.0)); }
    Vec2 voltage() { return Vec2(sym(300.0), sym(300.0)); }
    Vec2 voltage_rate() { return Vec2(sym(1e5), sym(1e5)); }

private:
    std::mt19937_64 rng_;
};

/// Tracks the worst value of an error measure.
struct Worst {
    double value = 0.0;
    void update(double v) {
        if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
        value = std::max(value, v);
    }
};

PropertyResult make(std::string name, double worst, double tol, std::string detail = {}) {
    return {std::move(name), worst <= tol, worst, tol, std::move(detail)};
}

/// Entrywise relative error; entries below 1e−6 of their row's largest
/// closed-form entry are compared against that floor instead of themselves.
double entrywise_error(const MatX& oracle, const MatX& closed) {
    double worst = 0.0;
    for (Eigen::Index r = 0; r < closed.rows(); ++r) {
        const double row_scale = closed.row(r).cwiseAbs().maxCoeff();
        for (Eigen::Index c = 0; c < closed.cols(); ++c) {
            const double ref = std::max(std::abs(closed(r, c)), 1e-6 * row_scale);
            if (ref == 0.0) {
                worst = std::max(worst, std::abs(oracle(r, c)) > 0.0 ? 1.0 : 0.0);
                continue;
            }
            worst = std::max(worst, std::abs(oracle(r, c) - closed(r, c)) / ref);
        }
    }
    return worst;
}

double coefficient_of_variation(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size());
    return std::sqrt(var) / std::abs(mean);
}

double im_delta_checked(const IMState& x, const IMParams& params, bool mutate) {
    const double delta = obsv::im_delta(x, params);
    if (!mutate) return delta;
    // flip the sign of the flux-rate (cross) term
    const models::IMDerived d = models::im_derived(params);
    const IMState rate = models::im_dynamics(x, Vec2::Zero(), params);
    const double k = params.p / params.J * std::pow(params.M / params.L_r, 2);
    const double cross = -k * (x.omega * x.omega + 1.0 / (d.tau_r * d.tau_r)) *
                         (rate.flux(0) * x.flux(1) - rate.flux(1) * x.flux(0));
    return delta - 2.0 * cross;
}

double sm_delta_checked(const obsv::DqQuantities& q, const SMParams& params, bool mutate) {
    const double delta = obsv::delta::specialized(params.variant, q, params);
    if (!mutate) return delta;
    obsv::DqQuantities still = q;
    still.di_d = still.di_q = still.di_f = 0.0;
    const double speed_term = obsv::delta::specialized(params.variant, still, params);
    return speed_term - (delta - speed_term);
}

std::vector<PropertyResult> check_transforms(Sampler& s, int n) {
    Worst roundtrip;
    Worst norm;
    for (int k = 0; k < n; ++k) {
        const Vec2 v(s.sym(100.0), s.sym(100.0));
        const double theta = s.sym(50.0);
        const Vec2 dq = models::park(v, theta);
        roundtrip.update((models::inverse_park(dq, theta) - v).norm() / std::max(v.norm(), 1e-300));
        norm.update(std::abs(dq.norm() - v.norm()) / std::max(v.norm(), 1e-300));
    }
    return {make("park_roundtrip", roundtrip.value, 1e-12),
            make("park_norm_preserving", norm.value, 1e-12)};
}

std::vector<PropertyResult> check_im(Sampler& s, int n, bool mutate) {
    const IMParams params;
    const models::IMDerived d = models::im_derived(params);
    const double scale = obsv::im_oracle_scale(params);

    Worst matrix;
    Worst det_closed;
    Worst det_oracle;
    Worst factorization;
    std::vector<double> ratios;
    for (int k = 0; k < n; ++k) {
        const IMState x = s.im_state();
        const Vec2 u = s.voltage();
        const Vec2 du = s.voltage_rate();
        const Mat6 closed = obsv::im_obsv_matrix(x, params);
        const Mat6 physical = obsv::lie_oracle_im(x, u, du, params, 2);
        matrix.update(entrywise_error(obsv::im_oracle_to_scaled(physical, params), closed));

        const double delta = im_delta_checked(x, params, mutate);
        const double bound = obsv::im_delta_normalization(x, params) *
                             (std::abs(x.omega) * d.tau_r + 1.0) * 10.0;
        det_closed.update(std::abs(delta - closed.determinant()) / bound);

        const double numeric = physical.determinant();
        det_oracle.update(std::abs(delta - scale * numeric) / std::abs(delta));
        ratios.push_back(delta / numeric);

        const auto margin = obsv::im_geometric_margin(x, params);
        const double normalized = delta / obsv::im_delta_normalization(x, params);
        const double expected = d.tau_r * (margin.omega_s - margin.critical_rate);
        factorization.update(std::abs(normalized - expected) /
                             std::max(1.0, std::abs(expected)));
    }
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    const double s_est = sorted.empty() ? 0.0 : sorted[sorted.size() / 2];
    return {
        make("im_matrix_vs_oracle", matrix.value, kOracleTol),
        make("im_delta_vs_matrix_det", det_closed.value, 1e-10),
        make("im_delta_vs_oracle_det", det_oracle.value, kOracleTol),
        make("im_scale_constant_cv", coefficient_of_variation(ratios), kScaleCvTol),
        make("im_scale_constant_value", std::abs(s_est / scale - 1.0), kOracleTol,
             "estimated " + format_double(s_est) + ", expected " + format_double(scale)),
        make("im_geometric_factorization", factorization.value, 1e-9),
    };
}

/// States on the two singular manifolds: Ψ̇_r = 0 with ω̇_e = 0, and
/// Ψ̇_r ∥ Ψ_r with ω̇_e = 0.
std::vector<PropertyResult> check_im_manifolds(Sampler& s, int n) {
    const IMParams params;
    const models::IMDerived d = models::im_derived(params);
    Worst stationary;
    Worst colinear;
    for (int k = 0; k < n; ++k) {
        for (int kind = 0; kind < 2; ++kind) {
            IMState x = s.im_state();
            // Ψ̇ = −(1/τ − ω𝕁)Ψ + (M/τ)𝓘 = λΨ  ⇒  𝓘 = (τ/M)((1/τ + λ)Ψ − ω𝕁Ψ)
            const double lambda = kind == 0 ? 0.0 : s.sym(50.0);
            x.current = d.tau_r / params.M *
                        ((1.0 / d.tau_r + lambda) * x.flux - x.omega * (rot90() * x.flux));
            x.load_torque = models::im_motor_torque(x, params);
            const double normalized = obsv::im_delta(x, params) / obsv::im_delta_normalization(x, params);
            (kind == 0 ? stationary : colinear).update(std::abs(normalized));
        }
    }
    return {make("im_singular_stationary_flux", stationary.value, 1e-12),
            make("im_singular_colinear_flux", colinear.value, 1e-12)};
}

std::vector<PropertyResult> check_sm_variant(Sampler& s, int n, SMVariant variant, bool mutate) {
    const SMParams params = models::default_sm_params(variant);
    const std::string tag(models::to_string(variant));
    Worst matrix;
    Worst det_oracle;
    Worst det_closed;
    std::vector<double> ratios;
    for (int k = 0; k < n; ++k) {
        const SMState x = s.sm_state(params);
        const Vec3 u = s.sm_input();
        const auto closed = obsv::sm_obsv_matrix(x, u, params);
        const MatX oracle = obsv::lie_oracle_sm(x, u, params);
        matrix.update(entrywise_error(oracle, closed.full));

        const auto q = obsv::sm_dq_quantities(x, u, params);
        const double delta = sm_delta_checked(q, params, mutate);
        const double magnitude = obsv::delta::magnitude(q, params);
        det_closed.update(std::abs(delta - closed.first_five().determinant()) / magnitude);

        const double numeric = oracle.topRows(5).determinant();
        if (std::abs(delta) > 1e-6 * magnitude) {
            det_oracle.update(std::abs(delta - numeric) / std::abs(delta));
            ratios.push_back(delta / numeric);
        } else {
            det_oracle.update(std::abs(delta - numeric) / magnitude);
        }
    }
    return {
        make("sm_matrix_vs_oracle[" + tag + "]", matrix.value, kOracleTol),
        make("sm_delta_vs_matrix_det[" + tag + "]", det_closed.value, 1e-10),
        make("sm_delta_vs_oracle_det[" + tag + "]", det_oracle.value, kOracleTol),
        make("sm_scale_constant_cv[" + tag + "]", coefficient_of_variation(ratios), kScaleCvTol),
    };
}

/// WRSM → N-WRSM (L_2 = 0), WRSM → IPMSM (field replaced by a magnet),
/// IPMSM → SPMSM (L_2 = 0), IPMSM → SyRM (ψ_r = 0), and each specialized
/// form against the general one.
std::vector<PropertyResult> check_specialization(Sampler& s, int n) {
    Worst chain;
    Worst general;
    for (int k = 0; k < n; ++k) {
        obsv::DqQuantities q{s.sym(20.0), s.sym(20.0), s.uniform(-10.0, 10.0),
                             s.sym(1e4),  s.sym(1e4),  s.sym(1e3),
                             s.sym(600.0)};
        auto rel = [](double a, double b, double scale) { return std::abs(a - b) / scale; };

        SMParams w = models::default_sm_params(SMVariant::WRSM);
        SMParams w0 = w;
        w0.L_2 = 0.0;
        w0.variant = SMVariant::NWRSM;
        chain.update(rel(obsv::delta::wrsm(q, w0), obsv::delta::non_salient_wrsm(q, w0),
                         obsv::delta::magnitude(q, w0)));

        SMParams ip = models::default_sm_params(SMVariant::IPMSM);
        SMParams wf = ip;
        wf.L_f = std::numeric_limits<double>::max();  // field reduction M_f²/L_f vanishes
        obsv::DqQuantities qm = q;
        qm.i_f = ip.psi_r / ip.M_f;
        qm.di_f = 0.0;
        chain.update(rel(obsv::delta::wrsm(qm, wf), obsv::delta::ipmsm(qm, ip),
                         obsv::delta::magnitude(qm, ip)));

        SMParams sp = ip;
        sp.L_2 = 0.0;
        sp.variant = SMVariant::SPMSM;
        chain.update(rel(obsv::delta::ipmsm(qm, sp), obsv::delta::spmsm(qm, sp),
                         obsv::delta::magnitude(qm, sp)));

        SMParams sy = ip;
        sy.psi_r = 0.0;
        sy.variant = SMVariant::SyRM;
        chain.update(rel(obsv::delta::ipmsm(qm, sy), obsv::delta::syrm(qm, sy),
                         obsv::delta::magnitude(qm, sy)));

        for (SMVariant v : {SMVariant::WRSM, SMVariant::NWRSM, SMVariant::IPMSM, SMVariant::SPMSM,
                            SMVariant::SyRM}) {
            const SMParams p = models::default_sm_params(v);
            obsv::DqQuantities qv = q;
            if (models::has_pinned_field(v)) {
                qv.i_f = models::pinned_field_current(p);
                qv.di_f = 0.0;
            }
            general.update(rel(obsv::delta::specialized(v, qv, p), obsv::delta::general(qv, p),
                               obsv::delta::magnitude(qv, p)));
        }
    }
    return {make("sm_specialization_chain", chain.value, kChainTol),
            make("sm_specialized_vs_general", general.value, kChainTol)};
}

std::vector<PropertyResult> check_sm_structure(Sampler& s, int n) {
    Worst approx;
    Worst standstill;
    Worst inductance;
    for (int k = 0; k < n; ++k) {
        for (SMVariant v : {SMVariant::IPMSM, SMVariant::SPMSM, SMVariant::SyRM}) {
            const SMParams p = models::default_sm_params(v);
            SMState x = s.sm_state(p);
            if (v == SMVariant::SyRM && x.current.head<2>().norm() < 1e-9) continue;
            approx.update(std::abs(obsv::sm_approx_factor(x, p) - 1.0));
        }
        const SMParams sp = models::default_sm_params(SMVariant::SPMSM);
        SMState x = s.sm_state(sp);
        x.omega = 0.0;
        const Vec3 u = s.sm_input();
        standstill.update(std::abs(obsv::sm_delta(x, u, sp)));
        const Mat5 m5 = obsv::sm_obsv_matrix(x, u, sp).first_five();
        standstill.update(std::abs(m5.determinant()) / m5.rowwise().norm().prod());

        const SMParams w = models::default_sm_params(SMVariant::WRSM);
        const auto m = models::sm_inductance(s.uniform(0.0, kTwoPi), w);
        inductance.update((m.L - m.L.transpose()).cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Mat3> eig(m.L);
        if (eig.eigenvalues().minCoeff() <= 0.0) inductance.update(1.0);
    }
    return {make("pmsm_syrm_approx_factor_unity", approx.value, 0.0),
            make("spmsm_standstill_singular", standstill.value, 1e-14),
            make("wrsm_inductance_symmetric_positive", inductance.value, 0.0)};
}

/// Central differences must converge at second order where truncation
/// dominates (steps 1e−2 .. 2.5e−3 on O(1) coordinates).
std::vector<PropertyResult> check_oracle_order(Sampler& s, int n) {
    const SMParams params = models::default_sm_params(SMVariant::WRSM);
    Worst deviation;
    const int trials = std::max(1, n / 50);
    for (int k = 0; k < trials; ++k) {
        SMState x = s.sm_state(params);
        x.theta = s.uniform(0.0, kTwoPi);
        const Vec3 u = s.sm_input();
        const Mat65 exact = obsv::sm_obsv_matrix(x, u, params).full;
        const double e1 = (obsv::lie_oracle_sm(x, u, params, 1, 1e-2) - exact).col(4).norm();
        const double e2 = (obsv::lie_oracle_sm(x, u, params, 1, 5e-3) - exact).col(4).norm();
        const double e3 = (obsv::lie_oracle_sm(x, u, params, 1, 2.5e-3) - exact).col(4).norm();
        deviation.update(std::abs(std::log2(e1 / e2) - 2.0));
        deviation.update(std::abs(std::log2(e2 / e3) - 2.0));
    }
    return {make("oracle_second_order_convergence", deviation.value, 0.2)};
}

std::vector<PropertyResult> check_rank(Sampler& s, int n) {
    Worst invariance;
    int wrong_rank = 0;
    const int trials = std::max(1, n / 10);
    for (int k = 0; k < trials; ++k) {
        MatX m(6, 6);
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = s.sym(1.0);
        const int deficient = k % 3;
        for (int j = 0; j < deficient; ++j) m.col(5 - j) = m.col(j) * s.uniform(0.5, 2.0) + m.col(j + 1);
        const auto base = obsv::rank_analysis(m);
        if (base.rank != 6 - deficient) ++wrong_rank;

        Eigen::PermutationMatrix<Eigen::Dynamic> perm(6);
        perm.setIdentity();
        std::shuffle(perm.indices().data(), perm.indices().data() + 6, std::mt19937_64(k));
        const auto permuted = obsv::rank_analysis(perm * m * perm.transpose());
        const double c = s.uniform(0.1, 10.0);
        const auto scaled = obsv::rank_analysis(c * m);
        invariance.update(std::abs(permuted.rank - base.rank) + std::abs(scaled.rank - base.rank));
        invariance.update(std::abs(scaled.sigma_max / (c * base.sigma_max) - 1.0));
    }
    return {make("rank_permutation_scale_invariance", invariance.value, 1e-12),
            make("rank_detects_deficiency", wrong_rank, 0.0)};
}

}  // namespace

std::vector<PropertyResult> run_verify(const VerifyOptions& options) {
    if (options.n_states < 1) throw ConfigError("verify: --n must be at least 1");
    Sampler s(options.seed);
    const int n = options.n_states;
    std::vector<PropertyResult> out;
    auto add = [&out](std::vector<PropertyResult> r) {
        out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
    };
    add(check_transforms(s, n));
    add(check_im(s, n, options.mutate));
    add(check_im_manifolds(s, n));
    for (SMVariant v : {SMVariant::WRSM, SMVariant::NWRSM, SMVariant::IPMSM, SMVariant::SPMSM,
                        SMVariant::SyRM}) {
        add(check_sm_variant(s, n, v, options.mutate));
    }
    add(check_specialization(s, n));
    add(check_sm_structure(s, n));
    add(check_oracle_order(s, n));
    add(check_rank(s, n));
    return out;
}

void print_results(std::ostream& out, const std::vector<PropertyResult>& results) {
    for (const auto& r : results) {
        out << (r.pass ? "PASS " : "FAIL ") << r.name << " worst=" << format_double(r.worst)
            << " tol=" << format_double(r.tolerance);
        if (!r.detail.empty()) out << " (" << r.detail << ")";
        out << '\n';
    }
}

bool all_passed(const std::vector<PropertyResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

}  // namespace acobs::cli
