#include <doctest.h>

#include <cmath>
#include <numbers>

#include "acobs/errors.hpp"
#include "acobs/sim/excitation.hpp"
#include "acobs/sim/trajectory.hpp"

using namespace acobs;
using namespace acobs::sim;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Scenario im_scenario(double amplitude, double frequency, double duration, double dt = 1e-4) {
    Scenario sc;
    sc.excitation.kind = ExcitationKind::Sinusoid;
    sc.excitation.amplitude = amplitude;
    sc.excitation.frequency = frequency;
    sc.duration = duration;
    sc.dt = dt;
    return sc;
}

Scenario sm_scenario(models::SMVariant v) {
    Scenario sc;
    sc.machine = v == models::SMVariant::WRSM    ? MachineKind::WRSM
                 : v == models::SMVariant::NWRSM ? MachineKind::NWRSM
                 : v == models::SMVariant::IPMSM ? MachineKind::IPMSM
                 : v == models::SMVariant::SPMSM ? MachineKind::SPMSM
                                                 : MachineKind::SyRM;
    sc.params = models::default_sm_params(v);
    sc.x0 = models::SMState{};
    sc.excitation = {ExcitationKind::Sinusoid, 20.0, 10.0, 0.0, 0.3, 4.0, 0.0};
    sc.duration = 0.05;
    return sc;
}

}  // namespace

TEST_CASE("excite") {
    SUBCASE("zero profile") {
        const auto s = excite(ExcitationProfile{}, 3.2);
        CHECK(s.u.norm() == 0.0);
        CHECK(s.du.norm() == 0.0);
    }
    SUBCASE("sinusoid at zero frequency is dc") {
        const auto s = excite({ExcitationKind::Sinusoid, 10.0, 0.0}, 1.0);
        CHECK(s.u(0) == 10.0);
        CHECK(s.u(1) == 0.0);
        CHECK(s.du.norm() == 0.0);
    }
    SUBCASE("sinusoid rotates at 2 pi f") {
        const auto s = excite({ExcitationKind::Sinusoid, 10.0, 50.0}, 0.013);
        const double rate = (s.u(0) * s.du(1) - s.u(1) * s.du(0)) / s.u.head<2>().squaredNorm();
        CHECK(rate == doctest::Approx(kTwoPi * 50.0));
    }
    SUBCASE("analytic derivatives match central differences") {
        const double h = 1e-6;
        for (auto kind : {ExcitationKind::Chirp, ExcitationKind::RampedSinusoid, ExcitationKind::Sinusoid}) {
            const ExcitationProfile prof{kind, 50.0, 3.0, 7.5, 0.4, 5.0, 2.0};
            for (double t : {0.05, 0.31, 0.77, 1.4}) {
                const Vec3 fd = (excite(prof, t + h).u - excite(prof, t - h).u) / (2 * h);
                const Vec3 du = excite(prof, t).du;
                CHECK((fd - du).norm() <= 1e-8 * du.norm());
            }
        }
    }
    SUBCASE("negative amplitude or frequency rejected") {
        CHECK_THROWS_AS(validate(ExcitationProfile{ExcitationKind::DC, -1.0}), std::invalid_argument);
        CHECK_THROWS_AS(validate(ExcitationProfile{ExcitationKind::Sinusoid, 1.0, -2.0}),
                        std::invalid_argument);
    }
}

TEST_CASE("integrate grid and determinism") {
    const Scenario sc = im_scenario(100.0, 50.0, 0.05);
    const Trajectory a = integrate(sc);
    const Trajectory b = integrate(sc);
    REQUIRE(a.size() == 501);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a.samples[k].t == static_cast<double>(k) * sc.dt);
        CHECK((a.samples[k].state.array() == b.samples[k].state.array()).all());
    }
}

TEST_CASE("integrate zero scenario stays at the origin") {
    Scenario sc;
    sc.duration = 0.01;
    for (const auto& s : integrate(sc).samples) CHECK(s.state.norm() == 0.0);
}

TEST_CASE("im at 50 Hz settles to a constant flux magnitude") {
    const Trajectory tr = integrate(im_scenario(325.0, 50.0, 1.5));
    const std::size_t start = tr.size() * 4 / 5;
    double lo = 1e300;
    double hi = 0.0;
    for (std::size_t k = start; k < tr.size(); ++k) {
        const double m = tr.samples[k].state.segment<2>(2).norm();
        lo = std::min(lo, m);
        hi = std::max(hi, m);
    }
    CHECK(hi > 0.1);
    CHECK((hi - lo) / hi <= 0.01);
}

TEST_CASE("rk4 converges at fourth order") {
    std::vector<Eigen::VectorXd> finals;
    for (double dt : {4e-4, 2e-4, 1e-4}) {
        finals.push_back(integrate(im_scenario(325.0, 50.0, 0.02, dt)).samples.back().state);
    }
    const double order = std::log2((finals[0] - finals[1]).norm() / (finals[1] - finals[2]).norm());
    CHECK(order >= 3.5);
}

TEST_CASE("free decay of the locked induction machine dissipates magnetic energy") {
    Scenario sc;
    models::IMState x;
    x.current = Vec2(5.0, -3.0);
    x.flux = Vec2(0.2, 0.6);
    sc.x0 = x;
    sc.load.locked_rotor = true;
    sc.duration = 0.3;
    const models::IMParams p;
    const double sigma = models::im_derived(p).sigma;
    double previous = 1e300;
    for (const auto& s : integrate(sc).samples) {
        const double w = 0.5 * sigma * p.L_s * s.state.head<2>().squaredNorm() +
                         0.5 * s.state.segment<2>(2).squaredNorm() / p.L_r;
        CHECK(w <= previous);
        previous = w;
    }
}

TEST_CASE("pinned field current never moves") {
    for (auto v : {models::SMVariant::IPMSM, models::SMVariant::SPMSM, models::SMVariant::SyRM}) {
        const Scenario sc = sm_scenario(v);
        const double pinned = models::pinned_field_current(sc.sm_params());
        for (const auto& s : integrate(sc).samples) CHECK(s.state(2) == pinned);
    }
}

TEST_CASE("sm theta recorded in [0, 2 pi)") {
    Scenario sc = sm_scenario(models::SMVariant::WRSM);
    models::SMState x;
    x.omega = -400.0;
    sc.x0 = x;
    for (const auto& s : integrate(sc).samples) {
        CHECK(s.state(4) >= 0.0);
        CHECK(s.state(4) < kTwoPi);
    }
}

TEST_CASE("variant reductions commute") {
    Scenario w = sm_scenario(models::SMVariant::WRSM);
    auto wp = w.sm_params();
    wp.L_2 = 0.0;
    w.params = wp;
    Scenario n = sm_scenario(models::SMVariant::NWRSM);
    auto np = n.sm_params();
    np.R_f = wp.R_f;
    n.params = np;
    const auto tw = integrate(w);
    const auto tn = integrate(n);
    for (std::size_t k = 0; k < tw.size(); ++k) {
        CHECK((tw.samples[k].state.array() == tn.samples[k].state.array()).all());
    }

    Scenario ip = sm_scenario(models::SMVariant::IPMSM);
    auto ipp = ip.sm_params();
    ipp.psi_r = 0.0;
    ip.params = ipp;
    const auto ti = integrate(ip);
    const auto ts = integrate(sm_scenario(models::SMVariant::SyRM));
    for (std::size_t k = 0; k < ti.size(); ++k) {
        CHECK((ti.samples[k].state.array() == ts.samples[k].state.array()).all());
    }
}

TEST_CASE("divergence guard") {
    Scenario sc = im_scenario(100.0, 50.0, 0.2);
    auto p = sc.im_params();
    p.R_s = -50.0;
    sc.params = p;
    CHECK_THROWS_AS(integrate(sc), std::invalid_argument);
    sc.allow_negative_resistance = true;
    CHECK_THROWS_AS(integrate(sc), DivergenceError);
}

TEST_CASE("load profiles") {
    LoadProfile load;
    load.segments = {{0.0, 1.0}, {0.5, 3.0}};
    CHECK(load.at(0.2) == 1.0);
    CHECK(load.at(0.5) == 3.0);
    CHECK(load.at(9.0) == 3.0);

    Scenario sc = im_scenario(325.0, 50.0, 0.01);
    models::IMState x;
    x.omega = 300.0;
    sc.x0 = x;
    sc.x0 = steady_state_hint(sc);
    sc.load.balance = true;
    const auto tr = integrate(sc);
    for (const auto& s : tr.samples) CHECK(s.state(5) == doctest::Approx(balanced_load(sc)));
    // balanced load on the electrical steady state keeps the speed constant
    CHECK(tr.samples.back().state(4) == doctest::Approx(300.0).epsilon(1e-7));
}

TEST_CASE("steady_state_hint") {
    const models::IMParams p;
    SUBCASE("zero amplitude") {
        Scenario sc = im_scenario(0.0, 50.0, 0.1);
        CHECK(steady_state_hint(sc).to_vector().norm() == 0.0);
    }
    SUBCASE("50 Hz residual") {
        Scenario sc = im_scenario(325.0, 50.0, 0.1);
        models::IMState x0;
        x0.omega = 290.0;
        sc.x0 = x0;
        const models::IMState x = steady_state_hint(sc);
        const models::IMState rate = models::im_dynamics(x, excite(sc.excitation, 0.0).u.head<2>(), p);
        // periodic steady state: currents and fluxes rotate at the supply frequency
        const double ws = kTwoPi * 50.0;
        Eigen::VectorXd residual(4);
        residual << rate.current - ws * rot90() * x.current, rate.flux - ws * rot90() * x.flux;
        CHECK(residual.norm() <= 1e-6 * x.to_vector().head<4>().norm());
        CHECK(x.omega == 290.0);
    }
    SUBCASE("dc excitation gives constant currents and fluxes") {
        Scenario sc = im_scenario(20.0, 0.0, 0.1);
        sc.excitation.kind = ExcitationKind::DC;
        models::IMState x0;
        x0.omega = 100.0;
        sc.x0 = x0;
        const models::IMState x = steady_state_hint(sc);
        const models::IMState rate = models::im_dynamics(x, excite(sc.excitation, 0.0).u.head<2>(), p);
        const models::IMDerived d = models::im_derived(p);
        CHECK(rate.current.norm() <= 1e-12 * 20.0 / (d.sigma * p.L_s));
        CHECK(rate.flux.norm() <= 1e-12 * p.M / d.tau_r * x.current.norm());
        CHECK(x.flux.norm() > 0.0);
    }
    SUBCASE("unsupported excitation") {
        Scenario sc = im_scenario(20.0, 5.0, 0.1);
        sc.excitation.kind = ExcitationKind::Chirp;
        CHECK_THROWS(steady_state_hint(sc));
    }
}
