#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "acobs/errors.hpp"
#include "acobs/models/im.hpp"
#include "acobs/models/sm.hpp"
#include "acobs/models/transforms.hpp"
#include "acobs/sim/rk4.hpp"

using namespace acobs;
using namespace acobs::models;

namespace {

constexpr double kPi = std::numbers::pi;

std::mt19937_64& rng() {
    static std::mt19937_64 r(7);
    return r;
}
double sym(double r) { return std::uniform_real_distribution<double>(-r, r)(rng()); }

/// Central difference of a short RK4 trajectory through x0 (forward and
/// backward by h), i.e. the time derivative seen by the integrator.
template <typename Rhs>
Eigen::VectorXd trajectory_rate(const Rhs& f, const Eigen::VectorXd& x0, double h) {
    const auto fwd = sim::rk4_step(f, 0.0, x0, h);
    const auto bwd = sim::rk4_step(f, 0.0, x0, -h);
    return (fwd - bwd) / (2.0 * h);
}

}  // namespace

TEST_CASE("im_derived coefficients") {
    IMParams p;
    const IMDerived d = im_derived(p);
    // hand evaluation: σ = 1 − 0.11²/0.12², r_s = 1.2 + 1.0·0.11²/0.12²
    const double sigma = 1.0 - 0.0121 / 0.0144;
    const double rs = 1.2 + 0.0121 / 0.0144;
    CHECK(d.sigma == doctest::Approx(sigma).epsilon(1e-15));
    CHECK(d.sigma == doctest::Approx(0.15972).epsilon(1e-4));
    CHECK(d.tau_r == doctest::Approx(0.12));
    CHECK(d.r_s == doctest::Approx(rs));
    CHECK(d.a == doctest::Approx(-rs / (sigma * 0.12)));
    CHECK(d.a == doctest::Approx(-106.449).epsilon(1e-5));
    CHECK(d.b == doctest::Approx(-62.609).epsilon(1e-5));
    CHECK(d.c == doctest::Approx(313.04348).epsilon(1e-6));
    CHECK(d.a < d.b);
    CHECK(d.b < 0.0);
}

TEST_CASE("im_derived rejects sigma outside (0, 1)") {
    IMParams p{1.0, 1.0, 0.1, 0.1, 0.0, 2, 0.01};
    try {
        im_derived(p);
        FAIL("accepted sigma = 1");
    } catch (const ParameterError& e) {
        CHECK(std::string(e.what()).find("sigma") != std::string::npos);
    }
    p.M = 0.2;  // M² > L_s L_r
    CHECK_THROWS_AS(validate(p), ParameterError);
}

TEST_CASE("im_dynamics") {
    const IMParams p;
    SUBCASE("origin is an equilibrium") {
        const IMState r = im_dynamics(IMState{}, Vec2::Zero(), p);
        CHECK(r.to_vector().norm() == 0.0);
    }
    SUBCASE("load torque alone decelerates") {
        IMState x;
        x.load_torque = 1.0;
        const IMState r = im_dynamics(x, Vec2::Zero(), p);
        CHECK(r.omega == doctest::Approx(-p.p / p.J));
        CHECK(r.current.norm() == 0.0);
        CHECK(r.flux.norm() == 0.0);
        CHECK(r.load_torque == 0.0);
    }
    SUBCASE("rates match a differenced trajectory") {
        for (int k = 0; k < 50; ++k) {
            IMState x;
            x.current = Vec2(sym(20), sym(20));
            x.flux = Vec2(sym(1), sym(1));
            x.omega = sym(600);
            x.load_torque = sym(10);
            const Vec2 v(sym(300), sym(300));
            auto f = [&](double, const Eigen::VectorXd& s) -> Eigen::VectorXd {
                return im_dynamics(IMState::from_vector(s), v, p).to_vector();
            };
            const Eigen::VectorXd exact = f(0.0, x.to_vector());
            const Eigen::VectorXd fd = trajectory_rate(f, x.to_vector(), 2e-7);
            CHECK((fd - exact).norm() <= 1e-6 * exact.norm());
        }
    }
    SUBCASE("flux decays at 1/tau_r with zero current") {
        IMState x;
        x.flux = Vec2(0.3, -0.8);
        x.omega = 250.0;
        const IMState r = im_dynamics(x, Vec2::Zero(), p);
        CHECK(x.flux.dot(r.flux) == doctest::Approx(-x.flux.squaredNorm() / im_derived(p).tau_r));
    }
}

TEST_CASE("im_scale") {
    const IMParams p;
    IMState x;
    CHECK(im_scale(x, p).to_vector().norm() == 0.0);
    x.flux = Vec2(1.0, 0.0);
    const IMState s = im_scale(x, p);
    CHECK(s.flux(0) == doctest::Approx(11.0 / 12.0));
    CHECK(s.flux(1) == 0.0);
    for (int k = 0; k < 100; ++k) {
        IMState y;
        y.current = Vec2(sym(20), sym(20));
        y.flux = Vec2(sym(1), sym(1));
        y.omega = sym(600);
        y.load_torque = sym(10);
        const Vec6 back = im_unscale(im_scale(y, p), p).to_vector();
        CHECK((back - y.to_vector()).norm() <= 1e-12 * y.to_vector().norm());
    }
}

TEST_CASE("sm_inductance") {
    const SMParams p = default_sm_params(SMVariant::WRSM);
    SUBCASE("value at theta = 0") {
        const Mat3 L = sm_inductance(0.0, p).L;
        Mat3 expected;
        expected << p.L_0 + p.L_2, 0, p.M_f, 0, p.L_0 - p.L_2, 0, p.M_f, 0, p.L_f;
        CHECK((L - expected).norm() == 0.0);
    }
    SUBCASE("symmetric positive definite on a 720-point grid") {
        double min_eig = 1e300;
        for (int k = 0; k < 720; ++k) {
            const Mat3 L = sm_inductance(2.0 * kPi * k / 720.0, p).L;
            CHECK((L - L.transpose()).norm() == 0.0);
            min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Mat3>(L).eigenvalues().minCoeff());
        }
        CHECK(min_eig > 1e-3);
    }
    SUBCASE("derivatives match central differences") {
        const double h = 1e-6;
        for (int k = 0; k < 100; ++k) {
            const double th = sym(10.0);
            const auto m = sm_inductance(th, p);
            const Mat3 d1 = (sm_inductance(th + h, p).L - sm_inductance(th - h, p).L) / (2 * h);
            const Mat3 d2 = (sm_inductance(th + h, p).dL - sm_inductance(th - h, p).dL) / (2 * h);
            CHECK((d1 - m.dL).cwiseAbs().maxCoeff() <= 1e-8 * m.L.norm());
            CHECK((d2 - m.ddL).cwiseAbs().maxCoeff() <= 1e-8 * m.L.norm());
        }
    }
    SUBCASE("singular matrix rejected") {
        SMParams bad = p;
        bad.M_f = std::sqrt((p.L_0 + p.L_2) * p.L_f);  // det 𝔏(0) = L_q(L_d L_f − M_f²) = 0
        CHECK_THROWS_AS(sm_inductance(0.0, bad), SingularInductanceError);
    }
}

TEST_CASE("sm_torque") {
    SUBCASE("zero currents") {
        SMState x;
        x.theta = 0.7;
        CHECK(sm_torque(x, default_sm_params(SMVariant::WRSM)) == 0.0);
    }
    SUBCASE("syrm reluctance torque at theta = 0") {
        const SMParams p = default_sm_params(SMVariant::SyRM);
        SMState x;
        x.current = Vec3(1.0, 1.0, 0.0);
        CHECK(sm_torque(x, p) == doctest::Approx(3.0 * p.p * p.L_2));
    }
    SUBCASE("coenergy gradient") {
        const SMParams p = default_sm_params(SMVariant::WRSM);
        const double h = 1e-6;
        for (int k = 0; k < 100; ++k) {
            SMState x;
            x.current = Vec3(sym(20), sym(20), sym(10));
            x.theta = sym(kPi);
            // W' = ½𝓘ᵀ𝔏𝓘, differentiated numerically in θ; torque carries 3p/2
            auto coenergy = [&](double th) {
                return 0.5 * x.current.dot(sm_inductance(th, p).L * x.current);
            };
            const double grad = (coenergy(x.theta + h) - coenergy(x.theta - h)) / (2 * h);
            CHECK(sm_torque(x, p) == doctest::Approx(1.5 * p.p * grad).epsilon(1e-7));
        }
    }
}

TEST_CASE("sm_dynamics") {
    SUBCASE("origin is an equilibrium") {
        const SMParams p = default_sm_params(SMVariant::WRSM);
        CHECK(sm_dynamics(SMState{}, Vec3::Zero(), 0.0, p).to_vector().norm() == 0.0);
    }
    SUBCASE("spmsm at standstill keeps its angle") {
        const SMParams p = default_sm_params(SMVariant::SPMSM);
        SMState x = pin_field(SMState{}, p);
        x.current.head<2>() = Vec2(3.0, -2.0);
        const SMState r = sm_dynamics(x, Vec3::Zero(), 0.0, p);
        CHECK(r.theta == 0.0);
        CHECK(r.current(2) == 0.0);
    }
    SUBCASE("rates match a differenced trajectory") {
        for (SMVariant v : {SMVariant::WRSM, SMVariant::NWRSM, SMVariant::IPMSM, SMVariant::SPMSM,
                            SMVariant::SyRM}) {
            const SMParams p = default_sm_params(v);
            for (int k = 0; k < 20; ++k) {
                SMState x;
                x.current = Vec3(sym(20), sym(20), sym(10));
                x.omega = sym(600);
                x.theta = sym(kPi);
                x = pin_field(x, p);
                const Vec3 u(sym(300), sym(300), sym(50));
                const double load = sym(5);
                auto f = [&](double, const Eigen::VectorXd& s) -> Eigen::VectorXd {
                    return sm_dynamics(SMState::from_vector(s), u, load, p).to_vector();
                };
                const Eigen::VectorXd exact = f(0.0, x.to_vector());
                const Eigen::VectorXd fd = trajectory_rate(f, x.to_vector(), 2e-7);
                CHECK((fd - exact).norm() <= 1e-6 * exact.norm());
            }
        }
    }
}

TEST_CASE("park transforms") {
    CHECK((park(Vec2(1, 0), 0.0) - Vec2(1, 0)).norm() == 0.0);
    CHECK((park(Vec2(0, 1), kPi / 2) - Vec2(1, 0)).norm() <= 1e-15);
    for (int k = 0; k < 1000; ++k) {
        const Vec2 v(sym(100), sym(100));
        const double th = sym(50);
        CHECK((inverse_park(park(v, th), th) - v).norm() <= 1e-12 * v.norm());
        CHECK(std::abs(park(v, th).norm() - v.norm()) <= 1e-12 * v.norm());
    }
    CHECK(wrap_two_pi(-0.5) == doctest::Approx(2 * kPi - 0.5));
    CHECK(wrap_two_pi(2 * kPi) == 0.0);
}

TEST_CASE("sm parameter constraints") {
    SMParams p = default_sm_params(SMVariant::NWRSM);
    CHECK(p.L_2 == 0.0);
    p.L_2 = 1e-3;
    CHECK_THROWS_AS(validate(p), ParameterError);
    SMParams s = default_sm_params(SMVariant::SyRM);
    CHECK(s.psi_r == 0.0);
    s.psi_r = 0.1;
    CHECK_THROWS_AS(validate(s), ParameterError);
    const SMInductances l = sm_inductances(default_sm_params(SMVariant::WRSM));
    CHECK(l.L_D == doctest::Approx(0.012 - 0.005));
    CHECK(l.L_Delta == doctest::Approx(0.004 - 0.005));
    const SMInductances lp = sm_inductances(default_sm_params(SMVariant::IPMSM));
    CHECK(lp.L_D == lp.L_d);
    CHECK(lp.L_Delta == lp.L_delta);
    CHECK(pinned_field_current(default_sm_params(SMVariant::IPMSM)) == doctest::Approx(2.0));
}
