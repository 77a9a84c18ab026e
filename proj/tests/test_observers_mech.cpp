#include <doctest.h>

#include <cmath>
#include <vector>

#include "aslo/observers_mech.hpp"
#include "ode.hpp"
#include "support.hpp"

using namespace aslo;

TEST_SUITE("observers_mech") {

TEST_CASE("integrating-factor core on a damped coordinate") {
    // q'' + a q' = b, z = a t, z0 = b
    const double a = 0.8, b = 0.5, q0 = 0.3, v0 = -0.4;
    auto q = [&](double t) { return q0 + b / a * t + (v0 - b / a) * (1 - std::exp(-a * t)) / a; };
    auto v = [&](double t) { return b / a + (v0 - b / a) * std::exp(-a * t); };
    for (bool seeded : {false, true}) {
        INFO(seeded);
        obs::ExpFactorCore core{4.0, seeded, seeded};
        std::vector<double> s(obs::ExpFactorCore::kStates);
        core.init(s, q(0), 0.0);
        support::rk4(s, 0.0, 5.0, 1e-3, [&](double t, const std::vector<double>& st, std::vector<double>& ds) {
            core.derivatives(st, q(t), a * t, b, ds);
        });
        double est = 0;
        REQUIRE(core.qdot(s, q(5.0), a * 5.0, est));
        CHECK(est == doctest::Approx(v(5.0)).epsilon(1e-7));
    }
}

TEST_CASE("seeded core is exact from the start") {
    const double a = 0.8, b = 0.5, q0 = 0.3, v0 = -0.4;
    auto q = [&](double t) { return q0 + b / a * t + (v0 - b / a) * (1 - std::exp(-a * t)) / a; };
    auto v = [&](double t) { return b / a + (v0 - b / a) * std::exp(-a * t); };
    obs::ExpFactorCore core{4.0, true, true};
    std::vector<double> s(obs::ExpFactorCore::kStates);
    core.init(s, q(0), 0.0);
    double est = 0;
    REQUIRE(core.qdot(s, q(0), 0.0, est));
    // estimate at t = 0 is zero; error is the unknown initial velocity
    CHECK(est == doctest::Approx(0.0));
    support::rk4(s, 0.0, 0.5, 1e-3, [&](double t, const std::vector<double>& st, std::vector<double>& ds) {
        core.derivatives(st, q(t), a * t, b, ds);
    });
    REQUIRE(core.qdot(s, q(0.5), 0.4, est));
    // error = -v0 e^{-lambda t} / (e^z F[e^-z])
    const double t = 0.5, l = 4.0;
    const double factor = std::exp(a * t) * (l * std::exp(-a * t) - a * std::exp(-l * t)) / (l - a);
    CHECK(est - v(t) == doctest::Approx(-v0 * std::exp(-l * t) / factor).epsilon(1e-6));
}

TEST_CASE("leg with no angular torque keeps a zero angular rate estimate") {
    const auto r = support::run(R"cfg(plant.kind = "robotic_leg"
plant.x0 = "1, 0.3, 0.1, 0.2, 0, 0.1"
excitation.u1 = "0"
excitation.u2 = "0"
integration.dt = 1e-3
integration.t_end = 4
observer.a.kind = "leg_aslo"
observer.a.lambda = 5
observer.a.seed_filters = 1
)cfg");
    CHECK(support::max_abs_after(r.trace, "a.err.qd2", 0.0) < 1e-12);
    CHECK(r.metrics.find("a", "qd1")->final_abs < 1e-6);
    CHECK(r.metrics.find("a", "qd3")->final_abs < 1e-6);
}

TEST_CASE("leg: generic instantiation converges; the unfactored denominator does not") {
    const auto r = support::run(support::preset_text("leg-vel"),
                                {{"observer.lit.kind", "leg_aslo"},
                                 {"observer.lit.lambda", "5"},
                                 {"observer.lit.seed_filters", "1"},
                                 {"observer.lit.literal_denominator", "1"},
                                 {"integration.t_end", "4"}},
                                10);
    for (const char* label : {"aslo", "aaslo", "generic"})
        for (const char* ch : {"qd1", "qd2", "qd3"}) {
            const std::string what = std::string(label) + " " + ch;
            INFO(what);
            CHECK(support::max_abs_after(r.trace, std::string(label) + ".err." + ch, 3.0) < 1e-3);
        }
    CHECK(support::max_abs_after(r.trace, "lit.err.qd2", 3.0) > 1e-2);
}

TEST_CASE("ball and beam observers converge") {
    const auto r = support::run(support::preset_text("bb-vel"), {{"integration.t_end", "4"}}, 10);
    for (const char* label : {"aslo", "aaslo", "generic"})
        for (const char* ch : {"qd1", "qd2"}) {
            const std::string what = std::string(label) + " " + ch;
            INFO(what);
            CHECK(support::max_abs_after(r.trace, std::string(label) + ".err." + ch, 3.0) < 1e-3);
        }
}

TEST_CASE("model accelerations match the plants") {
    const plants::RoboticLegParams lp{1.5, 0.7, 1e-3};
    const plants::RoboticLegModel leg(lp);
    const double x[6] = {0.8, 0.3, -0.2, 0.4, -0.6, 0.25}, u[2] = {0.3, -0.8};
    double dx[6], acc[3];
    leg.dynamics(x, u, dx);
    obs::robotic_leg_acceleration(lp)(std::span(x, 3), std::span(x + 3, 3), u, acc);
    for (int k = 0; k < 3; ++k) CHECK(acc[k] == doctest::Approx(dx[3 + k]));

    const plants::BallBeamParams bp{0.8, 9.81};
    const plants::BallBeamModel bb(bp);
    const double xb[4] = {0.3, 0.2, -0.5, 0.7}, ub[1] = {1.3};
    double db[4], ab[2];
    bb.dynamics(xb, ub, db);
    obs::ball_beam_acceleration(bp)(std::span(xb, 2), std::span(xb + 2, 2), ub, ab);
    CHECK(ab[0] == doctest::Approx(db[2]));
    CHECK(ab[1] == doctest::Approx(db[3]));
}

}
