#include <doctest.h>

#include <cmath>
#include <string>

#include "support.hpp"

namespace {

const std::string kDi = R"cfg(plant.kind = "double_integrator"
plant.x0 = "0, 0.1"
excitation.u = "cos(0.7*t) + 0.3"
integration.dt = 1e-3
integration.t_end = 6
)cfg";

double worst(const aslo::sim::Trace& tr, const std::string& col, const std::function<double(double)>& oracle) {
    const auto t = tr.column("t");
    const auto e = tr.column(col);
    double m = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) m = std::max(m, std::abs(e[k] - oracle(t[k])));
    return m;
}

}  // namespace

TEST_SUITE("observers_linear") {

TEST_CASE("ASLO error is the free filter response") {
    const auto r = support::run(kDi + R"cfg(observer.a.kind = "di_aslo"
observer.a.lambda = 3
observer.b.kind = "di_aslo"
observer.b.lambda = 0.5
)cfg");
    CHECK(worst(r.trace, "a.err.x2", [](double t) { return -0.1 * std::exp(-3.0 * t); }) < 1e-10);
    CHECK(worst(r.trace, "b.err.x2", [](double t) { return -0.1 * std::exp(-0.5 * t); }) < 1e-10);
}

TEST_CASE("A-ASLO error is a two-exponential mix") {
    const auto r = support::run(kDi + R"cfg(observer.a.kind = "di_aaslo"
observer.a.lambda = 3
observer.a.gamma = 2
)cfg");
    // e' = -g (e - e_s), e_s = -0.1 exp(-l t), e(0) = -0.1
    const double l = 3, g = 2;
    auto oracle = [&](double t) {
        return 0.1 * l / (g - l) * std::exp(-g * t) - 0.1 * g / (g - l) * std::exp(-l * t);
    };
    CHECK(worst(r.trace, "a.err.x2", oracle) < 1e-10);
}

TEST_CASE("Luenberger with matched gain equals the ASLO") {
    const auto r = support::run(kDi + R"cfg(observer.a.kind = "di_aslo"
observer.a.lambda = 2
observer.l.kind = "di_luenberger"
observer.l.gamma_l = 2
)cfg");
    const auto a = r.trace.column("a.x2"), l = r.trace.column("l.x2");
    double m = 0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - l[k]));
    CHECK(m < 1e-9);
}

TEST_CASE("state-space realizations reproduce the filter form") {
    const auto r = support::run(kDi + R"cfg(observer.a.kind = "di_aslo"
observer.a.lambda = 2.5
observer.ass.kind = "di_aslo_ss"
observer.ass.lambda = 2.5
observer.b.kind = "di_aaslo"
observer.b.lambda = 2.5
observer.b.gamma = 4
observer.bss.kind = "di_aaslo_ss"
observer.bss.lambda = 2.5
observer.bss.gamma = 4
)cfg");
    CHECK(worst(r.trace, "ass.x2", [&](double) { return 0.0; }) > 0.1);
    const auto a = r.trace.column("a.x2"), ass = r.trace.column("ass.x2");
    const auto b = r.trace.column("b.x2"), bss = r.trace.column("bss.x2");
    for (std::size_t k = 0; k < a.size(); k += 97) {
        CHECK(ass[k] == doctest::Approx(a[k]).epsilon(1e-9));
        CHECK(bss[k] == doctest::Approx(b[k]).epsilon(1e-9));
    }
}

TEST_CASE("constant input disturbance biases") {
    const auto r = support::run(kDi + R"cfg(observer.a.kind = "di_aslo"
observer.a.lambda = 4
observer.b.kind = "di_aaslo"
observer.b.lambda = 4
observer.b.gamma = 2
observer.l.kind = "di_luenberger"
observer.l.gamma_l = 5
disturbance.kind = "input_const"
disturbance.delta = 0.2
)cfg",
                                {{"integration.t_end", "25"}}, 100);
    const auto& m = r.metrics;
    CHECK(std::abs(r.trace.column("a.err.x2").back()) == doctest::Approx(0.2 / 4).epsilon(1e-5));
    CHECK(std::abs(r.trace.column("b.err.x2").back()) == doctest::Approx(0.2 / 4 + 0.2 / 2).epsilon(1e-5));
    CHECK(std::abs(r.trace.column("l.err.x2").back()) == doctest::Approx(0.2 / 5).epsilon(1e-5));
    CHECK(m.find("l", "x2")->peak < 0.2);
}

TEST_CASE("constant output offset adds a decaying spike") {
    const auto clean = support::run(kDi + "observer.a.kind = \"di_aslo\"\nobserver.a.lambda = 3\n");
    const auto off = support::run(kDi + R"cfg(observer.a.kind = "di_aslo"
observer.a.lambda = 3
disturbance.kind = "output_const"
disturbance.delta = 0.05
)cfg");
    const auto t = clean.trace.column("t");
    const auto c = clean.trace.column("a.x2"), o = off.trace.column("a.x2");
    double m = 0;
    for (std::size_t k = 0; k < t.size(); ++k) m = std::max(m, std::abs(o[k] - c[k] - 3 * 0.05 * std::exp(-3 * t[k])));
    CHECK(m < 1e-9);
}

TEST_CASE("chain ASLO of order two is the double-integrator ASLO") {
    const auto r = support::run(R"cfg(plant.kind = "integrator_chain"
plant.order = 2
plant.x0 = "0, 0.1"
excitation.u = "cos(0.7*t) + 0.3"
integration.dt = 1e-3
integration.t_end = 6
observer.c.kind = "chain_aslo"
observer.c.lambda = 3
)cfg");
    CHECK(worst(r.trace, "c.err.x2", [](double t) { return -0.1 * std::exp(-3.0 * t); }) < 1e-10);
}

TEST_CASE("chain ASLO of order three converges on every channel") {
    const auto r = support::run(R"cfg(plant.kind = "integrator_chain"
plant.order = 3
plant.x0 = "0.2, 0.1, -0.3"
excitation.u = "sin(t)"
integration.dt = 1e-3
integration.t_end = 30
observer.c.kind = "chain_aslo"
observer.c.lambda = 2
)cfg",
                                {}, 100);
    CHECK(r.metrics.find("c", "x2")->final_abs < 1e-9);
    CHECK(r.metrics.find("c", "x3")->final_abs < 1e-9);
    CHECK(r.metrics.find("c", "x2")->peak > 0.05);
}

TEST_CASE("seeded filters remove the initial output spike") {
    const std::string base = R"cfg(plant.kind = "double_integrator"
plant.x0 = "1, 0.1"
excitation.u = "0"
integration.dt = 1e-3
integration.t_end = 3
observer.a.kind = "di_aslo"
observer.a.lambda = 3
)cfg";
    const auto raw = support::run(base);
    const auto seeded = support::run(base + "observer.a.seed_filters = 1\n");
    CHECK(raw.metrics.find("a", "x2")->peak > 2.5);
    CHECK(seeded.metrics.find("a", "x2")->peak == doctest::Approx(0.1).epsilon(1e-6));
}

}
