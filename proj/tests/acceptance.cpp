#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "aslo/chain_coefficients.hpp"
#include "aslo/lti.hpp"
#include "aslo/noise.hpp"
#include "aslo/observers_em.hpp"
#include "aslo/observers_linear.hpp"
#include "support.hpp"

using namespace aslo;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [x]");
    }
};

std::string f(const char* fmt, double v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

const std::string kDi = R"cfg(plant.kind = "double_integrator"
plant.x0 = "0, 0.1"
excitation.u = "cos(0.02*t)"
integration.dt = 1e-4
integration.t_end = 20
)cfg";

// --- 1 ----------------------------------------------------------------------

struct Tone {
    double a, w, ph;
};

struct BandLimited {
    double c = 0;
    std::array<Tone, 3> tones{};

    double value(double t) const {
        double s = c;
        for (const auto& k : tones) s += k.a * std::sin(k.w * t + k.ph);
        return s;
    }
    double rate(double t) const {
        double s = 0;
        for (const auto& k : tones) s += k.a * k.w * std::cos(k.w * t + k.ph);
        return s;
    }
};

BandLimited random_signal(noise::Xorshift64Star& rng) {
    BandLimited b;
    b.c = 2.0 * rng.uniform() - 1.0;
    for (auto& k : b.tones) k = {0.2 + 0.8 * rng.uniform(), 0.1 + 2.9 * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform()};
    return b;
}

Verdict swapping_identity() {
    Verdict v;
    const auto t0 = Clock::now();
    noise::Xorshift64Star rng(20240601);
    const double dt = 1e-4;
    double worst = 0.0;
    for (int pair = 0; pair < 20; ++pair) {
        const BandLimited w = random_signal(rng), u = random_signal(rng);
        for (double lambda : {1.0, 5.0}) {
            // s = (F[w v], F[w], F[F[w] v'])
            auto rhs = [&](double t, const std::array<double, 3>& s, std::array<double, 3>& ds) {
                const lti::FilterBlock lhs{lambda, s[0]};
                const lti::SwapNode node{{lambda, s[1]}, {lambda, s[2]}};
                ds[0] = lhs.derivative(w.value(t) * u.value(t));
                std::array<double, 2> d{};
                node.derivatives(w.value(t), u.rate(t), d);
                ds[1] = d[0];
                ds[2] = d[1];
            };
            std::array<double, 3> s{}, k1{}, k2{}, k3{}, k4{}, tmp{};
            const double t_end = 10.0 / lambda + 10.0;
            const auto steps = static_cast<long>(std::llround(t_end / dt));
            double sup = 0.0, peak = 0.0;
            for (long k = 0; k <= steps; ++k) {
                const double t = static_cast<double>(k) * dt;
                peak = std::max(peak, std::abs(w.value(t) * u.value(t)));
                if (t >= 10.0 / lambda) {
                    const lti::SwapNode node{{lambda, s[1]}, {lambda, s[2]}};
                    sup = std::max(sup, std::abs(s[0] - node.apply(u.value(t))));
                }
                if (k == steps) break;
                rhs(t, s, k1);
                for (int i = 0; i < 3; ++i) tmp[i] = s[i] + 0.5 * dt * k1[i];
                rhs(t + 0.5 * dt, tmp, k2);
                for (int i = 0; i < 3; ++i) tmp[i] = s[i] + 0.5 * dt * k2[i];
                rhs(t + 0.5 * dt, tmp, k3);
                for (int i = 0; i < 3; ++i) tmp[i] = s[i] + dt * k3[i];
                rhs(t + dt, tmp, k4);
                for (int i = 0; i < 3; ++i) s[i] += dt / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            }
            worst = std::max(worst, sup / peak);
        }
    }
    const double elapsed = seconds_since(t0);
    v.check(worst <= 1e-5, "worst sup residual / max|wv| = " + f("%.2e", worst));
    v.check(elapsed <= 10.0, "runtime " + f("%.2f s", elapsed));
    return v;
}

// --- 2 ----------------------------------------------------------------------

Verdict aslo_exactness() {
    Verdict v;
    for (double lambda : {1.0, 3.0, 5.0}) {
        const auto r = support::run(kDi + "observer.a.kind = \"di_aslo\"\nobserver.a.lambda = " + f("%g", lambda) + "\n");
        const auto t = r.trace.column("t");
        const auto e = r.trace.column("a.err.x2");
        double late = 0.0;
        std::size_t peak = 0;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (t[k] >= 10.0 / lambda) late = std::max(late, std::abs(e[k]));
            if (std::abs(e[k]) > std::abs(e[peak])) peak = k;
        }
        double rise = 0.0;  // largest increase of |e| after the peak
        for (std::size_t k = peak + 1; k < e.size(); ++k) rise = std::max(rise, std::abs(e[k]) - std::abs(e[k - 1]));
        v.check(late <= 1e-3, "lambda " + f("%g", lambda) + ": max|e| after 10/lambda " + f("%.2e", late));
        v.check(rise <= 1e-10, "rise after peak " + f("%.1e", rise));
    }
    return v;
}

// --- 3 ----------------------------------------------------------------------

Verdict realization_equivalence() {
    Verdict v;
    for (double lambda : {1.0, 3.0, 5.0}) {
        const std::string l = f("%g", lambda);
        const std::string text = kDi + "observer.op.kind = \"di_aslo\"\nobserver.op.lambda = " + l +
                                 "\nobserver.ss.kind = \"di_aslo_ss\"\nobserver.ss.lambda = " + l +
                                 "\nobserver.aop.kind = \"di_aaslo\"\nobserver.aop.lambda = " + l +
                                 "\nobserver.aop.gamma = 2\nobserver.ass.kind = \"di_aaslo_ss\"\nobserver.ass.lambda = " +
                                 l + "\nobserver.ass.gamma = 2\n";
        double d_aslo = 0.0, d_aaslo = 0.0;
        support::run(text, {}, 1000, [&](const sim::Simulation& s) {
            std::array<double, 1> a{}, b{};
            s.estimate(0, a);
            s.estimate(1, b);
            d_aslo = std::max(d_aslo, std::abs(a[0] - b[0]));
            s.estimate(2, a);
            s.estimate(3, b);
            d_aaslo = std::max(d_aaslo, std::abs(a[0] - b[0]));
        });
        v.check(d_aslo <= 1e-10 && d_aaslo <= 1e-10,
                "lambda " + l + ": ASLO " + f("%.1e", d_aslo) + ", A-ASLO " + f("%.1e", d_aaslo));
    }
    return v;
}

// --- 4 ----------------------------------------------------------------------

Verdict aaslo_rate() {
    Verdict v;
    const auto r = support::run(kDi + "observer.a.kind = \"di_aaslo\"\nobserver.a.lambda = 3\nobserver.a.gamma = 2\n", {}, 10);
    const auto fit = sim::fit_decay_rate(r.trace.column("t"), r.trace.column("a.err.x2"), 3.0, 10.0);
    v.check(fit.ok() && fit.rate >= 1.8 && fit.rate <= 2.2,
            "fitted rate on [3, 10] s " + f("%.4f", fit.rate) + " (r2 " + f("%.6f", fit.r2) + ")");
    return v;
}

// --- 5 ----------------------------------------------------------------------

Verdict luenberger_comparison() {
    Verdict v;
    const auto r = support::run(kDi + "observer.a.kind = \"di_aslo\"\nobserver.a.lambda = 3\n"
                                      "observer.l.kind = \"di_luenberger\"\nobserver.l.gamma_l = 3\n");
    const auto t = r.trace.column("t");
    const auto ea = r.trace.column("a.err.x2");
    const auto el = r.trace.column("l.err.x2");
    double diff = 0.0, peak = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        peak = std::max(peak, std::abs(ea[k]));
        if (t[k] >= 1.0) diff = std::max(diff, std::abs(ea[k] - el[k]));
    }
    v.check(diff / peak <= 0.05, "max_{t>=1}|e_aslo - e_luen| = " + f("%.2e", diff) + ", ratio to peak " + f("%.2e", diff / peak));
    return v;
}

// --- 6 ----------------------------------------------------------------------

double at_lambda(const std::map<int, chain::MuPoly>& m, int key, double lambda) {
    auto it = m.find(key);
    return it == m.end() ? 0.0 : it->second.eval(lambda);
}

bool form_is(const chain::LinearForm& form, const std::map<int, double>& wy, const std::map<int, double>& wu,
             const std::map<int, double>& x) {
    auto same = [](const std::map<int, chain::MuPoly>& got, const std::map<int, double>& want) {
        std::set<int> keys;
        for (const auto& [k, _] : got) keys.insert(k);
        for (const auto& [k, _] : want) keys.insert(k);
        for (int k : keys) {
            auto w = want.find(k);
            if (std::abs(at_lambda(got, k, 1.0) - (w == want.end() ? 0.0 : w->second)) > 1e-14) return false;
        }
        return true;
    };
    return same(form.wy, wy) && same(form.wu, wu) && same(form.x, x);
}

Verdict chain_oracle() {
    Verdict v;
    const std::vector<std::string> x0 = {"", "", "", "0, 0.1, -0.05", "0, 0.1, -0.05, 0.02", "0, 0.1, -0.05, 0.02, 0.01",
                                         "0, 0.1, -0.05, 0.02, 0.01, -0.01"};
    double worst = 0.0;
    for (int n = 3; n <= 6; ++n)
        for (double lambda : {1.0, 2.0}) {
            const double t_end = 60.0 / lambda;
            const std::string text = "plant.kind = \"integrator_chain\"\nplant.order = " + std::to_string(n) +
                                     "\nplant.x0 = \"" + x0[n] +
                                     "\"\nexcitation.u = \"cos(0.5*t)\"\nobserver.a.kind = \"chain_aslo\"\nobserver.a.lambda = " +
                                     f("%g", lambda) + "\nintegration.dt = 1e-4\nintegration.t_end = " + f("%g", t_end) + "\n";
            const auto r = support::run(text, {}, 100);
            double late = 0.0;
            for (int k = 2; k <= n; ++k)
                late = std::max(late, support::max_abs_after(r.trace, "a.err.x" + std::to_string(k), 0.5 * t_end));
            worst = std::max(worst, late);
        }
    v.check(worst <= 1e-3, "n 3..6, lambda 1,2: worst error over the second half " + f("%.2e", worst));

    const auto table = chain::derive_chain_coefficients(4);
    v.check(form_is(chain::eliminate_states(table).row(4), {{3, 1}}, {{1, 1}, {2, 1}, {3, 1}}, {}),
            "x4 = wy3 + wu3 + wu2 + wu1");
    v.check(form_is(table.row(2), {{1, 1}}, {{1, 1}}, {{3, 1}, {4, -1}}), "x2 = wy1 + x3 - x4 + wu1");
    v.check(form_is(table.row(3), {{2, 1}}, {{1, -2}, {2, -1}}, {{4, 2}}), "x3 = wy2 + 2 x4 - 2 wu1 - wu2");

    // Truth check of the derived x3 against the variant without the -2 wu1 term.
    const std::string text = support::preset_text("chain-n4");
    double derived = 0.0, truncated = 0.0;
    support::run(text, {}, 1000, [&](const sim::Simulation& s) {
        if (s.time() < 30.0) return;
        const auto& o = dynamic_cast<const obs::ChainAslo&>(s.observer(0));
        std::array<double, 3> wy{}, wu{};
        o.basis(s.observer_state(0), s.measured(), wy, wu);
        const auto x = s.plant_state();
        derived = std::max(derived, std::abs(wy[1] + 2 * x[3] - 2 * wu[0] - wu[1] - x[2]));
        truncated = std::max(truncated, std::abs(wy[1] + 2 * x[3] - wu[1] - x[2]));
    });
    v.check(derived <= 1e-3 && truncated > 1e-2,
            "x3 residual: derived " + f("%.1e", derived) + ", without -2 wu1 " + f("%.2f", truncated));
    return v;
}

// --- 7 ----------------------------------------------------------------------

Verdict pmsm_identity() {
    Verdict v;
    const auto p = plants::bmp0701f();
    double worst_mag = 0.0, worst_y12 = 0.0;
    support::run(support::preset_text("pmsm-fluxcompare"), {}, 1000, [&](const sim::Simulation& s) {
        const auto x = s.plant_state();
        const auto y = s.measured().y;
        const double e1 = x[0] - p.L * y[0], e2 = x[1] - p.L * y[1];
        const double lm2 = p.lambda_m * p.lambda_m;
        worst_mag = std::max(worst_mag, std::abs(e1 * e1 + e2 * e2 - lm2) / lm2);
        const double z3 = 0.5 * p.L * (y[0] * y[0] + y[1] * y[1]) - lm2 / (2.0 * p.L);
        const double lhs = y[0] * x[0] + y[1] * x[1];
        const double rhs = (x[0] * x[0] + x[1] * x[1]) / (2.0 * p.L) + z3;
        worst_y12 = std::max(worst_y12, std::abs(lhs - rhs) / std::max(std::abs(rhs), lm2 / (2.0 * p.L)));
    });
    v.check(worst_mag <= 1e-8, "| |phi - L i|^2 - lambda_m^2 | / lambda_m^2 <= " + f("%.1e", worst_mag));
    v.check(worst_y12 <= 1e-8, "i.phi - |phi|^2/(2L) - z3, relative " + f("%.1e", worst_y12));
    return v;
}

// --- 8 ----------------------------------------------------------------------

double worst_settling(const sim::Metrics& m, const std::string& label) {
    return std::max(m.find(label, "phi1")->settling_time, m.find(label, "phi2")->settling_time);
}

Verdict pmsm_observers() {
    Verdict v;
    const auto t0 = Clock::now();
    const auto r = support::run(support::preset_text("pmsm-fluxcompare"), {}, 10);
    const double elapsed = seconds_since(t0);
    const double aslo = std::max(support::max_abs_after(r.trace, "aslo.err.phi1", 2.0),
                                 support::max_abs_after(r.trace, "aslo.err.phi2", 2.0));
    v.check(aslo <= 1e-3, "ASLO max error for t >= 2 s " + f("%.1e", aslo));
    for (const char* o : {"aaslo", "fo1", "fo2", "fo3"}) {
        const double e = std::max(r.metrics.find(o, "phi1")->final_abs, r.metrics.find(o, "phi2")->final_abs);
        v.check(e <= 5e-3, std::string(o) + " at 10 s " + f("%.1e", e));
    }
    const double ts = worst_settling(r.metrics, "aslo");
    const double ts1 = worst_settling(r.metrics, "fo1");
    const double ts2 = worst_settling(r.metrics, "fo2");
    v.check(ts <= ts1, "settling ASLO " + f("%.3f s", ts) + " vs FO1 " + f("%.3f s", ts1));
    v.check(ts <= ts2, "vs FO2 " + f("%.3f s", ts2));
    const double held = r.metrics.find("aslo")->held_fraction;
    v.check(held < 0.01, "ASLO held fraction " + f("%.1e", held));
    v.check(elapsed <= 60.0, "runtime " + f("%.2f s", elapsed));
    return v;
}

// --- 9 ----------------------------------------------------------------------

Verdict wrim() {
    Verdict v;
    const plants::WrimParams p;
    double worst_sq = 0.0, worst_branch = 0.0;
    const auto r = support::run(support::preset_text("wrim-flux"), {}, 10, [&](const sim::Simulation& s) {
        const auto x = s.plant_state();
        const auto y = s.measured().y;
        const double is = std::hypot(y[0], y[1]), ir = std::hypot(y[2], y[3]);
        const double ds = std::hypot(x[0] - p.Ls * y[0], x[1] - p.Ls * y[1]);
        const double dr = std::hypot(x[2] - p.Lr * y[2], x[3] - p.Lr * y[3]);
        const double scale = p.Lsr * std::max({is, ir, 1e-3});
        worst_sq = std::max({worst_sq, std::abs(ds - p.Lsr * ir) / scale, std::abs(dr - p.Lsr * is) / scale});
        for (bool stator : {true, false}) {
            const auto in = obs::wrim_measured_signals(p, stator, s.measured().u, y);
            const double L = stator ? p.Ls : p.Lr;
            const double f1 = stator ? x[0] : x[2], f2 = stator ? x[1] : x[3];
            const double lhs = in.y1 * f1 + in.y2 * f2;
            const double rhs = (f1 * f1 + f2 * f2) / (2.0 * L) + in.z3;
            worst_branch = std::max(worst_branch, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-3));
        }
    });
    v.check(worst_sq <= 1e-8, "|phi_s - Ls i_s| = Lsr|i_r| and |phi_r - Lr i_r| = Lsr|i_s|, relative " + f("%.1e", worst_sq));
    v.check(worst_branch <= 1e-8, "per-branch i.phi identity with L_kappa, relative " + f("%.1e", worst_branch));
    double e = 0.0;
    for (const char* c : {"phis1", "phis2", "phir1", "phir2"})
        e = std::max(e, support::max_abs_after(r.trace, std::string("aslo.err.") + c, 2.0));
    v.check(e <= 1e-3, "ASLO stator/rotor flux error for t >= 2 s " + f("%.1e", e));
    return v;
}

// --- 10 ---------------------------------------------------------------------

Verdict mechanical() {
    Verdict v;
    double max_gen = 0.0;
    for (const char* preset : {"leg-vel", "bb-vel"}) {
        const auto r = support::run(support::preset_text(preset), {}, 1, [&](const sim::Simulation& s) {
            std::array<double, 3> a{}, g{};
            const std::size_t n = s.observer(0).channel_count();
            s.estimate(0, std::span(a).first(n));
            s.estimate(2, std::span(g).first(n));
            for (std::size_t k = 0; k < n; ++k) max_gen = std::max(max_gen, std::abs(a[k] - g[k]));
        });
        double e = 0.0;
        for (const auto& c : r.metrics.channels)
            e = std::max(e, support::max_abs_after(r.trace, c.label + ".err." + c.channel, 2.0));
        v.check(e <= 1e-3, std::string(preset) + " velocity error for t >= 2 s " + f("%.1e", e));
    }
    v.check(max_gen <= 1e-10, "generic vs specific " + f("%.1e", max_gen));

    // chi = m1 q1^2 qd2 with u2 = 0
    const plants::RoboticLegParams lp;
    double chi0 = NAN, chi_drift = 0.0;
    support::run(support::preset_text("leg-vel"),
                 {{"excitation.u2", "0"}, {"plant.x0", "1, 0.3, 0, 0.2, 0.5, -0.1"}}, 1000, [&](const sim::Simulation& s) {
                     const auto x = s.plant_state();
                     const double chi = lp.m1 * x[0] * x[0] * x[4];
                     if (std::isnan(chi0)) chi0 = chi;
                     chi_drift = std::max(chi_drift, std::abs(chi - chi0));
                 });
    v.check(chi_drift <= 1e-6, "leg chi drift over 10 s " + f("%.1e", chi_drift));

    // Psi = (ell^2 + q1^2) qd2, Psi' = u - g q1 cos q2; Simpson quadrature of the right side
    const plants::BallBeamParams bp;
    std::vector<double> psi, rate;
    double dt = 0.0;
    support::run(support::preset_text("bb-vel"), {}, 1000, [&](const sim::Simulation& s) {
        const auto x = s.plant_state();
        dt = s.scenario().dt;
        psi.push_back((bp.ell * bp.ell + x[0] * x[0]) * x[3]);
        rate.push_back(s.plant_input()[0] - bp.g * x[0] * std::cos(x[1]));
    });
    double psi_drift = 0.0, integral = 0.0;
    for (std::size_t k = 2; k < psi.size(); k += 2) {
        integral += dt / 3.0 * (rate[k - 2] + 4.0 * rate[k - 1] + rate[k]);
        psi_drift = std::max(psi_drift, std::abs(psi[k] - psi[0] - integral));
    }
    v.check(psi_drift <= 1e-6, "ball-beam Psi identity drift over 10 s " + f("%.1e", psi_drift));
    return v;
}

// --- 11 ---------------------------------------------------------------------

Verdict robustness() {
    Verdict v;
    const std::string obs = "observer.a.kind = \"di_aslo\"\nobserver.a.lambda = 3\n"
                            "observer.l.kind = \"di_luenberger\"\nobserver.l.gamma_l = 3\n";
    const double lambda = 3.0, delta = 0.5;
    const auto clean = support::run(kDi + obs);
    const auto dist = support::run(kDi + obs + "disturbance.kind = \"output_const\"\ndisturbance.delta = 0.5\n");
    const auto t = clean.trace.column("t");
    const auto a = clean.trace.column("a.x2");
    const auto b = dist.trace.column("a.x2");
    double worst = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k)
        if (t[k] >= 10.0 / lambda)
            worst = std::max(worst, std::abs((b[k] - a[k]) - lambda * delta * std::exp(-lambda * t[k])));
    v.check(worst <= 1e-6, "output disturbance: |diff - lambda delta e^{-lambda t}| " + f("%.1e", worst));

    const auto in = support::run(kDi + obs + "disturbance.kind = \"input_const\"\ndisturbance.delta = 0.5\n");
    const double bias = in.metrics.find("a", "x2")->rmse_final;
    const double rel = std::abs(bias - delta / lambda) / (delta / lambda);
    v.check(rel <= 0.05, "input disturbance: ASLO bias " + f("%.5f", bias) + " vs delta/lambda " + f("%.5f", delta / lambda));
    const double luen = in.trace.column("l.err.x2").back();
    v.check(std::isfinite(luen), "Luenberger bias " + f("%.5f", luen) + " (bounded)");
    return v;
}

// --- 12 ---------------------------------------------------------------------

Verdict noise_and_lag() {
    Verdict v;
    int better = 0;
    std::string ratios;
    for (int seed = 1; seed <= 5; ++seed) {
        const auto r = support::run(support::preset_text("fig-noise"), {{"disturbance.seed", std::to_string(seed)}}, 100);
        const double a = r.metrics.find("aslo", "x2")->rmse_final;
        const double aa = r.metrics.find("aaslo", "x2")->rmse_final;
        if (a <= aa) ++better;
        ratios += (seed > 1 ? "," : "") + f("%.2f", aa / a);
    }
    v.check(better == 5, "sigma 0.01, seeds 1..5: A-ASLO/ASLO RMS ratio " + ratios);

    double last = 0.0;
    bool increasing = true;
    std::string drifts;
    for (double tau : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0}) {
        const auto r = support::run(support::preset_text("fig-tau"), {{"disturbance.tau", f("%g", tau)}}, 100);
        const double d = r.metrics.find("aaslo", "x2")->final_abs;
        increasing = increasing && d > last;
        last = d;
        drifts += (drifts.empty() ? "" : ",") + f("%.1e", d);
    }
    v.check(increasing, "A-ASLO terminal |e| for tau 0.05..2: " + drifts);
    return v;
}

// --- 13 ---------------------------------------------------------------------

Verdict determinism() {
    Verdict v;
    int same = 0, round_trip = 0;
    const auto& all = presets::all();
    for (const auto& p : all) {
        const auto a = support::run(p.config, {{"disturbance.seed", "7"}}, 100);
        const auto b = support::run(p.config, {{"disturbance.seed", "7"}}, 100);
        if (support::csv(a.trace) == support::csv(b.trace)) ++same;
        auto cfg = config::ConfigFile::parse(p.config);
        cfg.set("disturbance.seed", "7");
        const std::string resolved = config::to_text(config::spec_from_config(cfg));
        const auto c = support::run(resolved, {}, 100);
        if (support::csv(c.trace) == support::csv(a.trace)) ++round_trip;
    }
    const int n = static_cast<int>(all.size());
    v.check(same == n, std::to_string(same) + "/" + std::to_string(n) + " presets byte-identical on rerun");
    v.check(round_trip == n, std::to_string(round_trip) + "/" + std::to_string(n) + " reproduced from resolved config");
    return v;
}

}  // namespace

int main() {
    // Criteria whose failure is a recorded discrepancy rather than a regression.
    const std::set<int> recorded = {8};

    struct Item {
        int id;
        const char* name;
        Verdict (*fn)();
    };
    const Item items[] = {
        {1, "swapping identity", swapping_identity},
        {2, "ASLO exactness", aslo_exactness},
        {3, "realization equivalence", realization_equivalence},
        {4, "A-ASLO decay rate", aaslo_rate},
        {5, "Luenberger comparison", luenberger_comparison},
        {6, "integrator chain", chain_oracle},
        {7, "PMSM output identity", pmsm_identity},
        {8, "PMSM flux observers", pmsm_observers},
        {9, "WRIM", wrim},
        {10, "mechanical observers", mechanical},
        {11, "disturbance robustness", robustness},
        {12, "noise and parasitic lag", noise_and_lag},
        {13, "determinism", determinism},
    };
    int unexpected = 0, failed = 0;
    for (const auto& it : items) {
        Verdict v;
        try {
            v = it.fn();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        const bool known = !v.pass && recorded.count(it.id);
        std::printf("%-4s %2d %-24s %s%s\n", v.pass ? "PASS" : "FAIL", it.id, it.name, v.detail.c_str(),
                    known ? " (recorded discrepancy)" : "");
        std::fflush(stdout);
        if (!v.pass) {
            ++failed;
            if (!known) ++unexpected;
        }
    }
    std::printf("%d/%zu criteria pass\n", static_cast<int>(std::size(items)) - failed, std::size(items));
    return unexpected == 0 ? 0 : 1;
}
