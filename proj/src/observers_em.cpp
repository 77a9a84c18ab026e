#include "aslo/observers_em.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aslo/lti.hpp"

namespace aslo::obs {

namespace {

constexpr std::size_t kFy1 = 0, kFy2 = 1, kFz1 = 2, kFz2 = 3, kFz3 = 4;
constexpr std::size_t kS5 = 5, kS6 = 6, kS7 = 7, kS8 = 8;
constexpr std::size_t kW7 = 9, kW8 = 10, kFw6 = 11, kS12 = 12, kS13 = 13, kRms = 14;

void check_input(const FluxInputs& in) {
    lti::require_finite(in.y1, "y1");
    lti::require_finite(in.y2, "y2");
    lti::require_finite(in.z1, "z1");
    lti::require_finite(in.z2, "z2");
    lti::require_finite(in.z3, "z3");
}

std::array<double, 2> numerator(const FluxSignals& w) {
    return {w.w6 * w.w8 - w.w5 * w.w9, w.w4 * w.w9 - w.w6 * w.w7};
}

}  // namespace

FluxSwapBank::FluxSwapBank(double lambda, double L, double eps_rel, double eps_abs)
    : lambda_(lambda), L_(L), eps_rel_(eps_rel), eps_abs_(eps_abs) {
    if (!(lambda > 0.0)) throw std::invalid_argument("FluxSwapBank: lambda must be positive");
    if (!(L > 0.0)) throw std::invalid_argument("FluxSwapBank: inductance must be positive");
    if (eps_rel < 0.0 || eps_abs < 0.0) throw std::invalid_argument("FluxSwapBank: thresholds must be non-negative");
}

FluxSignals FluxSwapBank::signals(std::span<const double> s, const FluxInputs& in) const {
    const double l = lambda_;
    FluxSignals w;
    w.w1 = s[kFy1] + s[kFz1] / (l * L_);
    const double w2 = s[kFy2] + s[kFz2] / (l * L_);
    w.w3 = (s[kS5] + s[kS6] + (s[kS7] + s[kS8]) / (l * L_)) / l + s[kFz3];
    w.w4 = w.w1 - in.y1;
    w.w5 = w2 - in.y2;
    w.w6 = w.w3 - in.z3;
    w.w7 = s[kW7];
    w.w8 = s[kW8];
    w.w9 = s[kFw6] + (s[kS12] + s[kS13]) / l;
    w.delta = w.w4 * w.w8 - w.w5 * w.w7;
    return w;
}

FluxSignals FluxSwapBank::direct_signals(std::span<const double> s, const FluxInputs& in) const {
    const double l = lambda_;
    const auto pf = [&](std::size_t idx, double input) { return lti::FilterBlock{l, s[idx]}.p_filter(input); };
    FluxSignals w;
    w.w4 = -pf(kFy1, in.y1) / l + s[kFz1] / (l * L_);
    w.w5 = -pf(kFy2, in.y2) / l + s[kFz2] / (l * L_);
    w.w6 = (s[kS5] + s[kS6]) / l + (s[kS7] / l + s[kS8] / l) / (l * L_) - pf(kFz3, in.z3) / l;
    w.w1 = w.w4 + in.y1;
    w.w3 = w.w6 + in.z3;
    w.w7 = s[kW7];
    w.w8 = s[kW8];
    w.w9 = s[kFw6] + (s[kS12] + s[kS13]) / l;
    w.delta = w.w4 * w.w8 - w.w5 * w.w7;
    return w;
}

void FluxSwapBank::derivatives(std::span<const double> s, const FluxInputs& in, std::span<double> ds) const {
    check_input(in);
    const double l = lambda_;
    const FluxSignals w = signals(s, in);
    ds[kFy1] = l * (in.y1 - s[kFy1]);
    ds[kFy2] = l * (in.y2 - s[kFy2]);
    ds[kFz1] = l * (in.z1 - s[kFz1]);
    ds[kFz2] = l * (in.z2 - s[kFz2]);
    ds[kFz3] = l * (in.z3 - s[kFz3]);
    ds[kS5] = l * (in.z1 * s[kFy1] - s[kS5]);
    ds[kS6] = l * (in.z2 * s[kFy2] - s[kS6]);
    ds[kS7] = l * (in.z1 * s[kFz1] - s[kS7]);
    ds[kS8] = l * (in.z2 * s[kFz2] - s[kS8]);
    ds[kW7] = l * (w.w4 - s[kW7]);
    ds[kW8] = l * (w.w5 - s[kW8]);
    ds[kFw6] = l * (w.w6 - s[kFw6]);
    ds[kS12] = l * (in.z1 * s[kW7] - s[kS12]);
    ds[kS13] = l * (in.z2 * s[kW8] - s[kS13]);
    const double a = w.w4 * w.w8, b = w.w5 * w.w7;
    ds[kRms] = l * (0.5 * (a * a + b * b) - s[kRms]);
}

double FluxSwapBank::delta_threshold(std::span<const double> s) const {
    return std::max(eps_abs_, eps_rel_ * std::sqrt(std::max(0.0, s[kRms])));
}

bool FluxSwapBank::solve(std::span<const double> s, const FluxSignals& w, std::array<double, 2>& phi) const {
    if (!(std::abs(w.delta) >= delta_threshold(s))) return false;
    const auto n = numerator(w);
    phi = {n[0] / w.delta, n[1] / w.delta};
    return true;
}

FluxInputs pmsm_measured_signals(const plants::PmsmParams& p, std::span<const double> u, std::span<const double> y) {
    FluxInputs in;
    in.y1 = y[0];
    in.y2 = y[1];
    in.z1 = -p.R * y[0] + u[0];
    in.z2 = -p.R * y[1] + u[1];
    in.z3 = -p.lambda_m * p.lambda_m / (2.0 * p.L) + 0.5 * p.L * (y[0] * y[0] + y[1] * y[1]);
    return in;
}

FluxInputs wrim_measured_signals(const plants::WrimParams& p, bool stator, std::span<const double> u,
                                 std::span<const double> y) {
    const double is2 = y[0] * y[0] + y[1] * y[1];
    const double ir2 = y[2] * y[2] + y[3] * y[3];
    const double lsr2 = p.Lsr * p.Lsr;
    FluxInputs in;
    if (stator) {
        in.y1 = y[0];
        in.y2 = y[1];
        in.z1 = -p.Rs * y[0] + u[0];
        in.z2 = -p.Rs * y[1] + u[1];
        in.z3 = 0.5 * p.Ls * is2 - lsr2 / (2.0 * p.Ls) * ir2;
    } else {
        in.y1 = y[2];
        in.y2 = y[3];
        in.z1 = -p.Rr * y[2];
        in.z2 = -p.Rr * y[3];
        in.z3 = 0.5 * p.Lr * ir2 - lsr2 / (2.0 * p.Lr) * is2;
    }
    return in;
}

// --- PMSM ASLO --------------------------------------------------------------

PmsmAslo::PmsmAslo(plants::PmsmParams params, double lambda, double eps_rel)
    : p_(params), bank_(lambda, params.L, eps_rel) {
    p_.validate();
}

void PmsmAslo::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    bank_.derivatives(s, inputs(sig), ds);
}

bool PmsmAslo::raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const {
    std::array<double, 2> phi{};
    if (!bank_.solve(s, bank_.signals(s, inputs(sig)), phi)) return false;
    out[0] = phi[0];
    out[1] = phi[1];
    return true;
}

double PmsmAslo::delta(std::span<const double> s, const Signals& sig) const {
    return bank_.signals(s, inputs(sig)).delta;
}

// --- PMSM A-ASLO ------------------------------------------------------------

PmsmAaslo::PmsmAaslo(plants::PmsmParams params, double lambda, double gamma, double eps_rel)
    : p_(params), bank_(lambda, params.L, eps_rel), gamma_(gamma) {
    p_.validate();
    if (gamma < 0.0) throw std::invalid_argument("PmsmAaslo: gamma must be non-negative");
}

void PmsmAaslo::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    const auto bank_state = s.first(FluxSwapBank::kStates);
    const FluxInputs in = pmsm_measured_signals(p_, sig.u, sig.y);
    bank_.derivatives(bank_state, in, ds.first(FluxSwapBank::kStates));
    const double ph1 = s[FluxSwapBank::kStates], ph2 = s[FluxSwapBank::kStates + 1];
    std::array<double, 2> phi{};
    double& d1 = ds[FluxSwapBank::kStates];
    double& d2 = ds[FluxSwapBank::kStates + 1];
    d1 = in.z1;
    d2 = in.z2;
    if (bank_.solve(bank_state, bank_.signals(bank_state, in), phi)) {
        d1 += gamma_ * (phi[0] - ph1);
        d2 += gamma_ * (phi[1] - ph2);
    }
}

bool PmsmAaslo::raw_estimate(std::span<const double> s, const Signals&, std::span<double> out) const {
    out[0] = s[FluxSwapBank::kStates];
    out[1] = s[FluxSwapBank::kStates + 1];
    return true;
}

double PmsmAaslo::delta(std::span<const double> s, const Signals& sig) const {
    return bank_.signals(s.first(FluxSwapBank::kStates), pmsm_measured_signals(p_, sig.u, sig.y)).delta;
}

// --- FO3 --------------------------------------------------------------------

Fo3Observer::Fo3Observer(plants::PmsmParams params, double lambda, double gamma)
    : p_(params), bank_(lambda, params.L), gamma_(gamma) {
    p_.validate();
    if (gamma < 0.0) throw std::invalid_argument("Fo3Observer: gamma must be non-negative");
}

void Fo3Observer::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    const auto bank_state = s.first(FluxSwapBank::kStates);
    const FluxInputs in = pmsm_measured_signals(p_, sig.u, sig.y);
    bank_.derivatives(bank_state, in, ds.first(FluxSwapBank::kStates));
    const FluxSignals w = bank_.signals(bank_state, in);
    const auto n = numerator(w);
    const double ph1 = s[FluxSwapBank::kStates], ph2 = s[FluxSwapBank::kStates + 1];
    ds[FluxSwapBank::kStates] = in.z1 + gamma_ * w.delta * (n[0] - w.delta * ph1);
    ds[FluxSwapBank::kStates + 1] = in.z2 + gamma_ * w.delta * (n[1] - w.delta * ph2);
}

bool Fo3Observer::raw_estimate(std::span<const double> s, const Signals&, std::span<double> out) const {
    out[0] = s[FluxSwapBank::kStates];
    out[1] = s[FluxSwapBank::kStates + 1];
    return true;
}

double Fo3Observer::delta(std::span<const double> s, const Signals& sig) const {
    return bank_.signals(s.first(FluxSwapBank::kStates), pmsm_measured_signals(p_, sig.u, sig.y)).delta;
}

// --- FO1 --------------------------------------------------------------------

Fo1Observer::Fo1Observer(plants::PmsmParams params, double lambda, double gamma)
    : p_(params), lambda_(lambda), gamma_(gamma) {
    p_.validate();
    if (!(lambda > 0.0)) throw std::invalid_argument("Fo1Observer: lambda must be positive");
    if (gamma < 0.0) throw std::invalid_argument("Fo1Observer: gamma must be non-negative");
}

void Fo1Observer::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    const double i1 = lti::require_finite(sig.y[0], "y1"), i2 = lti::require_finite(sig.y[1], "y2");
    const double v1 = lti::require_finite(sig.u[0], "u1"), v2 = lti::require_finite(sig.u[1], "u2");
    const double q1 = s[0] - p_.R * s[2] - p_.L * i1;
    const double q2 = s[1] - p_.R * s[3] - p_.L * i2;
    const double qq = q1 * q1 + q2 * q2;
    const double y = -lambda_ * (qq + s[4]);
    const double om1 = lambda_ * (2.0 * q1 - s[5]);
    const double om2 = lambda_ * (2.0 * q2 - s[6]);
    const double err = y - (om1 * s[7] + om2 * s[8]);
    ds[0] = v1;
    ds[1] = v2;
    ds[2] = i1;
    ds[3] = i2;
    ds[4] = -lambda_ * (s[4] + qq);
    ds[5] = -lambda_ * (s[5] - 2.0 * q1);
    ds[6] = -lambda_ * (s[6] - 2.0 * q2);
    ds[7] = gamma_ * om1 * err;
    ds[8] = gamma_ * om2 * err;
}

bool Fo1Observer::raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const {
    const double q1 = s[0] - p_.R * s[2] - p_.L * sig.y[0];
    const double q2 = s[1] - p_.R * s[3] - p_.L * sig.y[1];
    out[0] = p_.L * sig.y[0] + q1 + s[7];
    out[1] = p_.L * sig.y[1] + q2 + s[8];
    return true;
}

// --- FO2 --------------------------------------------------------------------

Fo2Observer::Fo2Observer(plants::PmsmParams params, double gamma) : p_(params), gamma_(gamma) {
    p_.validate();
    if (gamma < 0.0) throw std::invalid_argument("Fo2Observer: gamma must be non-negative");
}

void Fo2Observer::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    const double i1 = lti::require_finite(sig.y[0], "y1"), i2 = lti::require_finite(sig.y[1], "y2");
    const double e1 = s[0] - p_.L * i1, e2 = s[1] - p_.L * i2;
    const double h = e1 * e1 + e2 * e2 - p_.lambda_m * p_.lambda_m;
    const double gate = std::max(0.0, h);
    ds[0] = lti::require_finite(sig.u[0], "u1") - p_.R * i1 - gamma_ * e1 * gate;
    ds[1] = lti::require_finite(sig.u[1], "u2") - p_.R * i2 - gamma_ * e2 * gate;
}

bool Fo2Observer::raw_estimate(std::span<const double> s, const Signals&, std::span<double> out) const {
    out[0] = s[0];
    out[1] = s[1];
    return true;
}

// --- WRIM -------------------------------------------------------------------

WrimAslo::WrimAslo(plants::WrimParams params, double lambda, double eps_rel)
    : p_(params), stator_(lambda, params.Ls, eps_rel), rotor_(lambda, params.Lr, eps_rel) {
    p_.validate();
}

void WrimAslo::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    constexpr std::size_t n = FluxSwapBank::kStates;
    stator_.derivatives(s.first(n), inputs(sig, true), ds.first(n));
    rotor_.derivatives(s.subspan(n, n), inputs(sig, false), ds.subspan(n, n));
}

bool WrimAslo::raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const {
    constexpr std::size_t n = FluxSwapBank::kStates;
    std::array<double, 2> ps{}, pr{};
    const auto ss = s.first(n), sr = s.subspan(n, n);
    const bool ok_s = stator_.solve(ss, stator_.signals(ss, inputs(sig, true)), ps);
    const bool ok_r = rotor_.solve(sr, rotor_.signals(sr, inputs(sig, false)), pr);
    if (!ok_s || !ok_r) return false;
    out[0] = ps[0];
    out[1] = ps[1];
    out[2] = pr[0];
    out[3] = pr[1];
    return true;
}

double WrimAslo::delta(std::span<const double> s, const Signals& sig) const {
    constexpr std::size_t n = FluxSwapBank::kStates;
    const double ds = stator_.signals(s.first(n), inputs(sig, true)).delta;
    const double dr = rotor_.signals(s.subspan(n, n), inputs(sig, false)).delta;
    return std::abs(ds) <= std::abs(dr) ? ds : dr;
}

WrimAaslo::WrimAaslo(plants::WrimParams params, double lambda, double gamma_s, double gamma_r, double eps_rel)
    : aslo_(params, lambda, eps_rel), gamma_s_(gamma_s), gamma_r_(gamma_r) {
    if (gamma_s < 0.0 || gamma_r < 0.0) throw std::invalid_argument("WrimAaslo: gains must be non-negative");
}

void WrimAaslo::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    constexpr std::size_t n = FluxSwapBank::kStates;
    aslo_.derivative(s.first(2 * n), sig, ds.first(2 * n));
    for (int branch = 0; branch < 2; ++branch) {
        const bool stator = branch == 0;
        const FluxSwapBank& bank = aslo_.bank(stator);
        const auto bs = s.subspan(branch * n, n);
        const FluxInputs in = aslo_.inputs(sig, stator);
        const double gamma = stator ? gamma_s_ : gamma_r_;
        const std::size_t at = 2 * n + 2 * static_cast<std::size_t>(branch);
        std::array<double, 2> phi{};
        ds[at] = in.z1;
        ds[at + 1] = in.z2;
        if (bank.solve(bs, bank.signals(bs, in), phi)) {
            ds[at] += gamma * (phi[0] - s[at]);
            ds[at + 1] += gamma * (phi[1] - s[at + 1]);
        }
    }
}

bool WrimAaslo::raw_estimate(std::span<const double> s, const Signals&, std::span<double> out) const {
    constexpr std::size_t n = FluxSwapBank::kStates;
    for (std::size_t k = 0; k < 4; ++k) out[k] = s[2 * n + k];
    return true;
}

double WrimAaslo::delta(std::span<const double> s, const Signals& sig) const {
    return aslo_.delta(s.first(2 * FluxSwapBank::kStates), sig);
}

}  // namespace aslo::obs
