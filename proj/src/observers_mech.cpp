#include "aslo/observers_mech.hpp"

#include <cmath>
#include <stdexcept>

#include "aslo/errors.hpp"
#include "aslo/lti.hpp"

namespace aslo::obs {

namespace {

void require_lambda(double lambda, const char* who) {
    if (!(lambda > 0.0)) throw std::invalid_argument(std::string(who) + ": lambda must be positive");
}

double pf(double lambda, double state, double input) { return lti::FilterBlock{lambda, state}.p_filter(input); }

}  // namespace

// --- generic primitive ------------------------------------------------------

void ExpFactorCore::init(std::span<double> s, double q, double z) const {
    s[0] = seed_position ? q : 0.0;
    s[1] = seed_factor ? std::exp(-z) : 0.0;
    s[2] = 0.0;
}

void ExpFactorCore::derivatives(std::span<const double> s, double q, double z, double z0,
                                std::span<double> ds) const {
    const double ez = std::exp(lti::require_finite(z, "integrating factor"));
    const double chi_dot = ez * lti::require_finite(z0, "forcing");
    ds[0] = lambda * (lti::require_finite(q, "position") - s[0]);
    ds[1] = lambda * (1.0 / ez - s[1]);
    ds[2] = lambda * (s[1] * chi_dot - s[2]);
}

bool ExpFactorCore::qdot(std::span<const double> s, double q, double z, double& out) const {
    const double den = std::exp(z) * s[1];
    if (!(std::abs(den) >= kDegenerate)) return false;
    out = (pf(lambda, s[0], q) + s[2] / lambda) / den;
    return true;
}

ExpFactorAslo::ExpFactorAslo(std::string channel, std::size_t y_index, double lambda, SignalFn z, SignalFn z0,
                             bool seed_factor, bool seed_position)
    : channel_(std::move(channel)), y_index_(y_index), core_{lambda, seed_factor, seed_position},
      z_(std::move(z)), z0_(std::move(z0)) {
    require_lambda(lambda, "ExpFactorAslo");
    if (!z_ || !z0_) throw std::invalid_argument("ExpFactorAslo: z and z0 are required");
}

void ExpFactorAslo::init_state(std::span<double> s, const Signals& sig) const {
    core_.init(s, sig.y[y_index_], z_(sig));
}

void ExpFactorAslo::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    core_.derivatives(s, sig.y[y_index_], z_(sig), z0_(sig), ds);
}

bool ExpFactorAslo::raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const {
    return core_.qdot(s, sig.y[y_index_], z_(sig), out[0]);
}

// --- robotic leg ------------------------------------------------------------

RoboticLegAslo::RoboticLegAslo(plants::RoboticLegParams params, double lambda, bool seed_position,
                               Denominator denominator)
    : p_(params), lambda_(lambda), seed_(seed_position), denominator_(denominator) {
    require_lambda(lambda, "RoboticLegAslo");
}

void RoboticLegAslo::init_state(std::span<double> s, const Signals& sig) const {
    std::fill(s.begin(), s.end(), 0.0);
    if (seed_)
        for (std::size_t k = 0; k < 3; ++k) s[k] = sig.y[k];
}

bool RoboticLegAslo::qd2(std::span<const double> s, const Signals& sig, double& out) const {
    const double q1 = sig.y[0];
    const double z1 = q1 * q1;
    const double factor = denominator_ == Denominator::literal ? s[7] : s[3];
    const double den = z1 * factor;
    if (!(std::abs(den) >= ExpFactorCore::kDegenerate)) return false;
    out = (pf(lambda_, s[1], sig.y[1]) + s[4] / lambda_) / den;
    return true;
}

void RoboticLegAslo::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    const double q1 = lti::require_finite(sig.y[0], "q1");
    if (std::abs(q1) < p_.q1_min) throw SingularConfiguration("RoboticLegAslo: |q1| below q1_min");
    const double u1 = lti::require_finite(sig.u[0], "u1"), u2 = lti::require_finite(sig.u[1], "u2");
    const double z1 = q1 * q1;
    const double z2 = u2 / (p_.m1 * z1);
    double w = 0.0;
    if (!qd2(s, sig, w)) w = 0.0;
    ds[0] = lambda_ * (q1 - s[0]);
    ds[1] = lambda_ * (lti::require_finite(sig.y[1], "q2") - s[1]);
    ds[2] = lambda_ * (lti::require_finite(sig.y[2], "q3") - s[2]);
    ds[3] = lambda_ * (1.0 / z1 - s[3]);
    ds[4] = lambda_ * (z1 * z2 * s[3] - s[4]);
    ds[5] = lambda_ * (u2 - s[5]);
    ds[6] = lambda_ * (q1 * w * w + u1 / p_.m1 - s[6]);
    ds[7] = lambda_ * (z1 - s[7]);
}

bool RoboticLegAslo::raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const {
    double w = 0.0;
    if (!qd2(s, sig, w)) return false;
    out[0] = pf(lambda_, s[0], sig.y[0]) + s[6] / lambda_;
    out[1] = w;
    out[2] = pf(lambda_, s[2], sig.y[2]) - s[5] / (p_.m2 * lambda_);
    return true;
}

// --- ball and beam ----------------------------------------------------------

BallBeamAslo::BallBeamAslo(plants::BallBeamParams params, double lambda, bool seed_position)
    : p_(params), lambda_(lambda), seed_(seed_position) {
    require_lambda(lambda, "BallBeamAslo");
}

void BallBeamAslo::init_state(std::span<double> s, const Signals& sig) const {
    std::fill(s.begin(), s.end(), 0.0);
    if (seed_) {
        s[0] = sig.y[0];
        s[1] = sig.y[1];
    }
}

bool BallBeamAslo::qd2(std::span<const double> s, const Signals& sig, double& out) const {
    const double q1 = sig.y[0];
    const double z2 = p_.ell * p_.ell + q1 * q1;
    const double den = s[2] * z2;
    if (!(std::abs(den) >= ExpFactorCore::kDegenerate)) return false;
    out = (s[3] / lambda_ + pf(lambda_, s[1], sig.y[1])) / den;
    return true;
}

void BallBeamAslo::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    const double q1 = lti::require_finite(sig.y[0], "q1");
    const double q2 = lti::require_finite(sig.y[1], "q2");
    const double u = lti::require_finite(sig.u[0], "u");
    const double z2 = p_.ell * p_.ell + q1 * q1;
    const double z1 = (-p_.g * q1 * std::cos(q2) + u) / z2;
    double w = 0.0;
    if (!qd2(s, sig, w)) w = 0.0;
    ds[0] = lambda_ * (q1 - s[0]);
    ds[1] = lambda_ * (q2 - s[1]);
    ds[2] = lambda_ * (1.0 / z2 - s[2]);
    ds[3] = lambda_ * (s[2] * z1 * z2 - s[3]);
    ds[4] = lambda_ * (q1 * w * w - p_.g * std::sin(q2) - s[4]);
}

bool BallBeamAslo::raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const {
    double w = 0.0;
    if (!qd2(s, sig, w)) return false;
    out[0] = pf(lambda_, s[0], sig.y[0]) + s[4] / lambda_;
    out[1] = w;
    return true;
}

// --- generic Euler-Lagrange -------------------------------------------------

GenericElAslo::GenericElAslo(std::shared_ptr<const plants::GenericElPlant> plant,
                             std::vector<GenericAsloJoint> joints, double lambda, bool seed_position)
    : plant_(std::move(plant)), joints_(std::move(joints)), core_{lambda, false, seed_position} {
    require_lambda(lambda, "GenericElAslo");
    if (!plant_) throw std::invalid_argument("GenericElAslo: plant is required");
    if (joints_.size() != plant_->spec().m) throw std::invalid_argument("GenericElAslo: one factor per q2 joint");
    for (const auto& j : joints_)
        if (!j.z) throw std::invalid_argument("GenericElAslo: factor function missing");
}

std::vector<std::string> GenericElAslo::channels() const {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= plant_->dof(); ++i) names.push_back("qd" + std::to_string(i));
    return names;
}

double GenericElAslo::q1_factor(std::size_t i, double t) const {
    const auto& spec = plant_->spec();
    return spec.R1[i] / spec.m1[i] * t;
}

void GenericElAslo::init_state(std::span<double> s, const Signals& sig) const {
    const auto& spec = plant_->spec();
    const auto q1 = sig.y.first(spec.s);
    constexpr std::size_t k = ExpFactorCore::kStates;
    for (std::size_t i = 0; i < spec.s; ++i) {
        ExpFactorCore core = core_;
        core.seed_factor = true;
        core.init(s.subspan(i * k, k), sig.y[i], q1_factor(i, sig.t));
    }
    for (std::size_t j = 0; j < spec.m; ++j) {
        ExpFactorCore core = core_;
        core.seed_factor = joints_[j].seed_factor;
        core.init(s.subspan((spec.s + j) * k, k), sig.y[spec.s + j], joints_[j].z(sig.t, q1));
    }
}

bool GenericElAslo::q2_rates(std::span<const double> s, const Signals& sig, std::span<double> qd2) const {
    const auto& spec = plant_->spec();
    const auto q1 = sig.y.first(spec.s);
    constexpr std::size_t k = ExpFactorCore::kStates;
    bool ok = true;
    for (std::size_t j = 0; j < spec.m; ++j) {
        if (!core_.qdot(s.subspan((spec.s + j) * k, k), sig.y[spec.s + j], joints_[j].z(sig.t, q1), qd2[j])) {
            qd2[j] = 0.0;
            ok = false;
        }
    }
    return ok;
}

double GenericElAslo::q1_forcing(std::size_t i, const Signals& sig, std::span<const double> qd2) const {
    // m1 q1'' + R1 q1' = 1/2 (d m3 / d q1)^T qd2^2 - grad_{q1} V + g1 u
    const auto& spec = plant_->spec();
    const std::size_t n = plant_->dof(), s = spec.s, m = spec.m, inputs = spec.inputs;
    const auto q = sig.y.first(n);
    std::vector<double> jac(m * s), grad(n), G(n * inputs);
    spec.dm3(q.first(s), jac);
    spec.gradV(q, grad);
    spec.G(q, G);
    double acc = -grad[i];
    for (std::size_t j = 0; j < m; ++j) acc += 0.5 * jac[j * s + i] * qd2[j] * qd2[j];
    for (std::size_t c = 0; c < inputs; ++c) acc += G[i * inputs + c] * sig.u[c];
    return acc / spec.m1[i];
}

void GenericElAslo::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    const auto& spec = plant_->spec();
    const std::size_t n = plant_->dof();
    constexpr std::size_t k = ExpFactorCore::kStates;
    const auto q1 = sig.y.first(spec.s);
    std::vector<double> x(2 * n, 0.0), qd2(spec.m);
    for (std::size_t i = 0; i < n; ++i) x[i] = sig.y[i];
    q2_rates(s, sig, qd2);
    for (std::size_t j = 0; j < spec.m; ++j) {
        const double z0 = plant_->forcing(x, sig.u, j);
        core_.derivatives(s.subspan((spec.s + j) * k, k), sig.y[spec.s + j], joints_[j].z(sig.t, q1), z0,
                          ds.subspan((spec.s + j) * k, k));
    }
    for (std::size_t i = 0; i < spec.s; ++i)
        core_.derivatives(s.subspan(i * k, k), sig.y[i], q1_factor(i, sig.t), q1_forcing(i, sig, qd2),
                          ds.subspan(i * k, k));
}

bool GenericElAslo::raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const {
    const auto& spec = plant_->spec();
    constexpr std::size_t k = ExpFactorCore::kStates;
    if (!q2_rates(s, sig, out.subspan(spec.s, spec.m))) return false;
    for (std::size_t i = 0; i < spec.s; ++i)
        if (!core_.qdot(s.subspan(i * k, k), sig.y[i], q1_factor(i, sig.t), out[i])) return false;
    return true;
}

// --- asymptotic variant -----------------------------------------------------

AccelFn robotic_leg_acceleration(const plants::RoboticLegParams& p) {
    return [p](std::span<const double> q, std::span<const double> qd, std::span<const double> u,
               std::span<double> qdd) {
        qdd[0] = q[0] * qd[1] * qd[1] + u[0] / p.m1;
        qdd[1] = -2.0 / q[0] * qd[0] * qd[1] + u[1] / (p.m1 * q[0] * q[0]);
        qdd[2] = -u[1] / p.m2;
    };
}

AccelFn ball_beam_acceleration(const plants::BallBeamParams& p) {
    return [p](std::span<const double> q, std::span<const double> qd, std::span<const double> u,
               std::span<double> qdd) {
        qdd[0] = q[0] * qd[1] * qd[1] - p.g * std::sin(q[1]);
        qdd[1] = (-2.0 * q[0] * qd[0] * qd[1] - p.g * q[0] * std::cos(q[1]) + u[0]) / (p.ell * p.ell + q[0] * q[0]);
    };
}

MechAaslo::MechAaslo(std::unique_ptr<Observer> inner, AccelFn accel, double gamma, std::string kind)
    : inner_(std::move(inner)), accel_(std::move(accel)), gamma_(gamma), kind_(std::move(kind)) {
    if (!inner_ || !accel_) throw std::invalid_argument("MechAaslo: inner observer and acceleration are required");
    if (gamma < 0.0) throw std::invalid_argument("MechAaslo: gamma must be non-negative");
    n_ = inner_->channel_count();
}

void MechAaslo::init_state(std::span<double> s, const Signals& sig) const {
    inner_->init_state(s.first(inner_->state_size()), sig);
    for (std::size_t k = 0; k < n_; ++k) s[inner_->state_size() + k] = 0.0;
}

void MechAaslo::derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const {
    const std::size_t m = inner_->state_size();
    inner_->derivative(s.first(m), sig, ds.first(m));
    const auto omega = s.subspan(m, n_);
    std::vector<double> qd(n_), qdd(n_);
    const bool ok = inner_->raw_estimate(s.first(m), sig, qd);
    accel_(sig.y, ok ? std::span<const double>(qd) : omega, sig.u, qdd);
    for (std::size_t k = 0; k < n_; ++k) ds[m + k] = qdd[k] - (ok ? gamma_ * (omega[k] - qd[k]) : 0.0);
}

bool MechAaslo::raw_estimate(std::span<const double> s, const Signals&, std::span<double> out) const {
    const std::size_t m = inner_->state_size();
    for (std::size_t k = 0; k < n_; ++k) out[k] = s[m + k];
    return true;
}

}  // namespace aslo::obs
