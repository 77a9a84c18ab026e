#include "aslo/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "aslo/errors.hpp"

namespace aslo::sim {

void Excitation::init(std::span<double> s) const { std::fill(s.begin(), s.end(), 0.0); }

void Excitation::derivative(double, std::span<const double>, std::span<const double>, std::span<double> ds) const {
    std::fill(ds.begin(), ds.end(), 0.0);
}

// --- expression excitation --------------------------------------------------

ExpressionExcitation::ExpressionExcitation(const plants::Plant& plant, const std::vector<std::string>& inputs) {
    if (inputs.size() != plant.input_size())
        throw ConfigError("excitation: plant '" + std::string(plant.kind()) + "' needs " +
                          std::to_string(plant.input_size()) + " input expression(s)");
    std::vector<std::string> vars{"t"};
    for (const auto& n : plant.state_names()) vars.push_back(n);
    for (const auto& text : inputs) exprs_.push_back(expr::Expression::compile(text, vars));
}

void ExpressionExcitation::command(double t, std::span<const double> x, std::span<const double>,
                                   std::span<double> v) const {
    std::vector<double> vars(x.size() + 1);
    vars[0] = t;
    std::copy(x.begin(), x.end(), vars.begin() + 1);
    for (std::size_t k = 0; k < exprs_.size(); ++k) v[k] = exprs_[k].eval(vars);
}

// --- PMSM PI scaffold -------------------------------------------------------

PmsmPiController::PmsmPiController(plants::PmsmParams params, PiGains gains, expr::Expression omega_ref,
                                   expr::Expression load_torque)
    : p_(params), g_(gains), omega_ref_(std::move(omega_ref)), load_(std::move(load_torque)) {
    p_.validate();
    if (!(g_.current_bandwidth > 0 && g_.speed_bandwidth > 0 && g_.vmax > 0))
        throw ConfigError("controller: bandwidths and voltage limit must be positive");
    if (omega_ref_.empty()) throw ConfigError("controller: excitation.omega_ref is required");
    kp_i_ = p_.L * g_.current_bandwidth;
    ki_i_ = p_.R * g_.current_bandwidth;
    const double kt = p_.np * p_.lambda_m;
    kp_w_ = p_.J * g_.speed_bandwidth / kt;
    ki_w_ = kp_w_ * g_.speed_bandwidth / 4.0;
}

PmsmPiController::Loop PmsmPiController::evaluate(double t, std::span<const double> x,
                                                  std::span<const double> s) const {
    const double tv[1] = {t};
    const double theta_e = p_.np * x[2];
    const double omega = x[3];
    const double omega_e = p_.np * omega;
    const double c = std::cos(theta_e), sn = std::sin(theta_e);
    const double i1 = (x[0] - p_.lambda_m * c) / p_.L;
    const double i2 = (x[1] - p_.lambda_m * sn) / p_.L;
    const double id = c * i1 + sn * i2;
    const double iq = -sn * i1 + c * i2;

    const double w_ref = omega_ref_.eval(tv);
    const double tau_l = load_.empty() ? 0.0 : load_.eval(tv);
    const double kt = p_.np * p_.lambda_m;

    Loop l{};
    l.theta_e = theta_e;
    l.e_speed = w_ref - omega;
    const double iq_ref = kp_w_ * l.e_speed + ki_w_ * s[0] + (tau_l + p_.Rm * w_ref) / kt;
    l.e_d = 0.0 - id;
    l.e_q = iq_ref - iq;
    l.vd = kp_i_ * l.e_d + ki_i_ * s[1] - omega_e * p_.L * iq;
    l.vq = kp_i_ * l.e_q + ki_i_ * s[2] + omega_e * (p_.L * id + p_.lambda_m);
    const double mag = std::hypot(l.vd, l.vq);
    if (mag > g_.vmax) {
        l.vd *= g_.vmax / mag;
        l.vq *= g_.vmax / mag;
    }
    return l;
}

void PmsmPiController::command(double t, std::span<const double> x, std::span<const double> s,
                               std::span<double> v) const {
    const Loop l = evaluate(t, x, s);
    const double c = std::cos(l.theta_e), sn = std::sin(l.theta_e);
    v[0] = c * l.vd - sn * l.vq;
    v[1] = sn * l.vd + c * l.vq;
}

void PmsmPiController::derivative(double t, std::span<const double> x, std::span<const double> s,
                                  std::span<double> ds) const {
    const Loop l = evaluate(t, x, s);
    ds[0] = l.e_speed;
    ds[1] = l.e_d;
    ds[2] = l.e_q;
}

// --- scenario ---------------------------------------------------------------

const char* to_string(DisturbanceKind kind) {
    switch (kind) {
        case DisturbanceKind::none: return "none";
        case DisturbanceKind::output_const: return "output_const";
        case DisturbanceKind::input_const: return "input_const";
        case DisturbanceKind::input_noise: return "input_noise";
        case DisturbanceKind::parasitic: return "parasitic";
    }
    return "none";
}

std::size_t Scenario::steps() const { return static_cast<std::size_t>(std::llround(t_end / dt)); }

std::vector<std::string> Scenario::validate() const {
    std::vector<std::string> warnings;
    if (!plant) throw ConfigError("scenario: plant is missing");
    if (!excitation) throw ConfigError("scenario: excitation is missing");
    if (x0.size() != plant->state_size())
        throw ConfigError("plant.x0: expected " + std::to_string(plant->state_size()) + " values, got " +
                          std::to_string(x0.size()));
    if (!(dt > 0.0)) throw ConfigError("integration.dt must be positive");
    if (!(t_end > dt)) throw ConfigError("integration.t_end must exceed integration.dt");
    if (decimation == 0) throw ConfigError("output.decimation must be at least 1");
    if (disturbance.kind == DisturbanceKind::parasitic && !(disturbance.tau > 0.0))
        throw ConfigError("disturbance.tau must be positive for parasitic dynamics");
    if (disturbance.kind == DisturbanceKind::input_noise && !(disturbance.sigma >= 0.0))
        throw ConfigError("disturbance.sigma must be non-negative");

    const auto names = plant->state_names();
    std::set<std::string> labels;
    for (const auto& slot : observers) {
        if (!slot.observer) throw ConfigError("observer '" + slot.label + "' is not constructed");
        if (!labels.insert(slot.label).second) throw ConfigError("duplicate observer label '" + slot.label + "'");
        for (const auto& ch : slot.observer->channels())
            if (std::find(names.begin(), names.end(), ch) == names.end())
                throw ConfigError("observer '" + slot.label + "' estimates '" + ch +
                                  "', which is not a state of plant '" + std::string(plant->kind()) + "'");
        if (slot.max_rate > 0.0 && dt > 1.0 / (10.0 * slot.max_rate))
            warnings.push_back("observer '" + slot.label + "': dt exceeds 1/(10 * max(lambda, gamma))");
    }
    return warnings;
}

}  // namespace aslo::sim
