#pragma once

// Velocity observers for mechanical systems with measured positions.

#include <functional>
#include <memory>

#include "aslo/observer.hpp"
#include "aslo/plants.hpp"

namespace aslo::obs {

/// One coordinate obeying q'' + z' q' = z0 with z and z0 measurable.
/// chi = e^z q' has measurable derivative e^z z0, so
///     q' = (pF[q] + (1/lambda) F[F[e^-z] e^z z0]) / (e^z F[e^-z]).
/// State: F[q], F[e^-z], F[F[e^-z] e^z z0].
struct ExpFactorCore {
    static constexpr std::size_t kStates = 3;
    static constexpr double kDegenerate = 1e-9;

    double lambda = 1.0;
    bool seed_factor = false;    // start F[e^-z] at e^-z(0)
    bool seed_position = false;  // start F[q] at q(0)

    void init(std::span<double> s, double q, double z) const;
    void derivatives(std::span<const double> s, double q, double z, double z0, std::span<double> ds) const;
    /// False when |e^z F[e^-z]| is below kDegenerate.
    bool qdot(std::span<const double> s, double q, double z, double& out) const;
};

/// Single-coordinate wrapper of ExpFactorCore; q is measured output `y_index`.
class ExpFactorAslo final : public Observer {
public:
    using SignalFn = std::function<double(const Signals&)>;

    ExpFactorAslo(std::string channel, std::size_t y_index, double lambda, SignalFn z, SignalFn z0,
                  bool seed_factor = false, bool seed_position = false);

    std::string_view kind() const override { return "expfactor_aslo"; }
    std::vector<std::string> channels() const override { return {channel_}; }
    std::size_t state_size() const override { return ExpFactorCore::kStates; }
    void init_state(std::span<double> s, const Signals& sig) const override;
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;

private:
    std::string channel_;
    std::size_t y_index_;
    ExpFactorCore core_;
    SignalFn z_, z0_;
};

/// Robotic-leg ASLO. State:
///   0 F[q1]  1 F[q2]  2 F[q3]  3 F[1/z1]  4 F[z1 z2 F[1/z1]]  5 F[u2]
///   6 F[q1 qd2_hat^2 + u1/m1]  7 F[z1]
/// with z1 = q1^2 and z2 = u2 / (m1 q1^2).
class RoboticLegAslo final : public Observer {
public:
    enum class Denominator { factor_filter, literal };

    RoboticLegAslo(plants::RoboticLegParams params, double lambda, bool seed_position = false,
                   Denominator denominator = Denominator::factor_filter);

    std::string_view kind() const override { return "leg_aslo"; }
    std::vector<std::string> channels() const override { return {"qd1", "qd2", "qd3"}; }
    std::size_t state_size() const override { return 8; }
    void init_state(std::span<double> s, const Signals& sig) const override;
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;

    /// q2 velocity estimate alone; false when degenerate.
    bool qd2(std::span<const double> s, const Signals& sig, double& out) const;

private:
    plants::RoboticLegParams p_;
    double lambda_;
    bool seed_;
    Denominator denominator_;
};

/// Ball-and-beam ASLO. State:
///   0 F[q1]  1 F[q2]  2 w1 = F[1/z2]  3 w2 = F[w1 z1 z2]  4 F[q1 qd2_hat^2 - g sin q2]
/// with z1 = (-g q1 cos q2 + u) / (ell^2 + q1^2) and z2 = ell^2 + q1^2.
class BallBeamAslo final : public Observer {
public:
    BallBeamAslo(plants::BallBeamParams params, double lambda, bool seed_position = false);

    std::string_view kind() const override { return "bb_aslo"; }
    std::vector<std::string> channels() const override { return {"qd1", "qd2"}; }
    std::size_t state_size() const override { return 5; }
    void init_state(std::span<double> s, const Signals& sig) const override;
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;

    bool qd2(std::span<const double> s, const Signals& sig, double& out) const;

private:
    plants::BallBeamParams p_;
    double lambda_;
    bool seed_;
};

/// Integrating factor of joint j of q2, as a function of time and q1.
using FactorFn = std::function<double(double t, std::span<const double> q1)>;

struct GenericAsloJoint {
    FactorFn z;
    bool seed_factor = false;
};

/// Generic instantiation on a GenericElPlant: one ExpFactorCore per q2 joint
/// with the user-supplied factor, then one per q1 coordinate with factor
/// (R1_i / m1_i) t and forcing evaluated at the q2 velocity estimates.
class GenericElAslo final : public Observer {
public:
    GenericElAslo(std::shared_ptr<const plants::GenericElPlant> plant, std::vector<GenericAsloJoint> joints,
                  double lambda, bool seed_position = false);

    std::string_view kind() const override { return "generic_aslo"; }
    std::vector<std::string> channels() const override;
    std::size_t state_size() const override { return ExpFactorCore::kStates * plant_->dof(); }
    void init_state(std::span<double> s, const Signals& sig) const override;
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;

private:
    double q1_factor(std::size_t i, double t) const;
    /// Fills qd2 estimates, zero where degenerate; returns false if any joint is degenerate.
    bool q2_rates(std::span<const double> s, const Signals& sig, std::span<double> qd2) const;
    double q1_forcing(std::size_t i, const Signals& sig, std::span<const double> qd2) const;

    std::shared_ptr<const plants::GenericElPlant> plant_;
    std::vector<GenericAsloJoint> joints_;
    ExpFactorCore core_;
};

/// Model acceleration q'' = a(q, qd, u) used by the asymptotic variant.
using AccelFn = std::function<void(std::span<const double> q, std::span<const double> qd,
                                   std::span<const double> u, std::span<double> qdd)>;

AccelFn robotic_leg_acceleration(const plants::RoboticLegParams& p);
AccelFn ball_beam_acceleration(const plants::BallBeamParams& p);

/// omega_hat' = a(q, qd_aslo, u) - gamma (omega_hat - qd_aslo). While the inner
/// solve is degenerate the correction is dropped and a(q, omega_hat, u) is used.
class MechAaslo final : public Observer {
public:
    MechAaslo(std::unique_ptr<Observer> inner, AccelFn accel, double gamma, std::string kind);

    std::string_view kind() const override { return kind_; }
    std::vector<std::string> channels() const override { return inner_->channels(); }
    std::size_t state_size() const override { return inner_->state_size() + n_; }
    void init_state(std::span<double> s, const Signals& sig) const override;
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;

private:
    std::unique_ptr<Observer> inner_;
    AccelFn accel_;
    double gamma_;
    std::string kind_;
    std::size_t n_;
};

}  // namespace aslo::obs
