#pragma once

// A scenario bundles a plant, its excitation, the observers under test, the
// disturbance applied to the measurement path and the integration settings.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "aslo/expr.hpp"
#include "aslo/observer.hpp"
#include "aslo/plants.hpp"

namespace aslo::sim {

/// Source of the plant input. Excitations may carry their own ODE state
/// (controller integrators) and may read the true plant state.
class Excitation {
public:
    virtual ~Excitation() = default;

    virtual std::size_t state_size() const { return 0; }
    virtual void init(std::span<double> s) const;
    virtual void command(double t, std::span<const double> x, std::span<const double> s,
                         std::span<double> v) const = 0;
    virtual void derivative(double t, std::span<const double> x, std::span<const double> s,
                            std::span<double> ds) const;
};

/// One expression per plant input over the variables t and the plant state names.
class ExpressionExcitation final : public Excitation {
public:
    ExpressionExcitation(const plants::Plant& plant, const std::vector<std::string>& inputs);

    void command(double t, std::span<const double> x, std::span<const double> s,
                 std::span<double> v) const override;

    const std::vector<expr::Expression>& expressions() const { return exprs_; }

private:
    std::vector<expr::Expression> exprs_;
};

struct PiGains {
    double current_bandwidth = 2000.0;  // rad/s
    double speed_bandwidth = 100.0;     // rad/s
    double vmax = 400.0;                // V, clamp on |v|
};

/// Cascaded PI for the PMSM using the true rotor angle and speed: speed loop
/// to q-axis current, current loops to dq voltage with decoupling, then the
/// inverse Park transform. State: speed, d-current and q-current integrals.
class PmsmPiController final : public Excitation {
public:
    PmsmPiController(plants::PmsmParams params, PiGains gains, expr::Expression omega_ref,
                     expr::Expression load_torque);

    std::size_t state_size() const override { return 3; }
    void command(double t, std::span<const double> x, std::span<const double> s,
                 std::span<double> v) const override;
    void derivative(double t, std::span<const double> x, std::span<const double> s,
                    std::span<double> ds) const override;

private:
    struct Loop {
        double e_speed, e_d, e_q;
        double vd, vq, theta_e;
    };
    Loop evaluate(double t, std::span<const double> x, std::span<const double> s) const;

    plants::PmsmParams p_;
    PiGains g_;
    expr::Expression omega_ref_, load_;
    double kp_i_, ki_i_, kp_w_, ki_w_;
};

enum class DisturbanceKind { none, output_const, input_const, input_noise, parasitic };

const char* to_string(DisturbanceKind kind);

struct Disturbance {
    DisturbanceKind kind = DisturbanceKind::none;
    double delta = 0.0;       // output_const, input_const
    double sigma = 0.0;       // input_noise
    std::uint64_t seed = 0;   // input_noise
    double tau = 0.0;         // parasitic
};

struct ObserverSlot {
    std::string label;
    std::unique_ptr<obs::Observer> observer;
    double max_rate = 0.0;  // largest lambda or gamma, for the step-size check
};

struct Scenario {
    std::string name;
    std::shared_ptr<const plants::Plant> plant;
    std::vector<double> x0;
    std::shared_ptr<const Excitation> excitation;
    expr::Expression load_torque;  // function of t; empty means zero
    std::vector<ObserverSlot> observers;
    Disturbance disturbance;
    double dt = 1e-4;
    double t_end = 1.0;
    std::size_t decimation = 100;

    /// Throws ConfigError on inconsistent settings; returns non-fatal warnings.
    std::vector<std::string> validate() const;

    std::size_t steps() const;
};

}  // namespace aslo::sim
