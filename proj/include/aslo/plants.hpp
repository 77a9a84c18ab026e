#pragma once

// Plant models in (f, g, h) form. Parameters are immutable after construction;
// the state vector is owned by whoever integrates it.

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aslo::plants {

class Plant {
public:
    virtual ~Plant() = default;

    virtual std::string_view kind() const = 0;
    virtual std::vector<std::string> state_names() const = 0;
    virtual std::vector<std::string> input_names() const = 0;
    virtual std::vector<std::string> output_names() const = 0;

    std::size_t state_size() const { return state_names().size(); }
    std::size_t input_size() const { return input_names().size(); }
    std::size_t output_size() const { return output_names().size(); }

    /// x' = f(x) + g(x) u. `load_torque` is ignored by plants without a rotor.
    virtual void dynamics(std::span<const double> x, std::span<const double> u, std::span<double> dx,
                          double load_torque = 0.0) const = 0;

    virtual void output(std::span<const double> x, std::span<double> y) const = 0;
};

// ---------------------------------------------------------------------------

/// x1' = x2, x2' = u, y = x1
class DoubleIntegrator final : public Plant {
public:
    std::string_view kind() const override { return "double_integrator"; }
    std::vector<std::string> state_names() const override { return {"x1", "x2"}; }
    std::vector<std::string> input_names() const override { return {"u"}; }
    std::vector<std::string> output_names() const override { return {"y"}; }
    void dynamics(std::span<const double> x, std::span<const double> u, std::span<double> dx,
                  double load_torque = 0.0) const override;
    void output(std::span<const double> x, std::span<double> y) const override;
};

/// x_i' = x_{i+1}, x_n' = u, y = x1
class IntegratorChain final : public Plant {
public:
    explicit IntegratorChain(std::size_t order);

    std::size_t order() const { return order_; }

    std::string_view kind() const override { return "integrator_chain"; }
    std::vector<std::string> state_names() const override;
    std::vector<std::string> input_names() const override { return {"u"}; }
    std::vector<std::string> output_names() const override { return {"y"}; }
    void dynamics(std::span<const double> x, std::span<const double> u, std::span<double> dx,
                  double load_torque = 0.0) const override;
    void output(std::span<const double> x, std::span<double> y) const override;

private:
    std::size_t order_;
};

// ---------------------------------------------------------------------------

struct PmsmParams {
    double R = 8.875;          // stator resistance [Ohm]
    double L = 40.03e-3;       // stator inductance [H]
    double J = 60e-6;          // rotor inertia [kg m^2]
    double Rm = 0.0;           // viscous friction [N m s]
    int np = 5;                // pole pairs
    double lambda_m = 0.2086;  // magnet flux [Wb]
    double i_max = 2.3;        // rated current [A], informational

    void validate() const;
};

/// Motor BMP0701F.
PmsmParams bmp0701f();

/// Surface-mount PMSM in the alpha-beta frame. State (phi1, phi2, theta, omega);
/// output is the stator current y = (phi - lambda_m [cos np theta; sin np theta]) / L.
class PmsmModel final : public Plant {
public:
    explicit PmsmModel(PmsmParams params);

    const PmsmParams& params() const { return p_; }

    std::string_view kind() const override { return "pmsm"; }
    std::vector<std::string> state_names() const override { return {"phi1", "phi2", "theta", "omega"}; }
    std::vector<std::string> input_names() const override { return {"u1", "u2"}; }
    std::vector<std::string> output_names() const override { return {"y1", "y2"}; }
    void dynamics(std::span<const double> x, std::span<const double> u, std::span<double> dx,
                  double load_torque = 0.0) const override;
    void output(std::span<const double> x, std::span<double> y) const override;

    /// Flux that puts the motor on the zero-current manifold at angle theta.
    std::array<double, 2> magnet_flux(double theta) const;

private:
    PmsmParams p_;
};

// ---------------------------------------------------------------------------

/// Implementer-chosen wound-rotor induction motor values (no published source).
struct WrimParams {
    double Rs = 0.5;
    double Rr = 0.4;
    double Ls = 0.08;
    double Lr = 0.08;
    double Lsr = 0.075;
    double J = 0.05;
    double Rm = 0.01;

    void validate() const;
};

/// Wound-rotor induction motor, flux-based state (phis1, phis2, phir1, phir2, theta, omega).
/// Measured output is (i_s, i_r), obtained by inverting the rotor-angle dependent
/// inductance matrix. Rotor windings are shorted.
class WrimModel final : public Plant {
public:
    explicit WrimModel(WrimParams params);

    const WrimParams& params() const { return p_; }

    std::string_view kind() const override { return "wrim"; }
    std::vector<std::string> state_names() const override {
        return {"phis1", "phis2", "phir1", "phir2", "theta", "omega"};
    }
    std::vector<std::string> input_names() const override { return {"u1", "u2"}; }
    std::vector<std::string> output_names() const override { return {"is1", "is2", "ir1", "ir2"}; }
    void dynamics(std::span<const double> x, std::span<const double> u, std::span<double> dx,
                  double load_torque = 0.0) const override;
    void output(std::span<const double> x, std::span<double> y) const override;

    /// (is1, is2, ir1, ir2) from fluxes and rotor angle.
    std::array<double, 4> currents(std::span<const double> x) const;

private:
    WrimParams p_;
};

// ---------------------------------------------------------------------------

struct RoboticLegParams {
    double m1 = 1.0;
    double m2 = 1.0;
    double q1_min = 1e-3;
};

/// Three-DoF robotic leg: q1 radial, q2 and q3 angles; inputs (u1, u2).
class RoboticLegModel final : public Plant {
public:
    explicit RoboticLegModel(RoboticLegParams params);

    const RoboticLegParams& params() const { return p_; }

    std::string_view kind() const override { return "robotic_leg"; }
    std::vector<std::string> state_names() const override { return {"q1", "q2", "q3", "qd1", "qd2", "qd3"}; }
    std::vector<std::string> input_names() const override { return {"u1", "u2"}; }
    std::vector<std::string> output_names() const override { return {"q1", "q2", "q3"}; }
    void dynamics(std::span<const double> x, std::span<const double> u, std::span<double> dx,
                  double load_torque = 0.0) const override;
    void output(std::span<const double> x, std::span<double> y) const override;

    double energy(std::span<const double> x) const;

private:
    RoboticLegParams p_;
};

struct BallBeamParams {
    double ell = 1.0;
    double g = 9.81;
};

/// Ball and beam: q1 ball position, q2 beam angle; input is the beam torque.
class BallBeamModel final : public Plant {
public:
    explicit BallBeamModel(BallBeamParams params);

    const BallBeamParams& params() const { return p_; }

    std::string_view kind() const override { return "ball_beam"; }
    std::vector<std::string> state_names() const override { return {"q1", "q2", "qd1", "qd2"}; }
    std::vector<std::string> input_names() const override { return {"u"}; }
    std::vector<std::string> output_names() const override { return {"q1", "q2"}; }
    void dynamics(std::span<const double> x, std::span<const double> u, std::span<double> dx,
                  double load_torque = 0.0) const override;
    void output(std::span<const double> x, std::span<double> y) const override;

    double energy(std::span<const double> x) const;

private:
    BallBeamParams p_;
};

// ---------------------------------------------------------------------------

/// Euler-Lagrange system with M(q) = diag(m1, m3(q1)), q = (q1, q2), q1 in R^s, q2 in R^m,
/// diagonal friction diag(R1, R2). Matrices are row-major.
struct GenericElSpec {
    std::size_t s = 1;
    std::size_t m = 1;
    std::size_t inputs = 1;
    std::vector<double> m1;  // s constant diagonal entries
    std::function<void(std::span<const double> q1, std::span<double> m3)> m3;
    std::function<void(std::span<const double> q1, std::span<double> jac)> dm3;  // m x s
    std::function<double(std::span<const double> q)> V;
    std::function<void(std::span<const double> q, std::span<double> grad)> gradV;  // n
    std::function<void(std::span<const double> q, std::span<double> G)> G;          // n x inputs
    std::vector<double> R1;  // s entries >= 0
    std::vector<double> R2;  // m entries >= 0
};

class GenericElPlant final : public Plant {
public:
    explicit GenericElPlant(GenericElSpec spec);

    const GenericElSpec& spec() const { return spec_; }
    std::size_t dof() const { return spec_.s + spec_.m; }

    std::string_view kind() const override { return "generic_el"; }
    std::vector<std::string> state_names() const override;
    std::vector<std::string> input_names() const override;
    std::vector<std::string> output_names() const override;
    void dynamics(std::span<const double> x, std::span<const double> u, std::span<double> dx,
                  double load_torque = 0.0) const override;
    void output(std::span<const double> x, std::span<double> y) const override;

    /// Kinetic plus potential energy.
    double energy(std::span<const double> x) const;

    /// Power delivered by the inputs minus friction losses, qd^T G u - qd^T R qd.
    double power(std::span<const double> x, std::span<const double> u) const;

    /// Right-hand side of the integrating-factor condition for joint j of q2:
    /// (sum_i d m3_j / d q1_i * qd1_i) / m3_j + R2_j / m3_j.
    double integrating_factor_rate(std::span<const double> x, std::size_t j) const;

    /// Forcing z0_j = e_j^T (g2 u - grad_{q2} V) / m3_j.
    double forcing(std::span<const double> x, std::span<const double> u, std::size_t j) const;

private:
    GenericElSpec spec_;
};

/// Finite-difference check of a user-supplied integrating factor z_j(q1):
/// returns | d/dt z_j(q1(t)) - integrating_factor_rate(x, j) | at state x, with the
/// total derivative taken by central differences along qd1.
double integrating_factor_residual(const GenericElPlant& plant, std::size_t j,
                                   const std::function<double(std::span<const double>)>& z,
                                   std::span<const double> x, double h = 1e-6);

GenericElPlant generic_robotic_leg(const RoboticLegParams& p);
GenericElPlant generic_ball_beam(const BallBeamParams& p);

}  // namespace aslo::plants
