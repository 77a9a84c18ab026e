#pragma once

// Flux observers for the PMSM and the wound-rotor induction motor.

#include <array>

#include "aslo/observer.hpp"
#include "aslo/plants.hpp"

namespace aslo::obs {

/// Measured signals of one winding: currents y and (z1, z2, z3), where
/// (z1, z2) is the flux derivative and z3 the constant-magnitude term.
struct FluxInputs {
    double y1 = 0, y2 = 0;
    double z1 = 0, z2 = 0, z3 = 0;
};

/// The nine dynamic-extension signals, of which w4..w9 enter the 2x2 solve.
struct FluxSignals {
    double w1 = 0, w3 = 0;
    double w4 = 0, w5 = 0, w6 = 0, w7 = 0, w8 = 0, w9 = 0;
    double delta = 0;
};

/// Filter bank shared by the PMSM and both WRIM windings. State layout:
///   0 F[y1]        1 F[y2]        2 F[z1]        3 F[z2]        4 F[z3]
///   5 F[z1 F[y1]]  6 F[z2 F[y2]]  7 F[z1 F[z1]]  8 F[z2 F[z2]]
///   9 w7 = F[w4]  10 w8 = F[w5]  11 F[w6]       12 F[z1 w7]    13 F[z2 w8]
///  14 running mean of ((w4 w8)^2 + (w5 w7)^2) / 2
class FluxSwapBank {
public:
    static constexpr std::size_t kStates = 15;

    FluxSwapBank(double lambda, double L, double eps_rel = 1e-6, double eps_abs = 1e-12);

    double lambda() const { return lambda_; }
    double inductance() const { return L_; }

    /// w-signals through w1 = F[y1] + F[z1]/(lambda L), w4 = w1 - y1 and the like.
    FluxSignals signals(std::span<const double> s, const FluxInputs& in) const;

    /// w-signals through the pF forms, e.g. w4 = -(1/lambda) pF[y1] + F[z1]/(lambda L).
    FluxSignals direct_signals(std::span<const double> s, const FluxInputs& in) const;

    void derivatives(std::span<const double> s, const FluxInputs& in, std::span<double> ds) const;

    /// Threshold below which |delta| counts as singular.
    double delta_threshold(std::span<const double> s) const;

    /// phi = (1/delta) [w6 w8 - w5 w9; w4 w9 - w6 w7]. False when delta is below threshold.
    bool solve(std::span<const double> s, const FluxSignals& w, std::array<double, 2>& phi) const;

private:
    double lambda_, L_, eps_rel_, eps_abs_;
};

/// z-signals of the PMSM stator.
FluxInputs pmsm_measured_signals(const plants::PmsmParams& p, std::span<const double> u, std::span<const double> y);

/// z-signals of one WRIM winding; `stator` selects the branch.
FluxInputs wrim_measured_signals(const plants::WrimParams& p, bool stator, std::span<const double> u,
                                 std::span<const double> y);

class PmsmAslo final : public Observer {
public:
    PmsmAslo(plants::PmsmParams params, double lambda, double eps_rel = 1e-6);

    const FluxSwapBank& bank() const { return bank_; }
    FluxInputs inputs(const Signals& sig) const { return pmsm_measured_signals(p_, sig.u, sig.y); }

    std::string_view kind() const override { return "pmsm_aslo"; }
    std::vector<std::string> channels() const override { return {"phi1", "phi2"}; }
    std::size_t state_size() const override { return FluxSwapBank::kStates; }
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;
    bool has_delta() const override { return true; }
    double delta(std::span<const double> s, const Signals& sig) const override;

private:
    plants::PmsmParams p_;
    FluxSwapBank bank_;
};

/// phi_hat' = z - gamma phi_hat + gamma phi_aslo; only z is integrated while delta is singular.
class PmsmAaslo final : public Observer {
public:
    PmsmAaslo(plants::PmsmParams params, double lambda, double gamma, double eps_rel = 1e-6);

    std::string_view kind() const override { return "pmsm_aaslo"; }
    std::vector<std::string> channels() const override { return {"phi1", "phi2"}; }
    std::size_t state_size() const override { return FluxSwapBank::kStates + 2; }
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;
    bool has_delta() const override { return true; }
    double delta(std::span<const double> s, const Signals& sig) const override;

private:
    plants::PmsmParams p_;
    FluxSwapBank bank_;
    double gamma_;
};

/// phi_hat' = z + gamma delta (N - delta phi_hat), N the numerator of the 2x2 solve.
class Fo3Observer final : public Observer {
public:
    Fo3Observer(plants::PmsmParams params, double lambda, double gamma);

    std::string_view kind() const override { return "fo3"; }
    std::vector<std::string> channels() const override { return {"phi1", "phi2"}; }
    std::size_t state_size() const override { return FluxSwapBank::kStates + 2; }
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;
    bool has_delta() const override { return true; }
    double delta(std::span<const double> s, const Signals& sig) const override;

private:
    plants::PmsmParams p_;
    FluxSwapBank bank_;
    double gamma_;
};

/// Gradient observer with a regressor built from integrated voltages. State:
/// xi1..xi4, xi5, xi6, xi7, eta1, eta2.
class Fo1Observer final : public Observer {
public:
    Fo1Observer(plants::PmsmParams params, double lambda, double gamma);

    std::string_view kind() const override { return "fo1"; }
    std::vector<std::string> channels() const override { return {"phi1", "phi2"}; }
    std::size_t state_size() const override { return 9; }
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;

private:
    plants::PmsmParams p_;
    double lambda_, gamma_;
};

/// phi_hat' = v - R i - gamma (phi_hat - L i) max{0, |phi_hat - L i|^2 - lambda_m^2}.
class Fo2Observer final : public Observer {
public:
    Fo2Observer(plants::PmsmParams params, double gamma);

    std::string_view kind() const override { return "fo2"; }
    std::vector<std::string> channels() const override { return {"phi1", "phi2"}; }
    std::size_t state_size() const override { return 2; }
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;

private:
    plants::PmsmParams p_;
    double gamma_;
};

/// Stator and rotor banks side by side: state is [stator bank | rotor bank].
class WrimAslo final : public Observer {
public:
    WrimAslo(plants::WrimParams params, double lambda, double eps_rel = 1e-6);

    const FluxSwapBank& bank(bool stator) const { return stator ? stator_ : rotor_; }
    FluxInputs inputs(const Signals& sig, bool stator) const {
        return wrim_measured_signals(p_, stator, sig.u, sig.y);
    }

    std::string_view kind() const override { return "wrim_aslo"; }
    std::vector<std::string> channels() const override { return {"phis1", "phis2", "phir1", "phir2"}; }
    std::size_t state_size() const override { return 2 * FluxSwapBank::kStates; }
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;
    bool has_delta() const override { return true; }
    /// Branch determinant of smaller magnitude.
    double delta(std::span<const double> s, const Signals& sig) const override;

private:
    plants::WrimParams p_;
    FluxSwapBank stator_, rotor_;
};

/// Per-branch asymptotic variant with gains (gamma_s, gamma_r).
class WrimAaslo final : public Observer {
public:
    WrimAaslo(plants::WrimParams params, double lambda, double gamma_s, double gamma_r, double eps_rel = 1e-6);

    std::string_view kind() const override { return "wrim_aaslo"; }
    std::vector<std::string> channels() const override { return {"phis1", "phis2", "phir1", "phir2"}; }
    std::size_t state_size() const override { return 2 * FluxSwapBank::kStates + 4; }
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;
    bool has_delta() const override { return true; }
    double delta(std::span<const double> s, const Signals& sig) const override;

private:
    WrimAslo aslo_;
    double gamma_s_, gamma_r_;
};

}  // namespace aslo::obs
