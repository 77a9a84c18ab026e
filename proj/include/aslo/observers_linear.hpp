#pragma once

// Observers for the double integrator and the n-th order integrator chain.

#include <vector>

#include "aslo/chain_coefficients.hpp"
#include "aslo/observer.hpp"

namespace aslo::obs {

/// x2_hat = lambda (y - F[y]) + F[u] / lambda. State (F[y], F[u]).
class DiAslo final : public Observer {
public:
    explicit DiAslo(double lambda, bool seed_filters = false);

    double lambda() const { return lambda_; }

    std::string_view kind() const override { return "di_aslo"; }
    std::vector<std::string> channels() const override { return {"x2"}; }
    std::size_t state_size() const override { return 2; }
    void init_state(std::span<double> s, const Signals& sig) const override;
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;

    /// ASLO output for a given filter state, shared with the asymptotic variant.
    double value(std::span<const double> s, const Signals& sig) const;

private:
    double lambda_;
    bool seed_;
};

/// x2_hat' = u - gamma (x2_hat - ASLO). State (F[y], F[u], x2_hat).
class DiAaslo final : public Observer {
public:
    DiAaslo(double lambda, double gamma, double xhat0 = 0.0, bool seed_filters = false);

    std::string_view kind() const override { return "di_aaslo"; }
    std::vector<std::string> channels() const override { return {"x2"}; }
    std::size_t state_size() const override { return 3; }
    void init_state(std::span<double> s, const Signals& sig) const override;
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;

    const DiAslo& inner() const { return inner_; }

private:
    DiAslo inner_;
    double gamma_;
    double xhat0_;
};

/// Reduced-order Luenberger: xc' = -gL xc + u - gL^2 y, x2_hat = xc + gL y.
class DiLuenberger final : public Observer {
public:
    explicit DiLuenberger(double gamma_l, double xc0 = 0.0);

    std::string_view kind() const override { return "di_luenberger"; }
    std::vector<std::string> channels() const override { return {"x2"}; }
    std::size_t state_size() const override { return 1; }
    void init_state(std::span<double> s, const Signals& sig) const override;
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;

private:
    double gamma_l_;
    double xc0_;
};

/// Generic single-input single-output LTI observer driven by [u; y]:
/// w' = A w + B [u; y], x2_hat = C w + D [u; y]. Matrices are row-major.
class StateSpaceObserver final : public Observer {
public:
    StateSpaceObserver(std::string kind, std::size_t order, std::vector<double> A, std::vector<double> B,
                       std::vector<double> C, std::vector<double> D);

    std::string_view kind() const override { return kind_; }
    std::vector<std::string> channels() const override { return {"x2"}; }
    std::size_t state_size() const override { return order_; }
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;

private:
    std::string kind_;
    std::size_t order_;
    std::vector<double> A_, B_, C_, D_;
};

/// State-space realization of the double-integrator ASLO, states (F[u], -lambda F[y]).
StateSpaceObserver di_aslo_realization(double lambda);

/// State-space realization of the asymptotic variant, states (F[u], -lambda F[y], x2_hat).
StateSpaceObserver di_aaslo_realization(double lambda, double gamma);

/// Integrator-chain ASLO for (x2..xn). State: F^i[u] for i = 1..n-1, then the
/// (pF)^i[y] cascade for i = 1..n-1.
class ChainAslo final : public Observer {
public:
    ChainAslo(int n, double lambda, bool seed_filters = false);

    int order() const { return n_; }
    const chain::CoefficientTable& table() const { return table_; }

    std::string_view kind() const override { return "chain_aslo"; }
    std::vector<std::string> channels() const override;
    std::size_t state_size() const override { return 2 * static_cast<std::size_t>(n_ - 1); }
    void init_state(std::span<double> s, const Signals& sig) const override;
    void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const override;
    bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const override;

    /// wy[i-1] = (pF)^i[y], wu[i-1] = F^i[u], i = 1..n-1.
    void basis(std::span<const double> s, const Signals& sig, std::span<double> wy, std::span<double> wu) const;

private:
    struct Row {
        std::vector<double> wy, wu, x;  // indexed by i (wy, wu) or j (x); entry 0 unused
    };

    int n_;
    double lambda_;
    bool seed_;
    chain::CoefficientTable table_;
    std::vector<Row> rows_;
};

}  // namespace aslo::obs
