#pragma once

// First-order LTI building blocks. Every filter here is the section
//
//     F(p) = lambda / (p + lambda)
//
// realized as an ODE  s' = lambda * (input - s)  so that the global fixed-step
// integrator advances filter and plant states together.

#include <cmath>
#include <cstddef>
#include <span>

#include "aslo/errors.hpp"

namespace aslo::lti {

inline double require_finite(double value, const char* signal) {
    if (!std::isfinite(value)) throw NonFiniteSignal(signal, std::nan(""));
    return value;
}

/// One first-order section; `state` holds F[input](t).
struct FilterBlock {
    double lambda = 1.0;
    double state = 0.0;

    /// s' = lambda (input - s)
    double derivative(double input) const {
        return lambda * (require_finite(input, "filter input") - state);
    }

    /// pF[input] realized as lambda (input - F[input]); never differentiates numerically.
    /// Equal to derivative() by construction.
    double p_filter(double input) const { return derivative(input); }
};

inline double filter_derivative(const FilterBlock& block, double input) { return block.derivative(input); }
inline double p_filter(const FilterBlock& block, double input) { return block.p_filter(input); }

/// Exact zero-order-hold update of one section over dt. Offline post-processing only;
/// simulations integrate filters through derivative().
double zoh_step(const FilterBlock& block, double input, double dt);

/// Cascade of `states.size()` identical sections: states[k-1] = F^k[input].
class FilterChain {
public:
    FilterChain(double lambda, std::span<const double> states);

    std::size_t size() const { return states_.size(); }
    double lambda() const { return lambda_; }

    /// F^k[input], k in 1..size().
    double output(std::size_t k) const { return states_[k - 1]; }

    void derivatives(double input, std::span<double> d) const;

private:
    double lambda_;
    std::span<const double> states_;
};

/// Cascade realizing (pF)^k[input] = (lambda p / (p + lambda))^k [input]. Stage k is a
/// section driven by the output of stage k-1, and its output is that stage's p_filter.
class DerivativeChain {
public:
    DerivativeChain(double lambda, std::span<const double> states);

    std::size_t size() const { return states_.size(); }

    /// out[k-1] = (pF)^k[input], k in 1..size().
    void outputs(double input, std::span<double> out) const;

    void derivatives(double input, std::span<double> d) const;

private:
    double lambda_;
    std::span<const double> states_;
};

/// Right-hand side of the swapping identity
///
///     F[w v] = F[w] v - F[ (1/lambda) F[w] v' ].
///
/// `outer` carries F[w]; `inner` carries F[F[w] v'] (the 1/lambda is applied at the output).
struct SwapNode {
    FilterBlock outer;
    FilterBlock inner;

    double apply(double v) const { return outer.state * v - inner.state / inner.lambda; }

    /// Derivatives of (outer, inner) given the current w and the measurable v'.
    void derivatives(double w, double v_dot, std::span<double, 2> d) const {
        d[0] = outer.derivative(w);
        d[1] = inner.derivative(outer.state * require_finite(v_dot, "swap v_dot"));
    }
};

inline double swap_apply(const SwapNode& node, double v) {
    return node.apply(lti::require_finite(v, "swap v"));
}

}  // namespace aslo::lti
