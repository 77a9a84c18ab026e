#include "aslo/lti.hpp"

#include <stdexcept>

namespace aslo::lti {

double zoh_step(const FilterBlock& block, double input, double dt) {
    const double decay = std::exp(-block.lambda * dt);
    return decay * block.state + (1.0 - decay) * require_finite(input, "filter input");
}

FilterChain::FilterChain(double lambda, std::span<const double> states) : lambda_(lambda), states_(states) {
    if (!(lambda > 0.0)) throw std::invalid_argument("FilterChain: lambda must be positive");
    if (states.empty()) throw std::invalid_argument("FilterChain: needs at least one section");
}

void FilterChain::derivatives(double input, std::span<double> d) const {
    double drive = require_finite(input, "filter chain input");
    for (std::size_t k = 0; k < states_.size(); ++k) {
        d[k] = lambda_ * (drive - states_[k]);
        drive = states_[k];
    }
}

DerivativeChain::DerivativeChain(double lambda, std::span<const double> states)
    : lambda_(lambda), states_(states) {
    if (!(lambda > 0.0)) throw std::invalid_argument("DerivativeChain: lambda must be positive");
    if (states.empty()) throw std::invalid_argument("DerivativeChain: needs at least one section");
}

void DerivativeChain::outputs(double input, std::span<double> out) const {
    double drive = require_finite(input, "derivative chain input");
    for (std::size_t k = 0; k < states_.size(); ++k) {
        drive = lambda_ * (drive - states_[k]);
        out[k] = drive;
    }
}

void DerivativeChain::derivatives(double input, std::span<double> d) const {
    double drive = require_finite(input, "derivative chain input");
    for (std::size_t k = 0; k < states_.size(); ++k) {
        const double pf = lambda_ * (drive - states_[k]);
        d[k] = pf;
        drive = pf;
    }
}

}  // namespace aslo::lti
