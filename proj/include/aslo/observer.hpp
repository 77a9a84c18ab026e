#pragma once

// Common interface for every observer. An observer owns no ODE state: the
// simulator hands it a span of its slice of the composite state vector. The
// only mutable member is the last valid estimate, which is refreshed by
// commit() once per accepted step and returned while the algebraic solve is
// degenerate.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace aslo::obs {

/// Measured signals as seen by the observers at time t.
struct Signals {
    double t = 0.0;
    std::span<const double> u;
    std::span<const double> y;
};

class Observer {
public:
    virtual ~Observer() = default;

    virtual std::string_view kind() const = 0;

    /// Names of the plant states this observer estimates, in output order.
    virtual std::vector<std::string> channels() const = 0;

    virtual std::size_t state_size() const = 0;

    /// Initial filter and estimate states. Default: all zero.
    virtual void init_state(std::span<double> s, const Signals& sig) const;

    virtual void derivative(std::span<const double> s, const Signals& sig, std::span<double> ds) const = 0;

    /// Unheld estimate. Returns false when the solve is degenerate at this sample.
    virtual bool raw_estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const = 0;

    /// Determinant-like conditioning signal, NaN when the observer has none.
    virtual bool has_delta() const { return false; }
    virtual double delta(std::span<const double>, const Signals&) const {
        return std::numeric_limits<double>::quiet_NaN();
    }

    /// Resets held bookkeeping and fills the state. Call once before the first step.
    void init(std::span<double> s, const Signals& sig);

    /// Raw estimate or, if degenerate, the last valid one.
    void estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const;

    /// Refresh the last valid estimate from the accepted state.
    void commit(std::span<const double> s, const Signals& sig);

    bool held() const { return held_; }

    std::size_t channel_count() const { return channels().size(); }

private:
    std::vector<double> last_valid_;
    std::vector<double> scratch_;
    bool held_ = false;
};

}  // namespace aslo::obs
