#pragma once

#include <stdexcept>
#include <string>

namespace aslo {

/// A signal entering or leaving a block was NaN or infinite.
class NonFiniteSignal : public std::runtime_error {
public:
    NonFiniteSignal(const std::string& signal, double t)
        : std::runtime_error("non-finite signal '" + signal + "' at t=" + std::to_string(t)),
          signal_(signal), time_(t) {}

    const std::string& signal() const noexcept { return signal_; }
    double time() const noexcept { return time_; }

private:
    std::string signal_;
    double time_;
};

/// The plant left the domain where its dynamics or output map are defined.
class SingularConfiguration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed, missing or unknown configuration entry.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace aslo
