#pragma once

// Portable Gaussian stream: xorshift64* seeded through splitmix64, then the
// Box-Muller transform. Identical seeds give identical streams on every
// platform with IEEE doubles.

#include <cstdint>

namespace aslo::noise {

std::uint64_t splitmix64(std::uint64_t& state);

class Xorshift64Star {
public:
    explicit Xorshift64Star(std::uint64_t seed);

    std::uint64_t next();
    /// Uniform on (0, 1], never zero.
    double uniform();

private:
    std::uint64_t state_;
};

class GaussianSource {
public:
    GaussianSource(std::uint64_t seed, double sigma);

    double sigma() const { return sigma_; }
    double sample();

private:
    Xorshift64Star rng_;
    double sigma_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace aslo::noise
