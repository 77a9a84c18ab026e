#include "aslo/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aslo::noise {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Xorshift64Star::Xorshift64Star(std::uint64_t seed) {
    std::uint64_t sm = seed;
    state_ = splitmix64(sm);
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Xorshift64Star::next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
}

double Xorshift64Star::uniform() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

GaussianSource::GaussianSource(std::uint64_t seed, double sigma) : rng_(seed), sigma_(sigma) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("GaussianSource: sigma must be non-negative");
}

double GaussianSource::sample() {
    if (has_spare_) {
        has_spare_ = false;
        return sigma_ * spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(rng_.uniform()));
    const double a = 2.0 * std::numbers::pi * rng_.uniform();
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return sigma_ * r * std::cos(a);
}

}  // namespace aslo::noise
