#include "aslo/observer.hpp"

#include <algorithm>

namespace aslo::obs {

void Observer::init_state(std::span<double> s, const Signals&) const { std::fill(s.begin(), s.end(), 0.0); }

void Observer::init(std::span<double> s, const Signals& sig) {
    last_valid_.assign(channel_count(), 0.0);
    held_ = false;
    init_state(s, sig);
    commit(s, sig);
}

void Observer::estimate(std::span<const double> s, const Signals& sig, std::span<double> out) const {
    if (!raw_estimate(s, sig, out)) std::copy(last_valid_.begin(), last_valid_.end(), out.begin());
}

void Observer::commit(std::span<const double> s, const Signals& sig) {
    scratch_.resize(last_valid_.size());
    held_ = !raw_estimate(s, sig, scratch_);
    if (!held_) std::swap(last_valid_, scratch_);
}

}  // namespace aslo::obs
