#include "aslo/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace aslo::sim {

DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> e, double t0, double t1) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < t.size() && k < e.size(); ++k) {
        if (t[k] < t0 || t[k] > t1) continue;
        const double a = std::abs(e[k]);
        if (!(a > 0.0) || !std::isfinite(a)) continue;
        const double x = t[k], y = std::log(a);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        ++n;
    }
    DecayFit fit;
    fit.samples = n;
    if (n < 2) return fit;
    const double dn = static_cast<double>(n);
    const double vx = sxx - sx * sx / dn;
    const double vy = syy - sy * sy / dn;
    const double cxy = sxy - sx * sy / dn;
    if (!(vx > 0.0)) {
        fit.samples = 0;
        return fit;
    }
    const double slope = cxy / vx;
    fit.rate = -slope;
    fit.r2 = vy > 0.0 ? (cxy * cxy) / (vx * vy) : 1.0;
    return fit;
}

const ChannelMetrics* Metrics::find(const std::string& label, const std::string& channel) const {
    for (const auto& c : channels)
        if (c.label == label && c.channel == channel) return &c;
    return nullptr;
}

const ObserverMetrics* Metrics::find(const std::string& label) const {
    for (const auto& o : observers)
        if (o.label == label) return &o;
    return nullptr;
}

MetricsAccumulator::MetricsAccumulator(double t_end, double band) : t_end_(t_end), band_(band) {}

std::size_t MetricsAccumulator::add_channel(const std::string& label, const std::string& channel) {
    Channel c;
    c.m.label = label;
    c.m.channel = channel;
    channels_.push_back(c);
    return channels_.size() - 1;
}

std::size_t MetricsAccumulator::add_observer(const std::string& label) {
    held_.push_back({label, 0, 0});
    return held_.size() - 1;
}

void MetricsAccumulator::sample_error(std::size_t handle, double t, double e) {
    Channel& c = channels_[handle];
    const double a = std::abs(e);
    if (c.pending) {
        c.next_after_exceed = t;
        c.pending = false;
    }
    if (a > c.m.peak) c.m.peak = a;
    if (a > band_) {
        c.exceeded = true;
        c.last_exceed = t;
        c.pending = true;
    }
    if (t >= 0.8 * t_end_) {
        c.sq_sum += e * e;
        ++c.tail;
    }
    c.m.final_abs = a;
}

void MetricsAccumulator::sample_held(std::size_t handle, bool held) {
    ++held_[handle].total;
    if (held) ++held_[handle].held;
}

Metrics MetricsAccumulator::finish() const {
    Metrics m;
    m.band = band_;
    for (const auto& c : channels_) {
        ChannelMetrics out = c.m;
        out.rmse_final = c.tail ? std::sqrt(c.sq_sum / static_cast<double>(c.tail)) : 0.0;
        if (!c.exceeded) out.settling_time = 0.0;
        else if (c.pending) out.settling_time = std::numeric_limits<double>::infinity();
        else out.settling_time = c.next_after_exceed;
        m.channels.push_back(out);
    }
    for (const auto& h : held_)
        m.observers.push_back({h.label, h.total ? static_cast<double>(h.held) / static_cast<double>(h.total) : 0.0});
    return m;
}

std::string format_metrics(const Metrics& m) {
    std::string out;
    char buf[512];
    std::snprintf(buf, sizeof buf, "# band %.3e\n# observer channel rmse_final settling_time peak final_abs\n",
                  m.band);
    out += buf;
    for (const auto& c : m.channels) {
        std::snprintf(buf, sizeof buf, "%s %s %.6e %.6e %.6e %.6e\n", c.label.c_str(), c.channel.c_str(),
                      c.rmse_final, c.settling_time, c.peak, c.final_abs);
        out += buf;
    }
    out += "# observer held_fraction\n";
    for (const auto& o : m.observers) {
        std::snprintf(buf, sizeof buf, "%s %.6e\n", o.label.c_str(), o.held_fraction);
        out += buf;
    }
    return out;
}

}  // namespace aslo::sim
