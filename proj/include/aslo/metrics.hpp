#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace aslo::sim {

struct DecayFit {
    double rate = 0.0;  // -slope of ln|e| against t
    double r2 = 0.0;    // coefficient of determination of the log-linear fit
    std::size_t samples = 0;
    bool ok() const { return samples >= 2; }
};

/// Least-squares fit of ln|e| over t in [t0, t1]. Zero and non-finite samples are skipped.
DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> e, double t0, double t1);

struct ChannelMetrics {
    std::string label;    // observer label
    std::string channel;  // estimated state
    double rmse_final = 0.0;     // over t >= 0.8 t_end
    double settling_time = 0.0;  // first t after which |e| stays within the band
    double peak = 0.0;
    double final_abs = 0.0;
};

struct ObserverMetrics {
    std::string label;
    double held_fraction = 0.0;
};

struct Metrics {
    double band = 1e-3;
    std::vector<ChannelMetrics> channels;
    std::vector<ObserverMetrics> observers;

    const ChannelMetrics* find(const std::string& label, const std::string& channel) const;
    const ObserverMetrics* find(const std::string& label) const;
};

/// Streaming accumulator fed once per sample.
class MetricsAccumulator {
public:
    MetricsAccumulator(double t_end, double band = 1e-3);

    /// Registers an error channel; returns its handle.
    std::size_t add_channel(const std::string& label, const std::string& channel);
    std::size_t add_observer(const std::string& label);

    void sample_error(std::size_t handle, double t, double e);
    void sample_held(std::size_t handle, bool held);

    Metrics finish() const;

private:
    struct Channel {
        ChannelMetrics m;
        double sq_sum = 0.0;
        std::size_t tail = 0;
        bool exceeded = false;
        double last_exceed = 0.0;
        double next_after_exceed = 0.0;
        bool pending = false;
    };
    struct Held {
        std::string label;
        std::size_t held = 0, total = 0;
    };
    double t_end_, band_;
    std::vector<Channel> channels_;
    std::vector<Held> held_;
};

std::string format_metrics(const Metrics& m);

}  // namespace aslo::sim
