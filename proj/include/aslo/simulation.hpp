#pragma once

// Fixed-step RK4 co-simulation of plant, excitation, parasitic input lag and
// all observers as one composite ODE. The composite state is laid out as
//
//     [ plant | excitation | parasitic | observer 1 | observer 2 | ... ]
//
// Noise is drawn once per step and held over the four stages.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "aslo/metrics.hpp"
#include "aslo/noise.hpp"
#include "aslo/scenario.hpp"

namespace aslo::sim {

/// Decimated samples, row-major.
struct Trace {
    std::vector<std::string> columns;
    std::vector<double> data;

    std::size_t rows() const { return columns.empty() ? 0 : data.size() / columns.size(); }
    std::size_t index(const std::string& column) const;  // throws std::out_of_range
    std::vector<double> column(const std::string& name) const;
    double at(std::size_t row, std::size_t col) const { return data[row * columns.size() + col]; }
};

class Simulation {
public:
    /// The scenario must outlive the simulation; its observers are reset here.
    explicit Simulation(Scenario& scenario);

    const Scenario& scenario() const { return sc_; }

    double time() const { return t_; }
    std::size_t step_index() const { return k_; }

    /// Advances one step of size dt. Throws NonFiniteSignal or SingularConfiguration.
    void step();

    std::span<const double> state() const { return z_; }
    std::span<const double> plant_state() const { return std::span(z_).first(n_plant_); }
    std::span<const double> observer_state(std::size_t i) const;
    const obs::Observer& observer(std::size_t i) const { return *sc_.observers[i].observer; }

    /// Signals the observers see at the current time.
    obs::Signals measured() const;
    /// Input actually applied to the plant at the current time.
    std::span<const double> plant_input() const { return u_plant_; }

    void estimate(std::size_t i, std::span<double> out) const;
    double delta(std::size_t i) const;

    std::vector<std::string> columns() const;
    void record(std::vector<double>& row) const;

    /// Index of each observer channel in the plant state.
    const std::vector<std::size_t>& truth_index(std::size_t i) const { return truth_[i]; }

private:
    void draw_noise();
    void refresh();
    void rhs(double t, std::span<const double> z, std::span<double> dz);
    void split(double t, std::span<const double> z);
    [[noreturn]] void non_finite(double t, std::span<const double> dz) const;

    Scenario& sc_;
    std::size_t n_plant_, n_ctrl_, n_para_, n_in_, n_out_;
    std::vector<std::size_t> obs_offset_;
    std::vector<std::vector<std::size_t>> truth_;
    std::vector<std::string> state_labels_;

    std::vector<double> z_;
    double t_ = 0.0;
    std::size_t k_ = 0;

    std::optional<noise::GaussianSource> noise_;
    std::vector<double> noise_sample_;

    // scratch for the current stage
    std::vector<double> v_, u_plant_, u_meas_, y_, y_meas_;
    std::vector<double> k1_, k2_, k3_, k4_, tmp_;
};

struct RunOptions {
    std::optional<std::size_t> decimation;  // default: scenario's
    bool keep_trace = true;
    std::function<void(const Simulation&)> on_sample;  // every step, including t = 0
};

struct RunResult {
    Trace trace;
    Metrics metrics;
    std::vector<std::string> warnings;
};

RunResult run(Scenario& scenario, const RunOptions& options = {});

}  // namespace aslo::sim
