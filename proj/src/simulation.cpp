#include "aslo/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aslo/errors.hpp"

namespace aslo::sim {

std::size_t Trace::index(const std::string& column) const {
    auto it = std::find(columns.begin(), columns.end(), column);
    if (it == columns.end()) throw std::out_of_range("trace has no column '" + column + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> Trace::column(const std::string& name) const {
    const std::size_t c = index(name);
    std::vector<double> out(rows());
    for (std::size_t r = 0; r < out.size(); ++r) out[r] = at(r, c);
    return out;
}

Simulation::Simulation(Scenario& scenario) : sc_(scenario) {
    const auto& plant = *sc_.plant;
    n_plant_ = plant.state_size();
    n_in_ = plant.input_size();
    n_out_ = plant.output_size();
    n_ctrl_ = sc_.excitation->state_size();
    n_para_ = sc_.disturbance.kind == DisturbanceKind::parasitic ? n_in_ : 0;

    state_labels_ = plant.state_names();
    for (std::size_t k = 0; k < n_ctrl_; ++k) state_labels_.push_back("controller[" + std::to_string(k) + "]");
    for (std::size_t k = 0; k < n_para_; ++k) state_labels_.push_back("parasitic[" + std::to_string(k) + "]");

    const auto names = plant.state_names();
    std::size_t offset = n_plant_ + n_ctrl_ + n_para_;
    for (const auto& slot : sc_.observers) {
        obs_offset_.push_back(offset);
        const std::size_t m = slot.observer->state_size();
        for (std::size_t k = 0; k < m; ++k) state_labels_.push_back(slot.label + "[" + std::to_string(k) + "]");
        offset += m;
        std::vector<std::size_t> idx;
        for (const auto& ch : slot.observer->channels()) {
            auto it = std::find(names.begin(), names.end(), ch);
            if (it == names.end()) throw ConfigError("observer '" + slot.label + "' estimates unknown state '" + ch + "'");
            idx.push_back(static_cast<std::size_t>(it - names.begin()));
        }
        truth_.push_back(std::move(idx));
    }

    z_.assign(offset, 0.0);
    std::copy(sc_.x0.begin(), sc_.x0.end(), z_.begin());
    sc_.excitation->init(std::span(z_).subspan(n_plant_, n_ctrl_));

    v_.assign(n_in_, 0.0);
    u_plant_.assign(n_in_, 0.0);
    u_meas_.assign(n_in_, 0.0);
    y_.assign(n_out_, 0.0);
    y_meas_.assign(n_out_, 0.0);
    noise_sample_.assign(n_in_, 0.0);
    k1_.assign(offset, 0.0);
    k2_ = k3_ = k4_ = tmp_ = k1_;

    if (sc_.disturbance.kind == DisturbanceKind::input_noise)
        noise_.emplace(sc_.disturbance.seed, sc_.disturbance.sigma);

    draw_noise();
    refresh();
    const obs::Signals sig = measured();
    for (std::size_t i = 0; i < sc_.observers.size(); ++i) {
        auto& o = *sc_.observers[i].observer;
        o.init(std::span(z_).subspan(obs_offset_[i], o.state_size()), sig);
    }
}

std::span<const double> Simulation::observer_state(std::size_t i) const {
    return std::span(z_).subspan(obs_offset_[i], sc_.observers[i].observer->state_size());
}

void Simulation::draw_noise() {
    if (!noise_) return;
    for (auto& n : noise_sample_) n = noise_->sample();
}

void Simulation::split(double t, std::span<const double> z) {
    const auto x = z.first(n_plant_);
    const auto ctrl = z.subspan(n_plant_, n_ctrl_);
    sc_.excitation->command(t, x, ctrl, v_);
    const Disturbance& d = sc_.disturbance;
    for (std::size_t k = 0; k < n_in_; ++k) {
        switch (d.kind) {
            case DisturbanceKind::parasitic: u_plant_[k] = z[n_plant_ + n_ctrl_ + k]; break;
            case DisturbanceKind::input_const: u_plant_[k] = v_[k] + d.delta; break;
            default: u_plant_[k] = v_[k]; break;
        }
        u_meas_[k] = v_[k] + noise_sample_[k];
    }
    sc_.plant->output(x, y_);
    for (std::size_t k = 0; k < n_out_; ++k)
        y_meas_[k] = y_[k] + (d.kind == DisturbanceKind::output_const ? d.delta : 0.0);
}

void Simulation::refresh() { split(t_, z_); }

obs::Signals Simulation::measured() const { return {t_, u_meas_, y_meas_}; }

void Simulation::non_finite(double t, std::span<const double> dz) const {
    for (std::size_t k = 0; k < dz.size(); ++k)
        if (!std::isfinite(dz[k])) throw NonFiniteSignal("d/dt " + state_labels_[k], t);
    throw NonFiniteSignal("state", t);
}

void Simulation::rhs(double t, std::span<const double> z, std::span<double> dz) {
    split(t, z);
    const auto x = z.first(n_plant_);
    const double load = sc_.load_torque.empty() ? 0.0 : sc_.load_torque.eval(std::span<const double>(&t, 1));
    sc_.plant->dynamics(x, u_plant_, dz.first(n_plant_), load);
    sc_.excitation->derivative(t, x, z.subspan(n_plant_, n_ctrl_), dz.subspan(n_plant_, n_ctrl_));
    for (std::size_t k = 0; k < n_para_; ++k) {
        const std::size_t at = n_plant_ + n_ctrl_ + k;
        dz[at] = (v_[k] - z[at]) / sc_.disturbance.tau;
    }
    const obs::Signals sig{t, u_meas_, y_meas_};
    for (std::size_t i = 0; i < sc_.observers.size(); ++i) {
        const auto& o = *sc_.observers[i].observer;
        const std::size_t m = o.state_size();
        try {
            o.derivative(z.subspan(obs_offset_[i], m), sig, dz.subspan(obs_offset_[i], m));
        } catch (const NonFiniteSignal& e) {
            throw NonFiniteSignal(sc_.observers[i].label + ": " + e.signal(), t);
        }
    }
    for (double d : dz)
        if (!std::isfinite(d)) non_finite(t, dz);
}

void Simulation::step() {
    const double h = sc_.dt;
    const double t = t_;
    const std::size_t n = z_.size();
    rhs(t, z_, k1_);
    for (std::size_t k = 0; k < n; ++k) tmp_[k] = z_[k] + 0.5 * h * k1_[k];
    rhs(t + 0.5 * h, tmp_, k2_);
    for (std::size_t k = 0; k < n; ++k) tmp_[k] = z_[k] + 0.5 * h * k2_[k];
    rhs(t + 0.5 * h, tmp_, k3_);
    for (std::size_t k = 0; k < n; ++k) tmp_[k] = z_[k] + h * k3_[k];
    rhs(t + h, tmp_, k4_);
    for (std::size_t k = 0; k < n; ++k) z_[k] += h / 6.0 * (k1_[k] + 2.0 * k2_[k] + 2.0 * k3_[k] + k4_[k]);

    ++k_;
    t_ = static_cast<double>(k_) * h;
    draw_noise();
    refresh();
    const obs::Signals sig = measured();
    for (std::size_t i = 0; i < sc_.observers.size(); ++i) {
        auto& o = *sc_.observers[i].observer;
        o.commit(std::span(z_).subspan(obs_offset_[i], o.state_size()), sig);
    }
}

void Simulation::estimate(std::size_t i, std::span<double> out) const {
    sc_.observers[i].observer->estimate(observer_state(i), measured(), out);
}

double Simulation::delta(std::size_t i) const { return sc_.observers[i].observer->delta(observer_state(i), measured()); }

std::vector<std::string> Simulation::columns() const {
    const auto& plant = *sc_.plant;
    std::vector<std::string> cols{"t"};
    for (const auto& n : plant.state_names()) cols.push_back(n);
    for (const auto& n : plant.input_names()) cols.push_back("meas." + n);
    for (const auto& n : plant.output_names()) cols.push_back("meas." + n);
    for (const auto& slot : sc_.observers) {
        const auto chans = slot.observer->channels();
        for (const auto& c : chans) cols.push_back(slot.label + "." + c);
        for (const auto& c : chans) cols.push_back(slot.label + ".err." + c);
        if (slot.observer->has_delta()) cols.push_back(slot.label + ".delta");
        cols.push_back(slot.label + ".held");
    }
    return cols;
}

void Simulation::record(std::vector<double>& row) const {
    row.clear();
    row.push_back(t_);
    const auto x = plant_state();
    row.insert(row.end(), x.begin(), x.end());
    row.insert(row.end(), u_meas_.begin(), u_meas_.end());
    row.insert(row.end(), y_meas_.begin(), y_meas_.end());
    std::vector<double> est;
    for (std::size_t i = 0; i < sc_.observers.size(); ++i) {
        const auto& o = *sc_.observers[i].observer;
        est.assign(truth_[i].size(), 0.0);
        estimate(i, est);
        row.insert(row.end(), est.begin(), est.end());
        for (std::size_t c = 0; c < est.size(); ++c) row.push_back(est[c] - x[truth_[i][c]]);
        if (o.has_delta()) row.push_back(delta(i));
        row.push_back(o.held() ? 1.0 : 0.0);
    }
}

RunResult run(Scenario& scenario, const RunOptions& options) {
    RunResult result;
    result.warnings = scenario.validate();
    Simulation sim(scenario);
    const std::size_t decimation = options.decimation.value_or(scenario.decimation);
    if (decimation == 0) throw ConfigError("decimation must be at least 1");

    MetricsAccumulator acc(scenario.t_end);
    std::vector<std::vector<std::size_t>> handles;
    std::vector<std::size_t> held_handles;
    for (const auto& slot : scenario.observers) {
        std::vector<std::size_t> h;
        for (const auto& c : slot.observer->channels()) h.push_back(acc.add_channel(slot.label, c));
        handles.push_back(std::move(h));
        held_handles.push_back(acc.add_observer(slot.label));
    }

    if (options.keep_trace) result.trace.columns = sim.columns();
    std::vector<double> row, est;
    const std::size_t steps = scenario.steps();
    for (std::size_t k = 0;; ++k) {
        const auto x = sim.plant_state();
        for (std::size_t i = 0; i < scenario.observers.size(); ++i) {
            const auto& idx = sim.truth_index(i);
            est.assign(idx.size(), 0.0);
            sim.estimate(i, est);
            for (std::size_t c = 0; c < idx.size(); ++c) acc.sample_error(handles[i][c], sim.time(), est[c] - x[idx[c]]);
            acc.sample_held(held_handles[i], sim.observer(i).held());
        }
        if (options.on_sample) options.on_sample(sim);
        if (options.keep_trace && (k % decimation == 0 || k == steps)) {
            sim.record(row);
            result.trace.data.insert(result.trace.data.end(), row.begin(), row.end());
        }
        if (k == steps) break;
        sim.step();
    }
    result.metrics = acc.finish();
    return result;
}

}  // namespace aslo::sim
