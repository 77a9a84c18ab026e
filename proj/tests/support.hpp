#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "aslo/config.hpp"
#include "aslo/presets.hpp"
#include "aslo/simulation.hpp"
#include "aslo/trace_io.hpp"

namespace support {

using Overrides = std::map<std::string, std::string>;

inline std::string preset_text(const std::string& name) {
    const auto* p = aslo::presets::find(name);
    if (!p) throw std::runtime_error("no preset " + name);
    return p->config;
}

inline aslo::sim::Scenario scenario(const std::string& text, const Overrides& overrides = {}) {
    auto cfg = aslo::config::ConfigFile::parse(text);
    for (const auto& [k, v] : overrides) cfg.set(k, v);
    return aslo::config::build_scenario(aslo::config::spec_from_config(cfg));
}

inline aslo::sim::RunResult run(const std::string& text, const Overrides& overrides = {}, std::size_t decimation = 1,
                                std::function<void(const aslo::sim::Simulation&)> on_sample = {}) {
    auto sc = scenario(text, overrides);
    aslo::sim::RunOptions opt;
    opt.decimation = decimation;
    opt.on_sample = std::move(on_sample);
    return aslo::sim::run(sc, opt);
}

inline double max_abs_after(const aslo::sim::Trace& tr, const std::string& column, double t0) {
    const auto t = tr.column("t");
    const auto e = tr.column(column);
    double m = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k)
        if (t[k] >= t0) m = std::max(m, std::abs(e[k]));
    return m;
}

inline std::string csv(const aslo::sim::Trace& tr) {
    std::ostringstream os;
    aslo::io::write_csv(os, tr);
    return os.str();
}

}  // namespace support
