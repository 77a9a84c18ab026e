#pragma once

// Flat scenario configuration:
//
//     # comment
//     section.key = value
//
// Values are numbers (decimal or scientific) or strings; strings may be
// double-quoted and must be when they contain spaces, commas or '#'. Vectors
// are quoted comma-separated lists. Unknown keys are rejected.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aslo/scenario.hpp"

namespace aslo::config {

struct Entry {
    std::string key;
    std::string value;
    int line = 0;
};

class ConfigFile {
public:
    static ConfigFile parse(const std::string& text, const std::string& origin = "<string>");
    static ConfigFile load(const std::string& path);

    const std::vector<Entry>& entries() const { return entries_; }
    const std::string& origin() const { return origin_; }
    /// Later entries win; returns nullptr if absent.
    const Entry* find(const std::string& key) const;
    void set(const std::string& key, const std::string& value);

private:
    std::string origin_;
    std::vector<Entry> entries_;
};

struct ObserverSpec {
    std::string label;
    std::string kind;
    std::map<std::string, double> params;
};

/// Fully-resolved scenario description; every field has a value.
struct ScenarioSpec {
    std::string name = "scenario";

    std::string plant_kind;
    std::map<std::string, double> plant_params;
    std::vector<double> x0;

    std::string excitation_kind = "expression";
    std::map<std::string, std::string> excitation_exprs;  // per input name, or omega_ref
    std::map<std::string, double> controller;             // pmsm_pi gains
    std::string load_torque = "0";

    std::vector<ObserverSpec> observers;

    std::string disturbance_kind = "none";
    double delta = 0.0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    double tau = 0.0;

    double dt = 1e-4;
    double t_end = 1.0;
    std::size_t decimation = 100;
};

/// Throws ConfigError naming the key and line at fault.
ScenarioSpec spec_from_config(const ConfigFile& cfg);

/// Canonical text with every key written; numbers use %.17g.
std::string to_text(const ScenarioSpec& spec);

sim::Scenario build_scenario(const ScenarioSpec& spec);

/// Observer kinds understood by build_scenario, with the plant each needs.
std::vector<std::pair<std::string, std::string>> observer_kinds();

}  // namespace aslo::config
