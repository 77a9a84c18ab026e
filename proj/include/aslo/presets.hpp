#pragma once

#include <string>
#include <vector>

namespace aslo::presets {

struct Preset {
    std::string name;
    std::string description;
    std::string config;  // flat key-value text
};

const std::vector<Preset>& all();

/// nullptr if unknown; "fig2" resolves to pmsm-fluxcompare.
const Preset* find(const std::string& name);

}  // namespace aslo::presets
