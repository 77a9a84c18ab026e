#pragma once

// Parameter sweeps over a base configuration. Each point rebuilds its own
// scenario from text, so workers share nothing mutable.

#include <string>
#include <vector>

#include "aslo/config.hpp"
#include "aslo/simulation.hpp"

namespace aslo::sweep {

struct Point {
    std::string value;
    std::string resolved;  // canonical config text, empty on config error
    sim::RunResult result;
    int status = 0;  // 0 ok, 1 config error, 2 simulation abort
    std::string error;
};

struct Options {
    bool keep_trace = true;
    int threads = 0;  // 0: ASLO_LAB_THREADS, else the OpenMP default
};

/// Worker count from ASLO_LAB_THREADS, falling back to the OpenMP default.
int default_threads();

Point run_point(const config::ConfigFile& base, const std::string& key, const std::string& value, bool keep_trace);

std::vector<Point> run_serial(const config::ConfigFile& base, const std::string& key,
                              const std::vector<std::string>& values, const Options& options = {});
std::vector<Point> run_parallel(const config::ConfigFile& base, const std::string& key,
                                const std::vector<std::string>& values, const Options& options = {});

/// One line per (value, observer, channel) with the run metrics.
std::string summary_table(const std::string& key, const std::vector<Point>& points);

}  // namespace aslo::sweep
