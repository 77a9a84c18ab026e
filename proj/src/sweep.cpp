#include "aslo/sweep.hpp"

#include <omp.h>

#include <cstdio>
#include <cstdlib>

#include "aslo/errors.hpp"

namespace aslo::sweep {

int default_threads() {
    if (const char* env = std::getenv("ASLO_LAB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return omp_get_max_threads();
}

Point run_point(const config::ConfigFile& base, const std::string& key, const std::string& value, bool keep_trace) {
    Point p;
    p.value = value;
    try {
        config::ConfigFile cfg = base;
        cfg.set(key, value);
        const auto spec = config::spec_from_config(cfg);
        p.resolved = config::to_text(spec);
        auto scenario = config::build_scenario(spec);
        sim::RunOptions opt;
        opt.keep_trace = keep_trace;
        p.result = sim::run(scenario, opt);
    } catch (const ConfigError& e) {
        p.status = 1;
        p.error = e.what();
    } catch (const std::exception& e) {
        p.status = 2;
        p.error = e.what();
    }
    return p;
}

std::vector<Point> run_serial(const config::ConfigFile& base, const std::string& key,
                              const std::vector<std::string>& values, const Options& options) {
    std::vector<Point> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(run_point(base, key, v, options.keep_trace));
    return out;
}

std::vector<Point> run_parallel(const config::ConfigFile& base, const std::string& key,
                                const std::vector<std::string>& values, const Options& options) {
    std::vector<Point> out(values.size());
    const int threads = options.threads > 0 ? options.threads : default_threads();
    const auto n = static_cast<long>(values.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = run_point(base, key, values[static_cast<std::size_t>(i)], options.keep_trace);
    return out;
}

std::string summary_table(const std::string& key, const std::vector<Point>& points) {
    std::string out = "# " + key + " observer channel rmse_final settling_time peak final_abs held_fraction\n";
    char buf[512];
    for (const auto& p : points) {
        if (p.status != 0) {
            out += p.value + " error " + std::to_string(p.status) + " " + p.error + "\n";
            continue;
        }
        for (const auto& c : p.result.metrics.channels) {
            const auto* o = p.result.metrics.find(c.label);
            std::snprintf(buf, sizeof buf, "%s %s %s %.6e %.6e %.6e %.6e %.6e\n", p.value.c_str(), c.label.c_str(),
                          c.channel.c_str(), c.rmse_final, c.settling_time, c.peak, c.final_abs,
                          o ? o->held_fraction : 0.0);
            out += buf;
        }
    }
    return out;
}

}  // namespace aslo::sweep
