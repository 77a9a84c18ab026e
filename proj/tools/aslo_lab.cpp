#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "aslo/config.hpp"
#include "aslo/errors.hpp"
#include "aslo/presets.hpp"
#include "aslo/sweep.hpp"
#include "aslo/trace_io.hpp"

namespace fs = std::filesystem;
using namespace aslo;

namespace {

struct Source {
    std::string config_path;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::optional<double> dt, t_end;
    bool full_rate = false;
    std::string out;
};

void add_source_options(CLI::App* cmd, Source& s) {
    cmd->add_option("config", s.config_path, "scenario config file");
    cmd->add_option("--preset", s.preset, "named preset (see `presets`)");
    cmd->add_option("--seed", s.seed, "noise seed (64-bit unsigned)");
    cmd->add_option("--dt", s.dt, "integration step override")->check(CLI::PositiveNumber);
    cmd->add_option("--t-end", s.t_end, "final time override")->check(CLI::PositiveNumber);
    cmd->add_flag("--full-rate", s.full_rate, "record every step");
    cmd->add_option("--out", s.out, "output directory");
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

config::ConfigFile load_source(const Source& s) {
    if (s.preset.empty() == s.config_path.empty()) throw ConfigError("give exactly one of a config path or --preset");
    config::ConfigFile cfg;
    if (!s.preset.empty()) {
        const auto* p = presets::find(s.preset);
        if (!p) throw ConfigError("unknown preset '" + s.preset + "'");
        cfg = config::ConfigFile::parse(p->config, "preset:" + p->name);
    } else {
        cfg = config::ConfigFile::load(s.config_path);
    }
    if (s.seed) cfg.set("disturbance.seed", std::to_string(*s.seed));
    if (s.dt) cfg.set("integration.dt", fmt(*s.dt));
    if (s.t_end) cfg.set("integration.t_end", fmt(*s.t_end));
    if (s.full_rate) cfg.set("output.decimation", "1");
    return cfg;
}

std::string default_out(const Source& s, const config::ScenarioSpec& spec) {
    if (!s.out.empty()) return s.out;
    return "out/" + spec.name;
}

int cmd_run(const Source& s) {
    config::ConfigFile cfg;
    config::ScenarioSpec spec;
    sim::Scenario scenario;
    try {
        cfg = load_source(s);
        spec = config::spec_from_config(cfg);
        scenario = config::build_scenario(spec);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    sim::RunResult result;
    try {
        result = sim::run(scenario);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "simulation aborted: " << e.what() << "\n";
        return 2;
    }
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    const fs::path dir = default_out(s, spec);
    io::write_run(dir, config::to_text(spec), result);
    std::cout << sim::format_metrics(result.metrics);
    std::cout << "wrote " << (dir / "trace.csv").string() << " (" << result.trace.rows() << " rows)\n";
    return 0;
}

std::vector<std::string> split_values(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(' ');
        const auto e = item.find_last_not_of(' ');
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

int cmd_sweep(const Source& s, const std::string& param, const std::string& values_text, bool serial) {
    config::ConfigFile cfg;
    config::ScenarioSpec base;
    try {
        cfg = load_source(s);
        base = config::spec_from_config(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }
    const auto values = split_values(values_text);
    if (values.empty()) {
        std::cerr << "config error: --values is empty\n";
        return 1;
    }
    const auto points = serial ? sweep::run_serial(cfg, param, values) : sweep::run_parallel(cfg, param, values);
    const fs::path root = default_out(s, base);
    int status = 0;
    for (const auto& p : points) {
        if (p.status != 0) {
            std::cerr << param << "=" << p.value << ": " << (p.status == 1 ? "config error: " : "simulation aborted: ")
                      << p.error << "\n";
            status = std::max(status, p.status);
            continue;
        }
        io::write_run(root / (param + "=" + p.value), p.resolved, p.result);
    }
    const std::string table = sweep::summary_table(param, points);
    fs::create_directories(root);
    io::write_file(root / "summary.txt", table);
    std::cout << table;
    return status;
}

int cmd_presets() {
    for (const auto& p : presets::all()) std::printf("%-18s %s\n", p.name.c_str(), p.description.c_str());
    std::printf("%-18s %s\n", "fig2", "alias of pmsm-fluxcompare");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Swapping-lemma observer lab"};
    app.require_subcommand(1);

    Source run_src, sweep_src;
    auto* run = app.add_subcommand("run", "run one scenario and write trace.csv, metrics.txt, scenario.resolved");
    add_source_options(run, run_src);

    std::string param, values;
    bool serial = false;
    auto* sw = app.add_subcommand("sweep", "run a scenario once per value of one config key");
    add_source_options(sw, sweep_src);
    sw->add_option("--param", param, "config key to vary, e.g. observer.aslo.lambda")->required();
    sw->add_option("--values", values, "comma-separated values")->required();
    sw->add_flag("--serial", serial, "run points one after another");

    auto* list = app.add_subcommand("presets", "list named presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }
    try {
        if (*run) return cmd_run(run_src);
        if (*sw) return cmd_sweep(sweep_src, param, values, serial);
        if (*list) return cmd_presets();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
