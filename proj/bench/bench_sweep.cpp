#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aslo/presets.hpp"
#include "aslo/sweep.hpp"

using namespace aslo;

namespace {

template <class F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel parameter sweep timing"};
    std::string preset = "fig-tau", param = "disturbance.tau";
    std::vector<std::string> values{"0.05", "0.1", "0.2", "0.3", "0.5", "0.7", "1", "2"};
    int threads = 0, repeats = 3;
    double t_end = 10.0;
    app.add_option("--preset", preset);
    app.add_option("--param", param);
    app.add_option("--values", values)->delimiter(',');
    app.add_option("--threads", threads, "0: ASLO_LAB_THREADS or the OpenMP default");
    app.add_option("--repeats", repeats)->check(CLI::PositiveNumber);
    app.add_option("--t-end", t_end)->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    const auto* p = presets::find(preset);
    if (!p) {
        std::fprintf(stderr, "unknown preset '%s'\n", preset.c_str());
        return 1;
    }
    auto base = config::ConfigFile::parse(p->config, p->name);
    base.set("integration.t_end", std::to_string(t_end));

    sweep::Options opt;
    opt.keep_trace = false;
    opt.threads = threads > 0 ? threads : sweep::default_threads();

    double best_serial = 1e300, best_parallel = 1e300;
    bool same = true;
    for (int r = 0; r < repeats; ++r) {
        std::vector<sweep::Point> s, q;
        best_serial = std::min(best_serial, seconds([&] { s = sweep::run_serial(base, param, values, opt); }));
        best_parallel = std::min(best_parallel, seconds([&] { q = sweep::run_parallel(base, param, values, opt); }));
        same = same && sweep::summary_table(param, s) == sweep::summary_table(param, q);
    }
    std::printf("preset %s, %zu points of %s, t_end %g, %d threads\n", preset.c_str(), values.size(), param.c_str(),
                t_end, opt.threads);
    std::printf("serial    %.3f s\nparallel  %.3f s\nspeedup   %.2f\nidentical %s\n", best_serial, best_parallel,
                best_serial / best_parallel, same ? "yes" : "no");
    return same ? 0 : 1;
}
