#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "aslo/trace_io.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(ASLO_LAB_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes and outputs") {
    const fs::path dir = fs::temp_directory_path() / "aslo_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    CHECK(run("presets") == 0);
    CHECK(run("run --preset fig1a --t-end 1 --out " + (dir / "a").string()) == 0);
    CHECK(fs::exists(dir / "a" / "trace.csv"));
    CHECK(fs::exists(dir / "a" / "metrics.txt"));

    // resolved config reproduces the run
    CHECK(run("run " + (dir / "a" / "scenario.resolved").string() + " --out " + (dir / "b").string()) == 0);
    CHECK(aslo::io::read_file(dir / "a" / "trace.csv") == aslo::io::read_file(dir / "b" / "trace.csv"));

    CHECK(run("run --preset nope") == 1);
    aslo::io::write_file(dir / "bad.cfg", "plant.kind = \"double_integrator\"\nplant.bogus = 1\n");
    CHECK(run("run " + (dir / "bad.cfg").string() + " --out " + (dir / "c").string()) == 1);
    aslo::io::write_file(dir / "nan.cfg", "plant.kind = \"double_integrator\"\nplant.x0 = \"0, 0\"\n"
                                          "excitation.u = \"log(1 - t)\"\nintegration.dt = 1e-2\n"
                                          "integration.t_end = 2\nobserver.a.kind = \"di_aslo\"\n");
    CHECK(run("run " + (dir / "nan.cfg").string() + " --out " + (dir / "d").string()) == 2);

    CHECK(run("sweep --preset fig1a --t-end 1 --param observer.l1.lambda --values 1,2 --out " +
              (dir / "s").string()) == 0);
    CHECK(fs::exists(dir / "s" / "summary.txt"));
    CHECK(fs::exists(dir / "s" / "observer.l1.lambda=2" / "trace.csv"));
    fs::remove_all(dir);
}

}
