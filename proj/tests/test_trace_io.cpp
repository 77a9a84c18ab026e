#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "aslo/trace_io.hpp"

using namespace aslo;

TEST_SUITE("trace_io") {

TEST_CASE("CSV layout") {
    sim::Trace t;
    t.columns = {"t", "x1", "a.err.x2"};
    t.data = {0.0, 1.0, -2.5, 0.1, 1e-300, 3.0};
    std::ostringstream os;
    io::write_csv(os, t);
    CHECK(os.str() ==
          "t,x1,a.err.x2\n"
          "0.000000000000e+00,1.000000000000e+00,-2.500000000000e+00\n"
          "1.000000000000e-01,1.000000000000e-300,3.000000000000e+00\n");
}

TEST_CASE("run directory round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "aslo_trace_io_test";
    std::filesystem::remove_all(dir);
    sim::RunResult r;
    r.trace.columns = {"t", "x"};
    r.trace.data = {0.0, 0.125, 0.5, -3.0};
    io::write_run(dir, "plant.kind = \"double_integrator\"\n", r);
    const auto back = io::read_csv(dir / "trace.csv");
    CHECK(back.columns == r.trace.columns);
    CHECK(back.data == r.trace.data);
    CHECK(io::read_file(dir / "scenario.resolved") == "plant.kind = \"double_integrator\"\n");
    CHECK(std::filesystem::exists(dir / "metrics.txt"));

    io::write_file(dir / "bad.csv", "a,b\n1,2,3\n");
    CHECK_THROWS(io::read_csv(dir / "bad.csv"));
    CHECK_THROWS(io::read_csv(dir / "missing.csv"));
    std::filesystem::remove_all(dir);
}

}
