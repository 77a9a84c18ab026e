#include <doctest.h>

#include <string>

#include "aslo/config.hpp"
#include "aslo/errors.hpp"
#include "aslo/presets.hpp"

using namespace aslo;
using namespace aslo::config;

TEST_SUITE("config") {

TEST_CASE("grammar") {
    const auto c = ConfigFile::parse(R"(# header
plant.kind = "double_integrator"   # trailing
excitation.u = "a # b, c"
  integration.dt=1e-3
)");
    REQUIRE(c.entries().size() == 3);
    CHECK(c.find("plant.kind")->value == "double_integrator");
    CHECK(c.find("excitation.u")->value == "a # b, c");
    CHECK(c.find("integration.dt")->value == "1e-3");
    CHECK(c.find("integration.dt")->line == 4);
    CHECK(c.find("nope.key") == nullptr);
}

TEST_CASE("malformed lines") {
    CHECK_THROWS_AS(ConfigFile::parse("plant.kind"), ConfigError);
    CHECK_THROWS_AS(ConfigFile::parse("nodot = 1"), ConfigError);
    CHECK_THROWS_AS(ConfigFile::parse("a.b ="), ConfigError);
    CHECK_THROWS_AS(ConfigFile::parse("a.b = \"open"), ConfigError);
    CHECK_THROWS_AS(ConfigFile::parse("a.b = 1\na.b = 2"), ConfigError);
    try {
        ConfigFile::parse("a.b = 1\n\nbad line", "f.cfg");
        FAIL("no throw");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("f.cfg:3") == 0);
    }
}

TEST_CASE("set replaces or appends") {
    auto c = ConfigFile::parse("a.b = 1");
    c.set("a.b", "2");
    c.set("c.d", "3");
    CHECK(c.entries().size() == 2);
    CHECK(c.find("a.b")->value == "2");
    CHECK(c.find("c.d")->value == "3");
}

TEST_CASE("defaults and unknown keys") {
    const auto base = std::string("plant.kind = \"pmsm\"\nplant.x0 = \"0.2086, 0, 0, 0\"\nexcitation.u1 = \"1\"\n");
    const auto s = spec_from_config(ConfigFile::parse(base + "observer.o.kind = \"fo2\"\n"));
    CHECK(s.plant_params.at("R") == 8.875);
    CHECK(s.excitation_exprs.at("u2") == "0");
    CHECK(s.observers.at(0).params.at("gamma") == 1000);
    CHECK(s.disturbance_kind == "none");
    CHECK_THROWS_AS(spec_from_config(ConfigFile::parse(base + "plant.Rx = 1\n")), ConfigError);
    CHECK_THROWS_AS(spec_from_config(ConfigFile::parse(base + "observer.o.kind = \"fo2\"\nobserver.o.lambda = 2\n")),
                    ConfigError);
    CHECK_THROWS_AS(spec_from_config(ConfigFile::parse(base + "integration.dt = abc\n")), ConfigError);
    CHECK_THROWS_AS(spec_from_config(ConfigFile::parse("plant.x0 = \"0\"\n")), ConfigError);
}

TEST_CASE("every preset parses, builds and round-trips") {
    for (const auto& p : presets::all()) {
        INFO(p.name);
        const auto spec = spec_from_config(ConfigFile::parse(p.config, p.name));
        const auto text = to_text(spec);
        const auto again = to_text(spec_from_config(ConfigFile::parse(text)));
        CHECK(text == again);
        CHECK_NOTHROW(build_scenario(spec));
    }
    CHECK(presets::find("fig2") == presets::find("pmsm-fluxcompare"));
    CHECK(presets::find("nope") == nullptr);
}

TEST_CASE("observer kinds name their plant") {
    const auto kinds = observer_kinds();
    CHECK(kinds.size() == 19);
    for (const auto& [kind, plant] : kinds) CHECK_FALSE(plant.empty());
}

}
