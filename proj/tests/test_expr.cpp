#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "aslo/errors.hpp"
#include "aslo/expr.hpp"

using aslo::expr::Expression;

namespace {

double ev(const std::string& text, std::vector<double> vals = {}, std::vector<std::string> names = {}) {
    return Expression::compile(text, names).eval(vals);
}

}  // namespace

TEST_SUITE("expr") {

TEST_CASE("precedence and associativity") {
    CHECK(ev("1 + 2*3") == 7);
    CHECK(ev("(1 + 2)*3") == 9);
    CHECK(ev("8 - 3 - 2") == 3);
    CHECK(ev("8 / 4 / 2") == 1);
    CHECK(ev("2^3^2") == 512);
    CHECK(ev("-2^2") == -4);
    CHECK(ev("2^-1") == 0.5);
    CHECK(ev("--3") == 3);
    CHECK(ev("1.5e-3*2e3") == doctest::Approx(3.0));
}

TEST_CASE("variables and functions") {
    const std::vector<std::string> names{"t", "q1"};
    CHECK(ev("sin(t) + q1", {0.5, 2.0}, names) == doctest::Approx(std::sin(0.5) + 2.0));
    CHECK(ev("atan2(q1, t)", {1.0, 1.0}, names) == doctest::Approx(std::numbers::pi / 4));
    CHECK(ev("max(t, q1) - min(t, q1)", {3.0, -1.0}, names) == 4);
    CHECK(ev("pi") == doctest::Approx(std::numbers::pi));
    CHECK(ev("sign(-3) + abs(-2) + sqrt(9) + exp(0) + log(1)") == doctest::Approx(5));
    CHECK(ev("pow(2, 10)") == 1024);
}

TEST_CASE("errors name the position") {
    CHECK_THROWS_AS(ev("1 +"), aslo::ConfigError);
    CHECK_THROWS_AS(ev("foo"), aslo::ConfigError);
    CHECK_THROWS_AS(ev("sin(1, 2)"), aslo::ConfigError);
    CHECK_THROWS_AS(ev("(1"), aslo::ConfigError);
    CHECK_THROWS_AS(ev("1 2"), aslo::ConfigError);
    try {
        ev("1 + * 2");
        FAIL("no throw");
    } catch (const aslo::ConfigError& e) {
        CHECK(std::string(e.what()).find("offset 4") != std::string::npos);
    }
}

TEST_CASE("empty expression") {
    const Expression e;
    CHECK(e.empty());
    CHECK_FALSE(Expression::compile("0", {}).empty());
}

}
