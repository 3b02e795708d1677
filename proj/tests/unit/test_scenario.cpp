#include "fixtures.hpp"
#include "rescon/error.hpp"
#include "rescon/scenario.hpp"
#include "rescon/scenario_json.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <variant>

using namespace rescon;
using nlohmann::json;

namespace {

std::vector<Violation> violations_of(const std::string& text) {
    try {
        parse_and_validate(text);
    } catch (const ValidationError& e) {
        return e.violations();
    }
    return {};
}

bool has_path(const std::vector<Violation>& v, const std::string& path) {
    for (const auto& x : v)
        if (x.path == path) return true;
    return false;
}

json builtin_json() { return json::parse(dump_scenario(builtin_four_agent())); }

}  // namespace

TEST_CASE("built-in scenario validates") {
    const Scenario sc = builtin_four_agent();
    CHECK(check_scenario(sc).empty());
    CHECK(sc.size() == 4);
    CHECK(is_strongly_connected(sc.topology));
    CHECK(sc.omega_bound() == doctest::Approx(0.25));
    CHECK(sc.agents[2].model.g2.value(0.0) == -1.0);
    CHECK(sc.attack.rho_s[1].value(0.0) == -1.0);
    CHECK(sc.agents[0].controller.nussbaum == slow_growth_nussbaum());
    CHECK(load_scenario("builtin:four-agent") == sc);
}

TEST_CASE("Nussbaum presets") {
    const NussbaumSpec slow = slow_growth_nussbaum();
    CHECK(slow.a == 0.9);
    CHECK(slow.b == 0.001);
    CHECK(slow.c == 0.7);
    CHECK(slow.omega == 0.4);
    const NussbaumSpec classic = classic_nussbaum();
    CHECK(eval(classic, 2.0) == doctest::Approx(std::exp(4.0) * std::cos(0.8)));
    CHECK(parse_nussbaum(dump_nussbaum(classic)) == classic);
}

TEST_CASE("canonical round trip") {
    for (const Scenario& sc : {builtin_four_agent(), fixture::gentle_pair()}) {
        const std::string text = dump_scenario(sc);
        const Scenario back = parse_scenario(text);
        CHECK(back == sc);
        CHECK(dump_scenario(back) == text);
        CHECK(scenario_hash(back) == scenario_hash(sc));
    }
    Scenario other = builtin_four_agent();
    other.agents[1].controller.epsilon = 0.2;
    CHECK(scenario_hash(other) != scenario_hash(builtin_four_agent()));
}

TEST_CASE("signal shorthand and defaults") {
    json doc = builtin_json();
    doc["agents"][0]["g1"] = 1.5;
    const Scenario sc = parse_scenario(doc.dump());
    CHECK(sc.agents[0].model.g1 == ScalarSignal::constant(1.5));
}

TEST_CASE("out-of-range exponent is a validation error") {
    json doc = builtin_json();
    doc["reference"]["alpha"] = 1.2;
    const auto v = violations_of(doc.dump());
    REQUIRE_FALSE(v.empty());
    CHECK(has_path(v, "/reference/alpha"));
    CHECK_THROWS_AS(parse_and_validate(doc.dump()), ValidationError);
}

TEST_CASE("chain topology is rejected") {
    json doc = builtin_json();
    doc["topology"]["edges"] = json::array({json::array({1, 2}), json::array({2, 3}), json::array({3, 4})});
    const auto v = violations_of(doc.dump());
    REQUIRE(v.size() == 1);
    CHECK(v[0].path == "/topology/edges");
    CHECK(v[0].rule == "strong-connectivity");
}

TEST_CASE("every violation names a field and a rule") {
    json doc = builtin_json();
    doc["reference"]["k"] = -1.0;
    doc["integration"]["dt"] = 0.0;
    doc["agents"][0]["controller"]["varsigma"] = 1.5;
    doc["agents"][1]["controller"]["nussbaum"]["c"] = 1.3;
    doc["agents"][2]["initial"]["L"] = 0.5;
    doc["agents"][3]["theta1"] = json::array({1.0, 2.0});
    doc["attack"]["bounds"]["rho_o"] = json::array({0.9, 1.2});
    const auto v = violations_of(doc.dump());
    CHECK(v.size() >= 6);
    for (const auto& x : v) {
        CHECK_FALSE(x.path.empty());
        CHECK_FALSE(x.rule.empty());
        CHECK_FALSE(x.message.empty());
    }
    CHECK(has_path(v, "/reference/k"));
    CHECK(has_path(v, "/integration/dt"));
    CHECK(has_path(v, "/agents/0/controller/varsigma"));
    CHECK(has_path(v, "/agents/1/controller/nussbaum/c"));
    CHECK(has_path(v, "/agents/2/initial/L"));
    CHECK(has_path(v, "/agents/3/theta1"));
}

TEST_CASE("assumption failures surface as violations") {
    json doc = builtin_json();
    doc["attack"]["bounds"]["rho_o"] = json::array({0.9, 1.2});
    const auto v = violations_of(doc.dump());
    REQUIRE(v.size() == 1);
    CHECK(v[0].path == "/attack/rho_o");
    CHECK(v[0].rule == "attack-bounds");
    Scenario sc = parse_scenario(doc.dump());
    CHECK(check_scenario(sc, false).empty());
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_scenario("{ not json"), ParseError);
    json doc = builtin_json();
    doc["agents"][0]["controller"]["bogus"] = 1;
    try {
        parse_scenario(doc.dump());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("/agents/0/controller/bogus") != std::string::npos);
    }
    json missing = builtin_json();
    missing["reference"].erase("k");
    CHECK_THROWS_AS(parse_scenario(missing.dump()), ParseError);
    json bad_kind = builtin_json();
    bad_kind["agents"][0]["psi1"][0]["kind"] = "cubic";
    CHECK_THROWS_AS(parse_scenario(bad_kind.dump()), ParseError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ParseError);
}

TEST_CASE("verify requests") {
    const VerifyRequest bare = parse_verify_request(dump_nussbaum(classic_nussbaum()));
    REQUIRE(std::holds_alternative<NussbaumSpec>(bare.candidate));
    CHECK(std::get<NussbaumSpec>(bare.candidate) == classic_nussbaum());
    CHECK(bare.max_index == 12);

    const VerifyRequest wrapped = parse_verify_request(R"({"spec": {"a": 0.9, "b": 0.001, "c": 0.7, "omega": 0.4,
        "variant": "cosine"}, "max_index": 20})");
    CHECK(std::get<NussbaumSpec>(wrapped.candidate) == slow_growth_nussbaum());
    CHECK(wrapped.max_index == 20);

    const VerifyRequest raw = parse_verify_request(R"({"raw": {"power": 2, "omega": 1, "variant": "sine"}})");
    REQUIRE(std::holds_alternative<RawFunction>(raw.candidate));
    const RawFunction& fn = std::get<RawFunction>(raw.candidate);
    CHECK(fn.fn(2.0) == doctest::Approx(4.0 * std::sin(2.0)));
    CHECK_THROWS_AS(parse_verify_request(R"({"raw": {"power": 2}, "extra": 1})"), ParseError);
}
