#include "indban/catalog.hpp"
#include "indban/error.hpp"
#include "indban/scenario.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace indban;
namespace fs = std::filesystem;

namespace {

std::string scenario(const std::string& file) { return std::string(INDBAN_SCENARIO_DIR) + "/" + file; }

std::string write_temp(const std::string& name, const std::string& text) {
    fs::path p = fs::temp_directory_path() / ("indban_test_" + name + ".toml");
    std::ofstream(p) << text;
    return p.string();
}

ErrorKind load_error(const std::string& text, std::string* message = nullptr) {
    try {
        load_scenario(write_temp("err", text));
    } catch (const Error& e) {
        if (message) *message = e.what();
        return e.kind();
    }
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST_CASE("bundled group scenario passes") {
    Report r = run_scenario(load_scenario(scenario("group_z2.toml")));
    CHECK(r.ok());
    CHECK(r.count("fail") == 0);
    CHECK(r.count("error") == 0);
    CHECK(std::is_sorted(r.checks.begin(), r.checks.end(), [](const auto& a, const auto& b) { return a.name < b.name; }));
}

TEST_CASE("fault scenarios fail with witnesses") {
    Report r = run_scenario(load_scenario(scenario("fault_coassociativity.toml")));
    CHECK_FALSE(r.ok());
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].status == "fail");
    CHECK(r.checks[0].witness.find("coassociativity at (t^1) -> (") == 0);
    CHECK_FALSE(run_scenario(load_scenario(scenario("fault_counit.toml"))).ok());
    CHECK_FALSE(run_scenario(load_scenario(scenario("fault_comodule.toml"))).ok());
}

TEST_CASE("reports are deterministic") {
    Scenario s = load_scenario(scenario("contracting_products.toml"));
    std::string a = report_json(run_scenario(s)).dump();
    std::string b = report_json(run_scenario(s)).dump();
    CHECK(a == b);
    RunOptions o;
    o.seed = 12345;
    Report r = run_scenario(s, o);
    CHECK(r.seed == 12345);
    CHECK(report_json(r).dump() != a);
    CHECK(report_json(r, false).dump().find("timing_ms") == std::string::npos);
    CHECK(report_json(r, true).dump().find("timing_ms") != std::string::npos);
}

TEST_CASE("parse errors carry line and column") {
    std::string msg;
    CHECK(load_error("name = \"x\"\n[spaces\n", &msg) == ErrorKind::ParseError);
    CHECK(msg.find(":2:") != std::string::npos);
    CHECK(load_error("[spaces]\nk = { weights = [\"-1\"] }\n", &msg) == ErrorKind::ParseError);
    CHECK(msg.find(":2:") != std::string::npos);
    CHECK(load_error("[[checks]]\nname = \"a\"\nkind = \"opnorm\"\n", &msg) == ErrorKind::ParseError);
    CHECK(msg.find("missing key 'map'") != std::string::npos);
    CHECK(load_error("[[checks]]\nname = \"a\"\nkind = \"nosuch\"\n") == ErrorKind::UnknownCheck);
    CHECK(load_error("[[checks]]\nname = \"a\"\nkind = \"delta_swap\"\nn = 1\n[[checks]]\nname = \"a\"\nkind = \"delta_swap\"\nn = 2\n") ==
          ErrorKind::ParseError);
}

TEST_CASE("references must be defined earlier") {
    CHECK(load_error("[maps]\nm = { from = \"k\", to = \"k\", rows = [[\"1\"]] }\n[spaces]\nk = { weights = [\"1\"] }\n") ==
          ErrorKind::UnknownReference);
    CHECK(load_error("[[checks]]\nname = \"a\"\nkind = \"opnorm\"\nmap = \"m\"\n") == ErrorKind::UnknownReference);
    CHECK(load_error("[groups]\nb = { kind = \"product\", factors = [\"a\", \"a\"] }\na = { kind = \"cyclic\", n = 2 }\n") ==
          ErrorKind::UnknownReference);
    // source order, not key order
    auto s = load_scenario(write_temp(
        "order", "[groups]\nz = { kind = \"cyclic\", n = 2 }\na = { kind = \"product\", factors = [\"z\", \"z\"] }\n"));
    CHECK(s.groups.at("a").order() == 4);
}

TEST_CASE("expected errors pass and unexpected ones are reported") {
    auto path = write_temp("expect", R"(
[[checks]]
name = "unreachable"
kind = "locally_constant"
p = 3
depth = 1
function = "identity"
osc = ["1"]
eps = "3^-4"
expect_error = "ToleranceUnreachable"

[[checks]]
name = "wrong_expectation"
kind = "delta_swap"
n = 2
expect_error = "BoundViolated"

[[checks]]
name = "raises"
kind = "locally_constant"
p = 3
depth = 1
function = "identity"
osc = ["1"]
eps = "3^-4"
)");
    Report r = run_scenario(load_scenario(path));
    CHECK(r.checks[0].name == "raises");
    CHECK(r.checks[0].status == "error");
    CHECK(r.checks[0].witness.find("ToleranceUnreachable") == 0);
    CHECK(r.checks[1].status == "pass");
    CHECK(r.checks[2].status == "fail");
}

TEST_CASE("precision budget exhaustion surfaces as an error record") {
    auto path = write_temp("budget", R"(
[extensions]
q = { minpoly = ["-3", "0", "1"], galois_generators = [["0", "-1"]] }

[[checks]]
name = "norms"
kind = "submultiplicative"
extension = "q"
)");
    Scenario s = load_scenario(path);
    RunOptions o;
    o.precision = 8;
    Report r = run_scenario(s, o);
    CHECK(r.precision == 8);
    CHECK((r.checks[0].status == "pass" || r.checks[0].status == "error"));
    CHECK(default_precision() != 8);
}

TEST_CASE("catalog entries point at existing checks") {
    const auto& c = catalog();
    CHECK(c.size() >= 20);
    for (const auto& e : c) {
        CAPTURE(e.statement);
        Scenario s = load_scenario(scenario(e.scenario));
        bool found = false;
        for (const auto& chk : s.checks) found = found || chk.name == e.check;
        CHECK(found);
        CHECK(e.statement.find("Prop") == std::string::npos);
        CHECK(e.statement.find("Lemma") == std::string::npos);
    }
}

TEST_CASE("check kinds") {
    const auto& k = check_kinds();
    CHECK(k.size() == 20);
    CHECK(std::find(k.begin(), k.end(), "descent") != k.end());
}
