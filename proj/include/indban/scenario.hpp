#pragma once

#include "indban/comod.hpp"
#include "indban/descent.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace indban {

struct Representation {
    FiniteGroup group;
    SpacePtr space;
    std::vector<Matrix> matrices;
};

struct CheckSpec {
    std::string name;
    std::string kind;
    nlohmann::json params;
    std::size_t line = 0, column = 0;
};

struct Scenario {
    std::string name;
    std::string path;
    ValuedField field;
    std::uint64_t seed = 1;
    unsigned precision = 0; // 0: library default

    std::map<std::string, SpacePtr> spaces;
    std::map<std::string, BoundedMap> maps;
    std::map<std::string, FiniteGroup> groups;
    std::map<std::string, IndObject> chains;
    std::map<std::string, GradedSpace> graded;
    std::map<std::string, Representation> reps;
    std::map<std::string, ExtPtr> extensions;
    std::map<std::string, BialgebraData> bialgebras;
    std::map<std::string, CoalgebraData> coalgebras;
    std::map<std::string, std::string> deferred_errors; // constructions that raised, reported by the checks using them
    std::vector<CheckSpec> checks;
};

// Throws ParseError (with line and column), UnknownCheck or UnknownReference.
Scenario load_scenario(const std::string& path);

const std::vector<std::string>& check_kinds();

struct NormRecord {
    std::string map;
    NormEnclosure value;
    bool exact = false;
    std::string method;
};

struct CheckRecord {
    std::string name;
    std::string kind;
    std::string status; // pass | fail | inexact-pass | error
    std::string witness;
    std::vector<NormRecord> norms;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
    double millis = 0;
};

struct Report {
    std::string scenario;
    std::uint64_t seed = 1;
    unsigned precision = 0;
    std::vector<CheckRecord> checks; // sorted by name
    bool ok() const;
    std::size_t count(const std::string& status) const;
};

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> precision;
    bool timing = false;
};

Report run_scenario(const Scenario& s, const RunOptions& opts = {});
nlohmann::ordered_json report_json(const Report& r, bool timing = false);
std::string report_text(const Report& r);

} // namespace indban
