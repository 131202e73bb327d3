#include "indban/catalog.hpp"
#include "indban/error.hpp"
#include "indban/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace indban;

namespace {

int list_scenarios(const std::string& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".toml") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        std::string desc;
        try {
            Scenario s = load_scenario(f.string());
            desc = s.name + " (" + std::to_string(s.checks.size()) + " checks)";
        } catch (const Error& e) {
            desc = e.what();
        }
        std::cout << f.filename().string() << "  " << desc << "\n";
    }
    return 0;
}

int print_catalog() {
    for (const auto& e : catalog()) std::cout << e.statement << "\n    scenarios/" << e.scenario << " :: " << e.check << "\n";
    std::cout << catalog().size() << " entries\n";
    return 0;
}

int verify(const std::string& file, const RunOptions& opts, const std::string& json_out) {
    Scenario s;
    try {
        s = load_scenario(file);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    Report r = run_scenario(s, opts);
    std::cout << report_text(r);
    if (!json_out.empty()) {
        std::string text = report_json(r, opts.timing).dump(2) + "\n";
        if (json_out == "-") {
            std::cout << text;
        } else {
            std::ofstream out(json_out);
            if (!out) {
                std::cerr << "cannot write " << json_out << "\n";
                return 2;
            }
            out << text;
        }
    }
    return r.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verification of IndBanach constructions and Galois descent"};
    app.require_subcommand(0, 1);

    bool list = false;
    std::string dir = INDBAN_SCENARIO_DIR;
    app.add_flag("--list", list, "List bundled scenarios without running them");
    app.add_option("--scenario-dir", dir, "Directory of bundled scenarios")->check(CLI::ExistingDirectory);

    auto* verify_cmd = app.add_subcommand("verify", "Run every check of a scenario file");
    std::string file, json_out;
    std::uint64_t seed = 0;
    unsigned precision = 0;
    bool timing = false;
    verify_cmd->add_option("file", file, "Scenario file")->required()->check(CLI::ExistingFile);
    auto* seed_opt = verify_cmd->add_option("--seed", seed, "Override the scenario seed");
    auto* prec_opt = verify_cmd->add_option("--precision", precision, "Comparison budget in bits")->check(CLI::Range(8u, 1u << 20));
    verify_cmd->add_option("--json", json_out, "Write the JSON report to a file (- for stdout)");
    verify_cmd->add_flag("--timing", timing, "Include per-check timings in the JSON report");

    auto* catalog_cmd = app.add_subcommand("catalog", "Show which scenario checks each statement");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (list) return list_scenarios(dir);
    if (catalog_cmd->parsed()) return print_catalog();
    if (verify_cmd->parsed()) {
        RunOptions opts;
        if (seed_opt->count()) opts.seed = seed;
        if (prec_opt->count()) opts.precision = precision;
        opts.timing = timing;
        return verify(file, opts, json_out);
    }
    std::cerr << app.help();
    return 2;
}
