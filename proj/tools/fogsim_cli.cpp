// Command-line front end; talks to the core exclusively through the C API.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fogsim.h"

namespace {

struct RunSpec {
    std::string scenario_path;
    std::string builtin;
    bool has_seed = false;
    std::uint64_t seed = 0;
    bool has_horizon = false;
    double horizon_ms = 0;
    std::string policy;
    std::string out_path;
    std::string event_log_path;
    std::string format = "human";
};

int fail(int code, const std::string& where) {
    std::cerr << "fogsim: " << where << ": " << fogsim_last_error() << "\n";
    return code;
}

// Inserts a seed marker before the file extension: report.json -> report_7.json.
std::string with_seed_suffix(const std::string& path, std::uint64_t seed) {
    auto slash = path.find_last_of('/');
    auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return path + "_" + std::to_string(seed);
    }
    return path.substr(0, dot) + "_" + std::to_string(seed) + path.substr(dot);
}

int run_once(const RunSpec& spec, std::uint64_t seed, bool seeded, std::string* stdout_text) {
    fogsim_scenario* scenario = nullptr;
    int rc;
    if (!spec.builtin.empty()) {
        rc = fogsim_scenario_builtin(spec.builtin.c_str(), seeded ? seed : 0, &scenario);
    } else {
        rc = fogsim_scenario_from_file(spec.scenario_path.c_str(), &scenario);
        if (rc == FOGSIM_OK && seeded) rc = fogsim_scenario_set_seed(scenario, seed);
    }
    if (rc != FOGSIM_OK) return fail(rc, "loading scenario");

    if (spec.has_horizon) {
        rc = fogsim_scenario_set_horizon(scenario, spec.horizon_ms);
        if (rc != FOGSIM_OK) {
            fogsim_scenario_free(scenario);
            return fail(rc, "setting horizon");
        }
    }
    if (!spec.policy.empty()) {
        fogsim_scenario_set_policy(scenario, spec.policy.c_str());
    }

    fogsim_report* report = nullptr;
    rc = fogsim_run(scenario, spec.event_log_path.empty() ? nullptr : spec.event_log_path.c_str(),
                    &report);
    fogsim_scenario_free(scenario);
    if (rc != FOGSIM_OK) return fail(rc, "running scenario");

    char* text = nullptr;
    rc = fogsim_report_render(report, spec.format.c_str(), &text);
    if (rc != FOGSIM_OK) {
        fogsim_report_free(report);
        return fail(rc, "rendering report");
    }
    if (stdout_text) {
        *stdout_text = text;
    } else {
        std::cout << text;
    }
    fogsim_string_free(text);

    if (!spec.out_path.empty()) {
        const std::string& out_path = spec.out_path;
        char* machine = nullptr;
        rc = fogsim_report_render(report, "machine", &machine);
        if (rc != FOGSIM_OK) {
            fogsim_report_free(report);
            return fail(rc, "rendering machine report");
        }
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) {
            fogsim_string_free(machine);
            fogsim_report_free(report);
            std::cerr << "fogsim: cannot write report to '" << out_path << "'\n";
            return FOGSIM_ERR_USAGE;
        }
        out << machine;
        fogsim_string_free(machine);
    }
    fogsim_report_free(report);
    return FOGSIM_OK;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        seeds.push_back(std::stoull(item));
    }
    return seeds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("fogsim ") + fogsim_version() +
                 " - deterministic fog/edge discrete-event simulator"};
    app.require_subcommand(1);

    RunSpec spec;
    std::string sweep;

    CLI::App* run = app.add_subcommand("run", "Run a scenario and report metrics");
    auto* scenario_opt = run->add_option("--scenario", spec.scenario_path, "Scenario document path");
    auto* builtin_opt =
        run->add_option("--builtin", spec.builtin,
                        std::string("Builtin scenario: ") + fogsim_builtin_names());
    scenario_opt->excludes(builtin_opt);
    auto* seed_opt = run->add_option("--seed", spec.seed, "Seed for all random streams");
    auto* horizon_opt = run->add_option("--horizon", spec.horizon_ms, "Simulation horizon in ms");
    run->add_option("--policy", spec.policy,
                    std::string("Placement policy override: ") + fogsim_policy_names());
    run->add_option("--out", spec.out_path, "Write the machine (JSON) report here");
    run->add_option("--event-log", spec.event_log_path, "Write the line-delimited event log here");
    run->add_option("--format", spec.format, "Report format on stdout: human|machine|csv")
        ->check(CLI::IsMember({"human", "machine", "csv"}));
    run->add_option("--sweep", sweep, "Comma-separated seed list; runs execute in parallel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : FOGSIM_ERR_USAGE;
    }

    spec.has_seed = seed_opt->count() > 0;
    spec.has_horizon = horizon_opt->count() > 0;
    if (spec.scenario_path.empty() && spec.builtin.empty()) {
        std::cerr << "fogsim: run requires --scenario PATH or --builtin NAME\n";
        return FOGSIM_ERR_USAGE;
    }

    if (sweep.empty()) {
        return run_once(spec, spec.seed, spec.has_seed, nullptr);
    }

    std::vector<std::uint64_t> seeds;
    try {
        seeds = parse_seed_list(sweep);
    } catch (const std::exception&) {
        std::cerr << "fogsim: --sweep expects a comma-separated list of integer seeds\n";
        return FOGSIM_ERR_USAGE;
    }
    if (seeds.empty()) {
        std::cerr << "fogsim: --sweep list is empty\n";
        return FOGSIM_ERR_USAGE;
    }

    // Runs share nothing; one thread per seed, output serialized by seed order.
    std::vector<std::string> outputs(seeds.size());
    std::vector<int> results(seeds.size(), FOGSIM_OK);
    std::vector<std::thread> workers;
    std::mutex stderr_mutex;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        workers.emplace_back([&, i] {
            RunSpec local = spec;
            if (!local.out_path.empty()) local.out_path = with_seed_suffix(spec.out_path, seeds[i]);
            if (!local.event_log_path.empty()) {
                local.event_log_path = with_seed_suffix(spec.event_log_path, seeds[i]);
            }
            std::string text;
            int rc = run_once(local, seeds[i], true, &text);
            if (rc != FOGSIM_OK) {
                std::lock_guard<std::mutex> lock(stderr_mutex);
                std::cerr << "fogsim: sweep seed " << seeds[i] << " failed\n";
            }
            outputs[i] = std::move(text);
            results[i] = rc;
        });
    }
    for (auto& w : workers) w.join();

    int rc = FOGSIM_OK;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        std::cout << "=== seed " << seeds[i] << " ===\n" << outputs[i];
        if (results[i] != FOGSIM_OK) rc = results[i];
    }
    return rc;
}
