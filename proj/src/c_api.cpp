#include "fogsim.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "fogsim/report.hpp"

namespace {

thread_local std::string t_last_error;

struct BuiltinRef {
    std::string name;
    std::uint64_t seed;
};

int classify(const fogsim::SimError& e) {
    t_last_error = e.what();
    return static_cast<int>(e.error_class());
}

int fail_usage(const std::string& message) {
    t_last_error = message;
    return FOGSIM_ERR_USAGE;
}

std::string comma_list(const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ",";
        out += names[i];
    }
    return out;
}

}  // namespace

struct fogsim_scenario {
    std::variant<fogsim::Scenario, BuiltinRef> source;
    fogsim::RunOptions options;
};

struct fogsim_report {
    fogsim::ReportDocument doc;
};

extern "C" {

const char* fogsim_version(void) {
    return fogsim::kToolVersion;
}

const char* fogsim_builtin_names(void) {
    static const std::string names = comma_list(fogsim::kBuiltinScenarioNames);
    return names.c_str();
}

const char* fogsim_policy_names(void) {
    static const std::string names = comma_list(fogsim::kPlacementPolicyNames);
    return names.c_str();
}

const char* fogsim_last_error(void) {
    return t_last_error.c_str();
}

int fogsim_scenario_from_file(const char* path, fogsim_scenario** out) {
    if (!path || !out) return fail_usage("fogsim_scenario_from_file: null argument");
    try {
        auto* handle = new fogsim_scenario{fogsim::parse_scenario(path), fogsim::RunOptions{}};
        *out = handle;
        return FOGSIM_OK;
    } catch (const fogsim::SimError& e) {
        return classify(e);
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return FOGSIM_ERR_RUNTIME;
    }
}

int fogsim_scenario_builtin(const char* name, uint64_t seed, fogsim_scenario** out) {
    if (!name || !out) return fail_usage("fogsim_scenario_builtin: null argument");
    try {
        fogsim::generate_builtin(name, seed);  // reject unknown names eagerly
        auto* handle = new fogsim_scenario{BuiltinRef{name, seed}, fogsim::RunOptions{}};
        handle->options.seed = seed;
        *out = handle;
        return FOGSIM_OK;
    } catch (const fogsim::SimError& e) {
        return classify(e);
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return FOGSIM_ERR_RUNTIME;
    }
}

int fogsim_scenario_set_seed(fogsim_scenario* scenario, uint64_t seed) {
    if (!scenario) return fail_usage("fogsim_scenario_set_seed: null scenario");
    scenario->options.seed = seed;
    return FOGSIM_OK;
}

int fogsim_scenario_set_horizon(fogsim_scenario* scenario, double horizon_ms) {
    if (!scenario) return fail_usage("fogsim_scenario_set_horizon: null scenario");
    if (!(horizon_ms >= 0)) {
        t_last_error = "horizon must be non-negative";
        return FOGSIM_ERR_VALIDATION;
    }
    scenario->options.horizon_ms = horizon_ms;
    return FOGSIM_OK;
}

int fogsim_scenario_set_policy(fogsim_scenario* scenario, const char* policy) {
    if (!scenario || !policy) return fail_usage("fogsim_scenario_set_policy: null argument");
    scenario->options.policy = policy;
    return FOGSIM_OK;
}

int fogsim_run(const fogsim_scenario* scenario, const char* event_log_path, fogsim_report** out) {
    if (!scenario || !out) return fail_usage("fogsim_run: null argument");
    try {
        std::ofstream log_file;
        std::unique_ptr<fogsim::StreamLogSink> sink;
        if (event_log_path) {
            log_file.open(event_log_path, std::ios::binary | std::ios::trunc);
            if (!log_file) {
                return fail_usage("cannot open event log path '" + std::string(event_log_path) + "'");
            }
            sink = std::make_unique<fogsim::StreamLogSink>(log_file);
        }

        fogsim::ReportDocument doc;
        if (const auto* builtin = std::get_if<BuiltinRef>(&scenario->source)) {
            fogsim::RunOptions options = scenario->options;
            if (!options.seed) options.seed = builtin->seed;
            doc = fogsim::execute_builtin(builtin->name, options, sink.get());
        } else {
            doc = fogsim::execute_scenario(std::get<fogsim::Scenario>(scenario->source),
                                           scenario->options, sink.get());
        }
        *out = new fogsim_report{std::move(doc)};
        return FOGSIM_OK;
    } catch (const fogsim::SimError& e) {
        return classify(e);
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return FOGSIM_ERR_RUNTIME;
    }
}

int fogsim_report_render(const fogsim_report* report, const char* format, char** out_text) {
    if (!report || !format || !out_text) return fail_usage("fogsim_report_render: null argument");
    try {
        const std::string text = fogsim::emit_report(report->doc, format);
        char* buffer = new char[text.size() + 1];
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        *out_text = buffer;
        return FOGSIM_OK;
    } catch (const fogsim::SimError& e) {
        return classify(e);
    } catch (const std::exception& e) {
        t_last_error = e.what();
        return FOGSIM_ERR_RUNTIME;
    }
}

void fogsim_string_free(char* text) {
    delete[] text;
}

void fogsim_scenario_free(fogsim_scenario* scenario) {
    delete scenario;
}

void fogsim_report_free(fogsim_report* report) {
    delete report;
}

}  // extern "C"
