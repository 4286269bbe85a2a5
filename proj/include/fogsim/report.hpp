#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fogsim/scenario.hpp"

namespace fogsim {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportFormatVersion = 1;

struct DeviceRow {
    DeviceId id = kNoDevice;
    std::string name;
    int level = 0;
    DeviceId parent = kNoDevice;
    double x = 0.0, y = 0.0;
    double mips = 0.0;
    double rate_per_mips = 0.0;
    double busy_power = 0.0, idle_power = 0.0;
    double up_bw = 0.0, down_bw = 0.0;
    double uplink_latency_ms = 0.0;
};

struct PlacementRow {
    std::string module;
    DeviceId host = kNoDevice;
    std::string host_name;
    std::optional<DeviceId> client_scope;
    double allocated_mips = 0.0;
};

/// Full run output: metrics plus the topology/placement dumps and the
/// materialized scenario echo. The machine form round-trips losslessly.
struct ReportDocument {
    int format_version = kReportFormatVersion;
    std::string tool_version = kToolVersion;
    Scenario scenario;
    std::vector<DeviceRow> topology;  // state at end of run (after mobility)
    std::vector<PlacementRow> placement;
    std::map<int, std::vector<DeviceId>> clusters;
    MetricsReport metrics;
};

std::string emit_machine(const ReportDocument& doc);
ReportDocument parse_machine(const std::string& text);
std::string emit_human(const ReportDocument& doc);

/// One row per (metric, entity): loops, device energies, then the three
/// scalar totals.
std::string emit_csv(const ReportDocument& doc);

std::string emit_report(const ReportDocument& doc, const std::string& format);

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<double> horizon_ms;
    std::optional<std::string> policy;
};

/// Applies overrides, materializes, compiles, runs and assembles the
/// report document. The scenario is taken by value: overrides and
/// materialization must not leak back to the caller's copy.
ReportDocument execute_scenario(Scenario scenario, const RunOptions& options, EventLogSink* log);
ReportDocument execute_builtin(const std::string& name, const RunOptions& options, EventLogSink* log);
ReportDocument execute_file(const std::string& path, const RunOptions& options, EventLogSink* log);

}  // namespace fogsim
