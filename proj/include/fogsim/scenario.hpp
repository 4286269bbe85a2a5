#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fogsim/runtime.hpp"

namespace fogsim {

/// Scalar generator parameter: either a fixed value or a [min, max)
/// range resolved from a seeded stream at materialization time.
struct Param {
    double min = 0.0;
    double max = 0.0;
    bool ranged = false;

    static Param fixed(double v) { return Param{v, v, false}; }
    static Param range(double a, double b) { return Param{a, b, true}; }
    double resolve(RngStream& rng) const { return ranged ? rng.uniform(min, max) : min; }
};

/// Device parameter template for one hierarchy tier.
struct TierSpec {
    Param mips, ram, up_bw, down_bw, busy_power, idle_power;
    Param rate_per_mips = Param::fixed(0.0);
    Param uplink_latency_ms = Param::fixed(0.0);
    Param x = Param::fixed(0.0);
    Param y = Param::fixed(0.0);
};

struct SensorTemplate {
    std::string tuple_type;
    double latency_ms = 0.0;
    Param emission_interval_ms = Param::fixed(0.0);
    std::optional<std::uint64_t> max_tuples;
};

struct ActuatorTemplate {
    std::string consumed_tuple_type;
    std::string name_prefix = "a-";
    double latency_ms = 0.0;
};

/// Gateway/end-device fan-out generator expanded into an explicit device
/// list at materialization.
struct TopologyGenSpec {
    int num_gateways = 0;
    int end_devices_per_gateway = 0;
    TierSpec cloud, gateway, end;
    std::string cloud_name = "cloud";
    std::string gateway_name_prefix = "g-";
    std::string end_name_prefix = "e-";
    // When set, end devices are created parentless (flat names) and
    // adopted by the nearest gateway afterwards.
    bool assign_parents_by_distance = false;
    std::optional<SensorTemplate> sensor;
    std::optional<ActuatorTemplate> actuator;
};

struct SensorSpec {
    std::string name;
    std::string tuple_type;
    std::string gateway;
    double latency_ms = 0.0;
    double emission_interval_ms = 0.0;
    std::optional<std::uint64_t> max_tuples;
};

struct ActuatorSpec {
    std::string name;
    std::string consumed_tuple_type;
    std::string gateway;
    double latency_ms = 0.0;
};

struct MobilitySpec {
    std::string device;
    double at_ms = 0.0;
    std::string new_parent;
};

struct ModuleSpec {
    std::string name;
    double ram = 0.0, mips = 0.0, size = 0.0, bw = 0.0;
};

struct EdgeSpec {
    std::string source, destination;
    double cpu_length_mi = 0.0, nw_length_kb = 0.0;
    std::string tuple_type;
    std::string direction = "UP";
    std::string kind = "MODULE";
    std::optional<double> period_ms;
};

struct MappingSpec {
    std::string module, input_type, output_type;
    double selectivity = 0.0;
};

struct AppSpec {
    std::string builtin;  // expanded at materialization when non-empty
    std::string app_id;
    std::vector<ModuleSpec> modules;
    std::vector<EdgeSpec> edges;
    std::vector<MappingSpec> mappings;
    std::vector<std::vector<std::string>> loops;
    std::map<std::string, std::map<std::string, double>> deadline_info;     // device -> module -> ms
    std::map<std::string, std::map<std::string, double>> additional_mips;   // device -> module -> MI/s
};

struct PinSpec {
    std::string module, device;
};

struct PlacementSpec {
    std::string policy = "cloud_only";  // cloud_only | edge_ward | deadline_aware
    std::string module_to_place;
    std::vector<PinSpec> pins;
    std::optional<std::pair<double, double>> deadline_range;
    std::optional<std::pair<int, int>> extra_mips_range;
};

struct ClusterSpec {
    int level = 0;
    double distance = 2.0;
    double max_number = 9999999.0;
};

struct Scenario {
    std::string name = "scenario";
    std::string description;
    std::uint64_t seed = 0;
    double horizon_ms = 0.0;
    std::optional<TopologyGenSpec> topology_generator;
    std::vector<FogDeviceSpec> devices;
    std::vector<SensorSpec> sensors;
    std::vector<ActuatorSpec> actuators;
    AppSpec app;
    PlacementSpec placement;
    std::vector<MobilitySpec> mobility;
    std::optional<ClusterSpec> cluster;
};

inline constexpr int kScenarioFormatVersion = 1;

extern const std::vector<std::string> kBuiltinScenarioNames;
extern const std::vector<std::string> kPlacementPolicyNames;

/// Expands generators, builtin applications and unresolved deadline/extra
/// ranges into explicit content, using streams derived from the seed.
/// Idempotent: a fully explicit scenario passes through unchanged.
void materialize(Scenario& scenario);

/// Resolves names, builds topology/application/placement and runs every
/// validation; all violations are collected and reported together.
CompiledScenario compile(const Scenario& scenario);

nlohmann::ordered_json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::ordered_json& j);

/// Reads, parses and materializes a scenario document. Unreadable files
/// are usage errors; malformed or invalid content is a validation error
/// carrying line/column (syntax) or the full violation list (semantics).
Scenario parse_scenario(const std::string& path);
Scenario parse_scenario_text(const std::string& text, const std::string& origin);

/// Scenario reconstructions of the published example set:
/// snippet1 | master_worker | sequential | deadline_test | mobility_demo |
/// cluster_demo | healthcare.
Scenario generate_builtin(const std::string& name, std::uint64_t seed);

}  // namespace fogsim
