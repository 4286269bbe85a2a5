#include <algorithm>

#include "fogsim/scenario.hpp"

namespace fogsim {

namespace {

// Three-tier device profiles used by the placement-policy scenario.
TierSpec reference_cloud_tier() {
    TierSpec t;
    t.mips = Param::fixed(44800);
    t.ram = Param::fixed(40000);
    t.up_bw = Param::fixed(100);
    t.down_bw = Param::fixed(10000);
    t.rate_per_mips = Param::fixed(0.01);
    t.busy_power = Param::fixed(16 * 103.0);
    t.idle_power = Param::fixed(16 * 83.25);
    return t;
}

TierSpec reference_gateway_tier() {
    TierSpec t;
    t.mips = Param::fixed(2800);
    t.ram = Param::fixed(4000);
    t.up_bw = Param::fixed(10000);
    t.down_bw = Param::fixed(10000);
    t.rate_per_mips = Param::fixed(0.0);
    t.busy_power = Param::fixed(107.339);
    t.idle_power = Param::fixed(83.4333);
    t.uplink_latency_ms = Param::fixed(4);
    return t;
}

TierSpec reference_end_tier() {
    TierSpec t;
    t.mips = Param::fixed(3200);
    t.ram = Param::fixed(1000);
    t.up_bw = Param::fixed(10000);
    t.down_bw = Param::fixed(270);
    t.rate_per_mips = Param::fixed(0.0);
    t.busy_power = Param::fixed(87.53);
    t.idle_power = Param::fixed(82.44);
    t.uplink_latency_ms = Param::fixed(2);
    return t;
}

// Heterogeneous mid-tier profile: every figure drawn from a range.
TierSpec heterogeneous_mid_tier() {
    TierSpec t;
    t.mips = Param::range(12000, 15000);
    t.ram = Param::range(4000, 8000);
    t.up_bw = Param::range(200, 300);
    t.down_bw = Param::range(500, 1000);
    t.rate_per_mips = Param::fixed(0.01);
    t.busy_power = Param::range(100, 120);
    t.idle_power = Param::range(70, 75);
    t.uplink_latency_ms = Param::fixed(10);
    return t;
}

TierSpec low_level_tier() {
    TierSpec t;
    t.mips = Param::fixed(1000);
    t.ram = Param::fixed(1000);
    t.up_bw = Param::fixed(10000);
    t.down_bw = Param::fixed(270);
    t.rate_per_mips = Param::fixed(0.0);
    t.busy_power = Param::fixed(87.53);
    t.idle_power = Param::fixed(82.44);
    return t;
}

void add_coordinates(TierSpec& tier) {
    tier.x = Param::range(10, 20);
    tier.y = Param::range(15, 25);
}

SensorTemplate generic_sensor() {
    SensorTemplate s;
    s.tuple_type = "Sensor";
    s.latency_ms = 6.0;
    s.emission_interval_ms = Param::range(5, 15);
    return s;
}

ActuatorTemplate output_actuator() {
    ActuatorTemplate a;
    a.consumed_tuple_type = "OutputData";
    a.latency_ms = 1.0;
    return a;
}

void pin_client_to_leaves(Scenario& s, const std::string& module) {
    for (const auto& d : s.devices) {
        if (d.level == 2) s.placement.pins.push_back(PinSpec{module, d.name});
    }
}

Scenario make_snippet1(std::uint64_t seed) {
    Scenario s;
    s.name = "snippet1";
    s.description = "Heterogeneous mid-tier devices under one cloud; topology only.";
    s.seed = seed;
    s.horizon_ms = 1000;
    TopologyGenSpec gen;
    gen.num_gateways = 10;
    gen.end_devices_per_gateway = 0;
    gen.cloud = reference_cloud_tier();
    gen.gateway = heterogeneous_mid_tier();
    gen.gateway_name_prefix = "FogDevice-";
    s.topology_generator = gen;
    s.placement.policy = "cloud_only";
    materialize(s);
    return s;
}

Scenario make_app_demo(const std::string& name, std::uint64_t seed) {
    Scenario s;
    s.name = name;
    s.seed = seed;
    s.horizon_ms = 20000;
    TopologyGenSpec gen;
    gen.num_gateways = 2;
    gen.end_devices_per_gateway = 2;
    gen.cloud = reference_cloud_tier();
    gen.gateway = heterogeneous_mid_tier();
    gen.end = low_level_tier();
    gen.gateway_name_prefix = "FogDevice-";
    gen.end_name_prefix = "LowLevelFogDevice-";
    gen.sensor = generic_sensor();
    gen.actuator = output_actuator();
    s.topology_generator = gen;
    s.app.builtin = name;
    s.placement.policy = "edge_ward";
    materialize(s);
    return s;
}

Scenario make_deadline_test(std::uint64_t seed) {
    Scenario s;
    s.name = "deadline_test";
    s.description = "Deadline-aware gateway placement over a 2x3 fan-out.";
    s.seed = seed;
    s.horizon_ms = 10000;
    TopologyGenSpec gen;
    gen.num_gateways = 2;
    gen.end_devices_per_gateway = 3;
    gen.cloud = reference_cloud_tier();
    gen.gateway = reference_gateway_tier();
    gen.end = reference_end_tier();
    SensorTemplate sensor;
    sensor.tuple_type = "IoTSensor";
    sensor.latency_ms = 6.0;
    sensor.emission_interval_ms = Param::fixed(5.0);
    gen.sensor = sensor;
    ActuatorTemplate actuator;
    actuator.consumed_tuple_type = "IoTActuator";
    actuator.latency_ms = 1.0;
    gen.actuator = actuator;
    s.topology_generator = gen;
    s.app.builtin = "deadline_test";
    s.placement.policy = "deadline_aware";
    s.placement.module_to_place = "mainModule";
    s.placement.deadline_range = std::make_pair(3.0, 5.0);
    s.placement.extra_mips_range = std::make_pair(0, 500);
    materialize(s);
    s.placement.pins.push_back(PinSpec{"storageModule", "cloud"});
    pin_client_to_leaves(s, "clientModule");
    return s;
}

Scenario make_mobility_demo(std::uint64_t seed) {
    Scenario s;
    s.name = "mobility_demo";
    s.description = "About half of the low-level devices reparent to FogDevice-0 at t=100.";
    s.seed = seed;
    s.horizon_ms = 2000;
    TopologyGenSpec gen;
    gen.num_gateways = 2;
    gen.end_devices_per_gateway = 2;
    gen.cloud = reference_cloud_tier();
    gen.gateway = heterogeneous_mid_tier();
    gen.end = low_level_tier();
    gen.gateway_name_prefix = "FogDevice-";
    gen.end_name_prefix = "LowLevelFogDevice-";
    gen.sensor = generic_sensor();
    gen.actuator = output_actuator();
    s.topology_generator = gen;
    s.app.builtin = "sequential";
    s.placement.policy = "cloud_only";
    materialize(s);

    RngStream coin = RngStream::named(seed, "mobility");
    for (const auto& d : s.devices) {
        if (d.level != 2) continue;
        if (coin.next_double() < 0.5) {
            s.mobility.push_back(MobilitySpec{d.name, 100.0, "FogDevice-0"});
        }
    }
    return s;
}

Scenario make_cluster_demo(std::uint64_t seed) {
    Scenario s;
    s.name = "cluster_demo";
    s.description = "Coordinate-based gateway selection plus distance clustering; topology only.";
    s.seed = seed;
    s.horizon_ms = 1000;
    TopologyGenSpec gen;
    gen.num_gateways = 3;
    gen.end_devices_per_gateway = 3;
    gen.cloud = reference_cloud_tier();
    gen.gateway = heterogeneous_mid_tier();
    add_coordinates(gen.gateway);
    gen.end = low_level_tier();
    add_coordinates(gen.end);
    gen.gateway_name_prefix = "FogDevice-";
    gen.end_name_prefix = "LowLevelFogDevice-";
    gen.assign_parents_by_distance = true;
    s.topology_generator = gen;
    s.placement.policy = "cloud_only";
    s.cluster = ClusterSpec{2, 2.0, 9999999.0};
    materialize(s);
    return s;
}

Scenario make_healthcare(std::uint64_t seed) {
    Scenario s;
    s.name = "healthcare";
    s.description =
        "IoT healthcare composition: 3 tiers with a 2x3 fan-out (artifact defaults), "
        "capped heterogeneous sensors, distance-selected gateways, leaf clustering, "
        "deadline-aware placement of Module2, and mobility of cloud-served devices to g-0.";
    s.seed = seed;
    // Long enough for the capped sensor queues to drain through Module1.
    s.horizon_ms = 650000;

    TopologyGenSpec gen;
    gen.num_gateways = 2;
    gen.end_devices_per_gateway = 3;
    gen.cloud = reference_cloud_tier();
    gen.gateway = reference_gateway_tier();
    add_coordinates(gen.gateway);
    gen.end = reference_end_tier();
    add_coordinates(gen.end);
    gen.assign_parents_by_distance = true;
    SensorTemplate sensor = generic_sensor();
    sensor.max_tuples = 100;
    gen.sensor = sensor;
    gen.actuator = output_actuator();
    s.topology_generator = gen;

    // Four-module sequential dataflow with per-module resource profiles.
    s.app.app_id = "healthcare";
    s.app.modules = {
        ModuleSpec{"Module1", 20, 500, 1024, 1500},
        ModuleSpec{"Module2", 100, 1200, 4000, 100},
        ModuleSpec{"Module3", 50, 1500, 4000, 800},
        ModuleSpec{"Module4", 10, 50, 12000, 100},
    };
    auto edge = [](std::string src, std::string dst, double cpu, double nw, std::string type,
                   std::string dir, std::string kind) {
        EdgeSpec e;
        e.source = std::move(src);
        e.destination = std::move(dst);
        e.cpu_length_mi = cpu;
        e.nw_length_kb = nw;
        e.tuple_type = std::move(type);
        e.direction = std::move(dir);
        e.kind = std::move(kind);
        return e;
    };
    s.app.edges = {
        edge("Sensor", "Module1", 3000, 500, "Sensor", "UP", "SENSOR"),
        edge("Module1", "Module2", 100, 1000, "ProcessedData-1", "UP", "MODULE"),
        edge("Module2", "Module3", 100, 1000, "ProcessedData-2", "UP", "MODULE"),
        edge("Module3", "Module4", 100, 1000, "ProcessedData-3", "UP", "MODULE"),
        edge("Module4", "Module1", 100, 1000, "ProcessedData-4", "DOWN", "MODULE"),
        edge("Module1", "Actuators", 100, 50, "OutputData", "DOWN", "ACTUATOR"),
    };
    s.app.mappings = {
        MappingSpec{"Module1", "Sensor", "ProcessedData-1", 1.0},
        MappingSpec{"Module2", "ProcessedData-1", "ProcessedData-2", 1.0},
        MappingSpec{"Module3", "ProcessedData-2", "ProcessedData-3", 1.0},
        MappingSpec{"Module4", "ProcessedData-3", "ProcessedData-4", 1.0},
        MappingSpec{"Module1", "ProcessedData-4", "OutputData", 1.0},
    };
    s.app.loops = {{"Sensor", "Module1", "Module2", "Module3", "Module4", "Module1", "Actuator"}};

    s.placement.policy = "deadline_aware";
    s.placement.module_to_place = "Module2";
    s.placement.deadline_range = std::make_pair(3.0, 5.0);
    s.placement.extra_mips_range = std::make_pair(0, 500);
    s.cluster = ClusterSpec{2, 2.0, 9999999.0};
    materialize(s);
    s.placement.pins.push_back(PinSpec{"Module3", "cloud"});
    s.placement.pins.push_back(PinSpec{"Module4", "cloud"});
    pin_client_to_leaves(s, "Module1");

    // Mobile devices are chosen among the cloud-served ones: their scoped
    // Module2 instance stays reachable on the path through any gateway.
    CompiledScenario compiled = compile(s);
    RngStream coin = RngStream::named(seed, "mobility");
    for (const auto& d : s.devices) {
        if (d.level != 2) continue;
        DeviceId id = compiled.topology.find_by_name(d.name);
        bool cloud_served = std::any_of(
            compiled.placement.instances.begin(), compiled.placement.instances.end(),
            [&](const ModuleInstance& inst) {
                return inst.module == "Module2" && inst.client_scope == id &&
                       inst.host == compiled.topology.root();
            });
        if (cloud_served && coin.next_double() < 0.5) {
            s.mobility.push_back(MobilitySpec{d.name, 100.0, "g-0"});
        }
    }
    return s;
}

}  // namespace

Scenario generate_builtin(const std::string& name, std::uint64_t seed) {
    if (name == "snippet1") return make_snippet1(seed);
    if (name == "master_worker" || name == "sequential") return make_app_demo(name, seed);
    if (name == "deadline_test") return make_deadline_test(seed);
    if (name == "mobility_demo") return make_mobility_demo(seed);
    if (name == "cluster_demo") return make_cluster_demo(seed);
    if (name == "healthcare") return make_healthcare(seed);
    std::string valid;
    for (std::size_t i = 0; i < kBuiltinScenarioNames.size(); ++i) {
        if (i) valid += ", ";
        valid += kBuiltinScenarioNames[i];
    }
    throw SimError(ErrorClass::validation,
                   "unknown builtin scenario '" + name + "'; valid names: " + valid);
}

}  // namespace fogsim
