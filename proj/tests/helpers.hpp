#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fogsim/report.hpp"

namespace fogsim::testing {

inline FogDeviceSpec make_device(std::string name, double mips, double up_bw, double down_bw,
                                 int level, double rate, double busy, double idle,
                                 std::optional<std::string> parent = std::nullopt,
                                 double uplink_latency = 0.0, double x = 0.0, double y = 0.0) {
    FogDeviceSpec d;
    d.name = std::move(name);
    d.mips = mips;
    d.ram = 1000;
    d.up_bw = up_bw;
    d.down_bw = down_bw;
    d.level = level;
    d.rate_per_mips = rate;
    d.busy_power = busy;
    d.idle_power = idle;
    d.parent = std::move(parent);
    d.uplink_latency_ms = uplink_latency;
    d.x = x;
    d.y = y;
    return d;
}

/// One gateway, one end device, the deadline-aware reference application;
/// the sensor is capped so the pipeline drains and the first loop sample
/// is analytically predictable.
inline Scenario single_leaf_scenario(std::optional<std::uint64_t> cap, double horizon,
                                     double gateway_mips = 2800) {
    Scenario s;
    s.name = "single_leaf";
    s.seed = 1;
    s.horizon_ms = horizon;
    s.devices.push_back(make_device("cloud", 44800, 100, 10000, 0, 0.01, 1648, 1332));
    s.devices.push_back(
        make_device("g-0", gateway_mips, 10000, 10000, 1, 0.0, 107.339, 83.4333, "cloud", 4));
    s.devices.push_back(make_device("e-0-0", 3200, 10000, 270, 2, 0.0, 87.53, 82.44, "g-0", 2));
    SensorSpec sensor;
    sensor.name = "IoTSensor";
    sensor.tuple_type = "IoTSensor";
    sensor.gateway = "e-0-0";
    sensor.latency_ms = 6.0;
    sensor.emission_interval_ms = 5.0;
    sensor.max_tuples = cap;
    s.sensors.push_back(sensor);
    ActuatorSpec actuator;
    actuator.name = "a-0-0";
    actuator.consumed_tuple_type = "IoTActuator";
    actuator.gateway = "e-0-0";
    actuator.latency_ms = 1.0;
    s.actuators.push_back(actuator);
    s.app.builtin = "deadline_test";
    s.placement.policy = "deadline_aware";
    s.placement.module_to_place = "mainModule";
    s.placement.pins.push_back(PinSpec{"storageModule", "cloud"});
    s.placement.pins.push_back(PinSpec{"clientModule", "e-0-0"});
    s.app.deadline_info["e-0-0"]["mainModule"] = 4.0;
    s.app.additional_mips["e-0-0"]["mainModule"] = 0.0;
    materialize(s);
    return s;
}

inline std::vector<LogRecord> records_of(const MemoryLogSink& log, const std::string& kind) {
    std::vector<LogRecord> out;
    for (const auto& rec : log.records) {
        if (rec.kind == kind) out.push_back(rec);
    }
    return out;
}

}  // namespace fogsim::testing
