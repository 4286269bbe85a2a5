#include <doctest.h>

#include <fstream>

#include "helpers.hpp"

using namespace fogsim;
using namespace fogsim::testing;

TEST_CASE("every builtin scenario materializes, validates and compiles") {
    for (const auto& name : kBuiltinScenarioNames) {
        CAPTURE(name);
        Scenario s = generate_builtin(name, 5);
        CHECK(!s.topology_generator.has_value());
        CHECK(s.app.builtin.empty());
        CompiledScenario compiled = compile(s);
        CHECK(compiled.topology.device_count() > 0);
    }
    CHECK_THROWS_AS(generate_builtin("bogus", 1), SimError);
}

TEST_CASE("builtin generation is deterministic per seed") {
    for (const auto& name : kBuiltinScenarioNames) {
        CAPTURE(name);
        auto a = scenario_to_json(generate_builtin(name, 11)).dump();
        auto b = scenario_to_json(generate_builtin(name, 11)).dump();
        auto c = scenario_to_json(generate_builtin(name, 12)).dump();
        CHECK(a == b);
        if (name != "master_worker" && name != "sequential" && name != "snippet1") {
            // these three only differ through drawn device parameters
            CHECK(a != c);
        }
    }
}

TEST_CASE("scenario echo round-trips through its serialized form") {
    for (const auto& name : kBuiltinScenarioNames) {
        CAPTURE(name);
        Scenario original = generate_builtin(name, 7);
        std::string text = scenario_to_json(original).dump(2);
        Scenario reparsed = parse_scenario_text(text, "echo");
        CHECK(scenario_to_json(reparsed).dump(2) == text);
    }
}

TEST_CASE("snippet1 builds one cloud over ten heterogeneous devices") {
    Scenario s = generate_builtin("snippet1", 3);
    REQUIRE(s.devices.size() == 11);
    CHECK(s.devices[0].name == "cloud");
    CHECK(s.devices[0].mips == 44800);
    CHECK(s.devices[0].busy_power == doctest::Approx(1648.0));
    CHECK(s.devices[0].idle_power == doctest::Approx(1332.0));
    for (std::size_t i = 1; i < s.devices.size(); ++i) {
        const auto& d = s.devices[i];
        CHECK(d.level == 1);
        CHECK(d.uplink_latency_ms == 10);
        CHECK(d.mips >= 12000);
        CHECK(d.mips < 15000);
        CHECK(d.ram >= 4000);
        CHECK(d.ram < 8000);
        CHECK(d.up_bw >= 200);
        CHECK(d.up_bw < 300);
        CHECK(d.down_bw >= 500);
        CHECK(d.down_bw < 1000);
        CHECK(d.busy_power >= 100);
        CHECK(d.busy_power < 120);
        CHECK(d.idle_power >= 70);
        CHECK(d.idle_power < 75);
    }
}

TEST_CASE("deadline_test materializes the published fan-out and ranges") {
    Scenario s = generate_builtin("deadline_test", 7);
    int gateways = 0, ends = 0;
    for (const auto& d : s.devices) {
        if (d.level == 1) ++gateways;
        if (d.level == 2) ++ends;
    }
    CHECK(gateways == 2);
    CHECK(ends == 6);
    CHECK(s.placement.pins.size() == 7);  // storage on the cloud plus six clients
    REQUIRE(s.app.deadline_info.size() == 6);
    for (const auto& [device, per_module] : s.app.deadline_info) {
        double deadline = per_module.at("mainModule");
        CHECK(deadline >= 3.0);
        CHECK(deadline < 5.0);
        double extra = s.app.additional_mips.at(device).at("mainModule");
        CHECK(extra >= 0);
        CHECK(extra < 500);
        CHECK(extra == static_cast<int>(extra));  // integer draw
    }
    for (const auto& sn : s.sensors) {
        CHECK(sn.emission_interval_ms == 5.0);
        CHECK(sn.latency_ms == 6.0);
    }
}

TEST_CASE("mobility_demo moves about half the leaves to FogDevice-0 at t=100") {
    Scenario s = generate_builtin("mobility_demo", 3);
    CHECK(!s.mobility.empty());
    for (const auto& m : s.mobility) {
        CHECK(m.at_ms == 100.0);
        CHECK(m.new_parent == "FogDevice-0");
    }
}

TEST_CASE("cluster_demo assigns parents by distance and forms clusters") {
    Scenario s = generate_builtin("cluster_demo", 3);
    for (const auto& d : s.devices) {
        if (d.level == 2) CHECK(!d.parent.has_value());
    }
    CompiledScenario compiled = compile(s);
    for (const auto& d : compiled.topology.devices()) {
        if (d.level == 2) {
            REQUIRE(d.parent != kNoDevice);
            CHECK(compiled.topology.device(d.parent).level == 1);
            // nearest gateway, verified exhaustively
            double chosen = compiled.topology.euclidean_distance(d.id, d.parent);
            for (const auto& candidate : compiled.topology.devices()) {
                if (candidate.level == 1) {
                    CHECK(chosen <= compiled.topology.euclidean_distance(d.id, candidate.id) + 1e-12);
                }
            }
        }
    }
    CHECK(!compiled.clusters.empty());
}

TEST_CASE("healthcare composes capped sensors, clusters, deadlines and safe mobility") {
    Scenario s = generate_builtin("healthcare", 3);
    CHECK(s.cluster.has_value());
    for (const auto& sn : s.sensors) {
        CHECK(sn.max_tuples == 100);
        CHECK(sn.emission_interval_ms >= 5.0);
        CHECK(sn.emission_interval_ms < 15.0);
    }
    CompiledScenario compiled = compile(s);
    // Moved devices must keep their scoped Module2 instance reachable:
    // candidates are exactly the cloud-served ones.
    for (const auto& m : s.mobility) {
        DeviceId id = compiled.topology.find_by_name(m.device);
        bool cloud_served = false;
        for (const auto& inst : compiled.placement.instances) {
            if (inst.module == "Module2" && inst.client_scope == id) {
                cloud_served = inst.host == compiled.topology.root();
            }
        }
        CHECK(cloud_served);
    }
    MetricsReport report = run_compiled(compiled, nullptr);
    CHECK(report.loops[0].count > 0);
}

TEST_CASE("the shipped scenario document parses to the published fan-out") {
    Scenario s = parse_scenario(std::string(FOGSIM_SOURCE_DIR) + "/scenarios/deadline_test.json");
    int gateways = 0, ends = 0;
    for (const auto& d : s.devices) {
        if (d.level == 1) ++gateways;
        if (d.level == 2) ++ends;
    }
    CHECK(gateways == 2);
    CHECK(ends == 6);
    CHECK(compile(s).placement.instances.size() == 13);
}

TEST_CASE("missing scenario files are usage errors") {
    try {
        parse_scenario("/nonexistent/path.json");
        FAIL("expected SimError");
    } catch (const SimError& e) {
        CHECK(e.error_class() == ErrorClass::usage);
    }
}

TEST_CASE("empty documents are syntax errors") {
    try {
        parse_scenario_text("  \n \t", "test");
        FAIL("expected SimError");
    } catch (const SimError& e) {
        CHECK(e.error_class() == ErrorClass::validation);
        CHECK(std::string(e.what()).find("syntax error") != std::string::npos);
    }
}

TEST_CASE("malformed documents report line and column") {
    try {
        parse_scenario_text("{\n  \"name\": \"x\",\n  bad\n}", "test");
        FAIL("expected SimError");
    } catch (const SimError& e) {
        std::string what = e.what();
        CHECK(what.find("line 3") != std::string::npos);
        CHECK(what.find("column") != std::string::npos);
    }
}

TEST_CASE("an unknown policy is rejected naming the valid options") {
    Scenario s = single_leaf_scenario(1, 100);
    s.placement.policy = "best_effort";
    try {
        compile(s);
        FAIL("expected SimError");
    } catch (const SimError& e) {
        std::string what = e.what();
        CHECK(e.error_class() == ErrorClass::validation);
        CHECK(what.find("best_effort") != std::string::npos);
        CHECK(what.find("cloud_only") != std::string::npos);
        CHECK(what.find("edge_ward") != std::string::npos);
        CHECK(what.find("deadline_aware") != std::string::npos);
    }
}

TEST_CASE("semantic violations are reported together, not first-failure-only") {
    Scenario s = single_leaf_scenario(1, 100);
    s.placement.policy = "bogus";
    s.mobility.push_back(MobilitySpec{"ghost-device", 10.0, "cloud"});
    s.app.edges[0].cpu_length_mi = -4;
    try {
        compile(s);
        FAIL("expected SimError");
    } catch (const SimError& e) {
        std::string what = e.what();
        CHECK(what.find("bogus") != std::string::npos);
        CHECK(what.find("ghost-device") != std::string::npos);
        CHECK(what.find("non-negative") != std::string::npos);
    }
}

TEST_CASE("generator documents expand like the builtin generator") {
    // A file using the generator plus ranges materializes to the same
    // scenario the builtin produces for the same seed.
    Scenario builtin = generate_builtin("deadline_test", 21);
    std::string text = R"({
        "name": "deadline_test",
        "seed": 21,
        "horizon_ms": 10000.0,
        "topology": {
            "generator": {
                "num_gateways": 2,
                "end_devices_per_gateway": 3,
                "cloud": {"mips": 44800, "ram": 40000, "up_bw": 100, "down_bw": 10000,
                           "rate_per_mips": 0.01, "busy_power": 1648.0, "idle_power": 1332.0},
                "gateway": {"mips": 2800, "ram": 4000, "up_bw": 10000, "down_bw": 10000,
                             "busy_power": 107.339, "idle_power": 83.4333, "uplink_latency_ms": 4},
                "end": {"mips": 3200, "ram": 1000, "up_bw": 10000, "down_bw": 270,
                         "busy_power": 87.53, "idle_power": 82.44, "uplink_latency_ms": 2},
                "sensor": {"tuple_type": "IoTSensor", "latency_ms": 6.0, "emission_interval_ms": 5.0},
                "actuator": {"consumed_tuple_type": "IoTActuator", "latency_ms": 1.0}
            }
        },
        "application": {"builtin": "deadline_test"},
        "placement": {
            "policy": "deadline_aware",
            "module_to_place": "mainModule",
            "pins": [{"module": "storageModule", "device": "cloud"},
                     {"module": "clientModule", "device": "e-0-0"},
                     {"module": "clientModule", "device": "e-0-1"},
                     {"module": "clientModule", "device": "e-0-2"},
                     {"module": "clientModule", "device": "e-1-0"},
                     {"module": "clientModule", "device": "e-1-1"},
                     {"module": "clientModule", "device": "e-1-2"}],
            "deadline_range": [3.0, 5.0],
            "extra_mips_range": [0, 500]
        }
    })";
    Scenario from_file = parse_scenario_text(text, "inline");
    CHECK(from_file.devices.size() == builtin.devices.size());
    CHECK(from_file.app.deadline_info == builtin.app.deadline_info);
    CHECK(from_file.app.additional_mips == builtin.app.additional_mips);
    for (std::size_t i = 0; i < from_file.devices.size(); ++i) {
        CHECK(from_file.devices[i].name == builtin.devices[i].name);
        CHECK(from_file.devices[i].mips == builtin.devices[i].mips);
    }
}
