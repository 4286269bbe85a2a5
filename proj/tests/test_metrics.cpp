#include <doctest.h>

#include "fogsim/metrics.hpp"

using namespace fogsim;

namespace {

// Devices 0/1/2: cloud (100/80 W), gateway (107.339/83.4333 W),
// end device (87.53/82.44 W).
struct Fixture {
    Topology topo;
    Application app;

    Fixture() : app("t") {
        FogDeviceSpec c;
        c.name = "cloud";
        c.mips = 44800;
        c.up_bw = 100;
        c.down_bw = 10000;
        c.level = 0;
        c.rate_per_mips = 0.01;
        c.busy_power = 100.0;
        c.idle_power = 80.0;
        topo.add_device(c);

        FogDeviceSpec g;
        g.name = "gw";
        g.mips = 2800;
        g.up_bw = 10000;
        g.down_bw = 10000;
        g.level = 1;
        g.busy_power = 107.339;
        g.idle_power = 83.4333;
        g.parent = "cloud";
        topo.add_device(g);

        FogDeviceSpec e;
        e.name = "end";
        e.mips = 3200;
        e.up_bw = 10000;
        e.down_bw = 270;
        e.level = 2;
        e.busy_power = 87.53;
        e.idle_power = 82.44;
        e.parent = "gw";
        topo.add_device(e);

        app.add_module("m", 1, 1, 1, 1);
        app.add_loop({"S", "m", "A"});
    }
};

}  // namespace

TEST_CASE("an idle device accumulates idle power over the horizon") {
    Fixture f;
    MetricsCollector metrics(f.topo, f.app);
    MetricsReport report = metrics.finalize(1000.0, 0);
    REQUIRE(report.energy.size() == 3);
    CHECK(report.energy[2].name == "end");
    CHECK(report.energy[2].joules == doctest::Approx(82.44).epsilon(1e-12));
}

TEST_CASE("full utilization accumulates busy power") {
    Fixture f;
    MetricsCollector metrics(f.topo, f.app);
    metrics.record_utilization_change(1, 1.0, 0.0);
    metrics.record_utilization_change(1, 0.0, 500.0);
    MetricsReport report = metrics.finalize(500.0, 0);
    CHECK(report.energy[1].joules == doctest::Approx(53.6695).epsilon(1e-12));
}

TEST_CASE("fractional utilization interpolates linearly between idle and busy") {
    Fixture f;
    MetricsCollector metrics(f.topo, f.app);
    metrics.record_utilization_change(0, 0.5, 0.0);
    MetricsReport report = metrics.finalize(1000.0, 0);
    CHECK(report.energy[0].joules == doctest::Approx(90.0).epsilon(1e-12));  // midpoint of 80..100
}

TEST_CASE("utilization outside the unit interval is clamped") {
    Fixture f;
    MetricsCollector metrics(f.topo, f.app);
    metrics.record_utilization_change(0, 1.7, 0.0);
    CHECK(metrics.clamp_warnings() == 1);
    MetricsReport report = metrics.finalize(1000.0, 0);
    CHECK(report.energy[0].joules == doctest::Approx(100.0).epsilon(1e-12));  // clamped to busy
}

TEST_CASE("transmission accounting records both network views") {
    Fixture f;
    MetricsCollector metrics(f.topo, f.app);
    metrics.record_transmission(600.0, 2.0);
    metrics.record_transmission(0.0, 5.0);
    for (int i = 0; i < 10; ++i) metrics.record_transmission(50.0, 4.0);
    MetricsReport report = metrics.finalize(1.0, 0);
    CHECK(report.network_total_kb == 600.0 + 500.0);
    CHECK(report.network_kb_ms == 1200.0 + 2000.0);
}

TEST_CASE("cost accrues at the host's per-MI rate") {
    Fixture f;
    MetricsCollector metrics(f.topo, f.app);
    metrics.accrue_cost(0, 6000.0);  // cloud at 0.01 per MI
    metrics.accrue_cost(1, 500.0);   // rate 0
    metrics.accrue_cost(0, 0.0);
    MetricsReport report = metrics.finalize(1.0, 0);
    CHECK(report.total_cost == doctest::Approx(60.0).epsilon(1e-12));
}

TEST_CASE("loop samples record completion minus emission") {
    Fixture f;
    MetricsCollector metrics(f.topo, f.app);
    metrics.record_loop_completion(0, 5.0, 4281.0);
    metrics.record_loop_completion(0, 10.0, 10.0);
    MetricsReport report = metrics.finalize(5000.0, 0);
    REQUIRE(report.loops.size() == 1);
    CHECK(report.loops[0].count == 2);
    CHECK(report.loops[0].samples_ms == std::vector<double>{4276.0, 0.0});
    CHECK(report.loops[0].mean_ms == doctest::Approx(2138.0));
}

TEST_CASE("processing delay averages per tuple type") {
    Fixture f;
    MetricsCollector metrics(f.topo, f.app);
    metrics.record_processing_delay("RawData", 100.0);
    metrics.record_processing_delay("RawData", 300.0);
    metrics.record_processing_delay("Other", 10.0);
    MetricsReport report = metrics.finalize(1.0, 0);
    REQUIRE(report.processing_delay.size() == 2);
    CHECK(report.processing_delay[1].tuple_type == "RawData");
    CHECK(report.processing_delay[1].count == 2);
    CHECK(report.processing_delay[1].mean_ms == doctest::Approx(200.0));
}

TEST_CASE("finalize flushes to the horizon once and only once") {
    Fixture f;
    MetricsCollector metrics(f.topo, f.app);
    MetricsReport zero = metrics.finalize(0.0, 0);
    for (const auto& e : zero.energy) CHECK(e.joules == 0.0);
    CHECK_THROWS_AS(metrics.finalize(0.0, 0), SimError);
}

TEST_CASE("energy stays within the idle and busy bounds") {
    Fixture f;
    MetricsCollector metrics(f.topo, f.app);
    RngStream rng(5);
    double t = 0.0;
    for (int i = 0; i < 200; ++i) {
        t += rng.uniform(0.0, 10.0);
        metrics.record_utilization_change(2, rng.uniform(0.0, 1.0), t);
    }
    double horizon = t + 10.0;
    MetricsReport report = metrics.finalize(horizon, 0);
    CHECK(report.energy[2].joules >= 82.44 * horizon / 1000.0 - 1e-9);
    CHECK(report.energy[2].joules <= 87.53 * horizon / 1000.0 + 1e-9);
}
