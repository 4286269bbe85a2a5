#include <doctest.h>

#include <algorithm>
#include <set>

#include "fogsim/topology.hpp"

using namespace fogsim;

namespace {

FogDeviceSpec cloud_spec() {
    FogDeviceSpec d;
    d.name = "cloud";
    d.mips = 44800;
    d.ram = 40000;
    d.up_bw = 100;
    d.down_bw = 10000;
    d.level = 0;
    d.rate_per_mips = 0.01;
    d.busy_power = 1648;
    d.idle_power = 1332;
    return d;
}

FogDeviceSpec gateway_spec(const std::string& name, double x = 0, double y = 0) {
    FogDeviceSpec d;
    d.name = name;
    d.mips = 2800;
    d.ram = 4000;
    d.up_bw = 10000;
    d.down_bw = 10000;
    d.level = 1;
    d.busy_power = 107.339;
    d.idle_power = 83.4333;
    d.parent = "cloud";
    d.uplink_latency_ms = 4;
    d.x = x;
    d.y = y;
    return d;
}

FogDeviceSpec end_spec(const std::string& name, const std::string& parent, double x = 0, double y = 0) {
    FogDeviceSpec d;
    d.name = name;
    d.mips = 3200;
    d.ram = 1000;
    d.up_bw = 10000;
    d.down_bw = 270;
    d.level = 2;
    d.busy_power = 87.53;
    d.idle_power = 82.44;
    if (!parent.empty()) d.parent = parent;
    d.uplink_latency_ms = 2;
    d.x = x;
    d.y = y;
    return d;
}

}  // namespace

TEST_CASE("devices with valid profiles register") {
    Topology topo;
    CHECK(topo.add_device(cloud_spec()) == 0);
    CHECK(topo.add_device(gateway_spec("g-0")) == 1);
    CHECK(topo.device(1).parent == 0);
    CHECK(topo.validate().empty());
}

TEST_CASE("hierarchy violations are rejected at registration") {
    Topology topo;
    topo.add_device(cloud_spec());

    FogDeviceSpec bad = end_spec("e-0", "cloud");  // level 2 under a level-0 parent
    CHECK_THROWS_AS(topo.add_device(bad), SimError);

    CHECK_THROWS_AS(topo.add_device(cloud_spec()), SimError);  // duplicate name

    FogDeviceSpec zero = gateway_spec("g-0");
    zero.mips = 0;
    CHECK_THROWS_AS(topo.add_device(zero), SimError);

    FogDeviceSpec second_root = cloud_spec();
    second_root.name = "cloud2";
    CHECK_THROWS_AS(topo.add_device(second_root), SimError);
}

TEST_CASE("sensors attach to leaf devices with matching names") {
    Topology topo;
    topo.add_device(cloud_spec());
    topo.add_device(gateway_spec("g-0"));
    DeviceId end = topo.add_device(end_spec("e-0", "g-0"));

    CHECK(topo.attach_sensor(Sensor{"IoTSensor", "IoTSensor", end, 6.0, 5.0, std::nullopt}) == 0);
    CHECK(topo.attach_actuator(Actuator{"a-0", "IoTActuator", end, 1.0}) == 0);

    CHECK_THROWS_AS(topo.attach_sensor(Sensor{"s-1", "Sensor", end, 6.0, 5.0, std::nullopt}), SimError);
    CHECK_THROWS_AS(topo.attach_sensor(Sensor{"Sensor", "Sensor", 99, 6.0, 5.0, std::nullopt}), SimError);
    CHECK_THROWS_AS(topo.attach_sensor(Sensor{"Sensor", "Sensor", end, 6.0, 0.0, std::nullopt}), SimError);
    CHECK_THROWS_AS(topo.attach_actuator(Actuator{"a-1", "X", 99, 1.0}), SimError);

    // a sensor on a non-leaf device is a validation violation
    Topology topo2;
    topo2.add_device(cloud_spec());
    DeviceId gw = topo2.add_device(gateway_spec("g-0"));
    topo2.add_device(end_spec("e-0", "g-0"));
    topo2.attach_sensor(Sensor{"Sensor", "Sensor", gw, 6.0, 5.0, std::nullopt});
    CHECK(!topo2.validate().empty());
}

TEST_CASE("euclidean distance") {
    Topology topo;
    topo.add_device(cloud_spec());
    topo.add_device(gateway_spec("a", 0, 0));
    topo.add_device(gateway_spec("b", 0, 0));
    CHECK(topo.euclidean_distance(1, 2) == 0.0);

    Topology topo2;
    topo2.add_device(cloud_spec());
    topo2.add_device(gateway_spec("a", 0, 0));
    topo2.add_device(gateway_spec("b", 3, 4));
    CHECK(topo2.euclidean_distance(1, 2) == 5.0);

    Topology topo3;
    topo3.add_device(cloud_spec());
    topo3.add_device(gateway_spec("a", 10.2, 15.7));
    topo3.add_device(gateway_spec("b", 11.0, 16.1));
    CHECK(topo3.euclidean_distance(1, 2) == doctest::Approx(0.894427190999916).epsilon(1e-12));
}

TEST_CASE("gateway selection adopts the nearest upper-level device") {
    Topology topo;
    topo.add_device(cloud_spec());
    DeviceId near = topo.add_device(gateway_spec("g-near", 1, 0));
    topo.add_device(gateway_spec("g-far", 5, 5));
    DeviceId orphan = topo.add_device(end_spec("e-0", "", 0, 0));
    REQUIRE(topo.device(orphan).parent == kNoDevice);
    topo.select_gateways();
    CHECK(topo.device(orphan).parent == near);
    CHECK(topo.validate().empty());
}

TEST_CASE("gateway selection with a single candidate picks it regardless of distance") {
    Topology topo;
    topo.add_device(cloud_spec());
    DeviceId only = topo.add_device(gateway_spec("g-0", 1000, 1000));
    DeviceId orphan = topo.add_device(end_spec("e-0", "", 0, 0));
    topo.select_gateways();
    CHECK(topo.device(orphan).parent == only);
}

TEST_CASE("equidistant gateway candidates break ties toward the lower id") {
    Topology topo;
    topo.add_device(cloud_spec());
    DeviceId left = topo.add_device(gateway_spec("g-left", -3, 0));
    topo.add_device(gateway_spec("g-right", 3, 0));
    DeviceId orphan = topo.add_device(end_spec("e-0", "", 0, 0));
    topo.select_gateways();
    CHECK(topo.device(orphan).parent == left);
}

TEST_CASE("an orphan with no candidate parents is an error naming the device") {
    Topology topo;
    topo.add_device(cloud_spec());
    topo.add_device(end_spec("e-lost", "", 0, 0));  // level 2, but no level-1 devices exist
    try {
        topo.select_gateways();
        FAIL("expected SimError");
    } catch (const SimError& e) {
        CHECK(std::string(e.what()).find("e-lost") != std::string::npos);
    }
}

TEST_CASE("clusters group same-parent devices within the distance threshold") {
    Topology topo;
    topo.add_device(cloud_spec());
    topo.add_device(gateway_spec("g-0"));
    topo.add_device(end_spec("A", "g-0", 0, 0));
    topo.add_device(end_spec("B", "g-0", 1, 0));
    topo.add_device(end_spec("C", "g-0", 10, 0));
    auto clusters = topo.form_clusters(2, ClusterConfig{2.0, 9999999.0});
    REQUIRE(clusters.size() == 2);
    CHECK(clusters[1] == std::vector<DeviceId>{2, 3});
    CHECK(clusters[2] == std::vector<DeviceId>{4});
}

TEST_CASE("clustering is transitive across chained pairs") {
    Topology topo;
    topo.add_device(cloud_spec());
    topo.add_device(gateway_spec("g-0"));
    topo.add_device(end_spec("A", "g-0", 0, 0));
    topo.add_device(end_spec("B", "g-0", 1.5, 0));
    topo.add_device(end_spec("C", "g-0", 3, 0));  // A-C distance 3, linked through B
    auto clusters = topo.form_clusters(2, ClusterConfig{2.0, 9999999.0});
    REQUIRE(clusters.size() == 1);
    CHECK(clusters[1] == std::vector<DeviceId>{2, 3, 4});
}

TEST_CASE("devices under different parents never share a cluster") {
    Topology topo;
    topo.add_device(cloud_spec());
    topo.add_device(gateway_spec("g-0"));
    topo.add_device(gateway_spec("g-1"));
    topo.add_device(end_spec("A", "g-0", 0, 0));
    topo.add_device(end_spec("B", "g-1", 0.5, 0));
    auto clusters = topo.form_clusters(2, ClusterConfig{2.0, 9999999.0});
    CHECK(clusters.size() == 2);
}

TEST_CASE("clusters partition the level and match a brute-force closure oracle") {
    RngStream rng(4242);
    for (int trial = 0; trial < 25; ++trial) {
        Topology topo;
        topo.add_device(cloud_spec());
        const int gateways = 1 + rng.uniform_int(0, 3);
        for (int g = 0; g < gateways; ++g) topo.add_device(gateway_spec("g-" + std::to_string(g)));
        const int count = 2 + rng.uniform_int(0, 30);
        std::vector<DeviceId> members;
        for (int i = 0; i < count; ++i) {
            std::string parent = "g-" + std::to_string(rng.uniform_int(0, gateways));
            members.push_back(topo.add_device(
                end_spec("e-" + std::to_string(i), parent, rng.uniform(0, 8), rng.uniform(0, 8))));
        }
        const ClusterConfig cfg{2.0, 9999999.0};
        auto clusters = topo.form_clusters(2, cfg);

        // Partition: every level-2 device appears exactly once.
        std::set<DeviceId> seen;
        for (const auto& [id, list] : clusters) {
            for (DeviceId d : list) CHECK(seen.insert(d).second);
        }
        CHECK(seen.size() == members.size());

        // Oracle: reflexive-transitive closure of the pair predicate.
        auto same_cluster = [&](DeviceId a, DeviceId b) {
            for (const auto& [id, list] : clusters) {
                bool has_a = std::find(list.begin(), list.end(), a) != list.end();
                bool has_b = std::find(list.begin(), list.end(), b) != list.end();
                if (has_a || has_b) return has_a && has_b;
            }
            return false;
        };
        std::vector<std::vector<bool>> reach(members.size(), std::vector<bool>(members.size(), false));
        for (std::size_t i = 0; i < members.size(); ++i) {
            reach[i][i] = true;
            for (std::size_t j = 0; j < members.size(); ++j) {
                if (i == j) continue;
                const FogDevice& a = topo.device(members[i]);
                const FogDevice& b = topo.device(members[j]);
                reach[i][j] = a.parent == b.parent &&
                              topo.euclidean_distance(a.id, b.id) < cfg.cluster_distance;
            }
        }
        for (std::size_t k = 0; k < members.size(); ++k) {
            for (std::size_t i = 0; i < members.size(); ++i) {
                for (std::size_t j = 0; j < members.size(); ++j) {
                    if (reach[i][k] && reach[k][j]) reach[i][j] = true;
                }
            }
        }
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = 0; j < members.size(); ++j) {
                CHECK(same_cluster(members[i], members[j]) == reach[i][j]);
            }
        }
    }
}

TEST_CASE("parent links stay a tree through reparenting") {
    Topology topo;
    topo.add_device(cloud_spec());
    DeviceId g0 = topo.add_device(gateway_spec("g-0"));
    DeviceId g1 = topo.add_device(gateway_spec("g-1"));
    DeviceId e0 = topo.add_device(end_spec("e-0", "g-0"));
    CHECK(topo.children(g0) == std::vector<DeviceId>{e0});
    CHECK(topo.is_leaf(e0));
    CHECK(!topo.is_leaf(g0));

    topo.set_parent(e0, g1);
    CHECK(topo.device(e0).parent == g1);
    CHECK(topo.children(g1) == std::vector<DeviceId>{e0});
    CHECK(topo.is_leaf(g0));
    CHECK(topo.validate().empty());
    CHECK(topo.root() == 0);
}
