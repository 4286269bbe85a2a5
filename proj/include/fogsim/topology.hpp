#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fogsim/kernel.hpp"

namespace fogsim {

using DeviceId = int;
inline constexpr DeviceId kNoDevice = -1;

/// Creation-time description of a fog device; parent is named, not yet
/// resolved to an id. Coordinates live on a unitless plane.
struct FogDeviceSpec {
    std::string name;
    double mips = 0.0;        // MI per second
    double ram = 0.0;         // MB
    double up_bw = 0.0;       // kB per second
    double down_bw = 0.0;     // kB per second
    int level = 0;            // 0 = cloud, increasing toward the edge
    double rate_per_mips = 0.0;
    double busy_power = 0.0;  // watts
    double idle_power = 0.0;  // watts
    std::optional<std::string> parent;
    double uplink_latency_ms = 0.0;
    double x = 0.0;
    double y = 0.0;
    // Accepted in device descriptions but not consumed by any metric.
    double cost_per_mem = 0.0;
    double cost_per_storage = 0.0;
    double cost_per_bw = 0.0;
};

struct FogDevice {
    DeviceId id = kNoDevice;
    std::string name;
    double mips = 0.0;
    double ram = 0.0;
    double up_bw = 0.0;
    double down_bw = 0.0;
    int level = 0;
    double rate_per_mips = 0.0;
    double busy_power = 0.0;
    double idle_power = 0.0;
    DeviceId parent = kNoDevice;
    double uplink_latency_ms = 0.0;
    double x = 0.0;
    double y = 0.0;
};

struct Sensor {
    std::string name;
    std::string tuple_type;  // must equal name
    DeviceId gateway = kNoDevice;
    double latency_ms = 0.0;
    double emission_interval_ms = 0.0;
    std::optional<std::uint64_t> max_tuples;
};

struct Actuator {
    std::string name;
    std::string consumed_tuple_type;
    DeviceId gateway = kNoDevice;
    double latency_ms = 0.0;
};

struct MobilityEntry {
    DeviceId device = kNoDevice;
    SimTime at_ms = 0.0;
    DeviceId new_parent = kNoDevice;
};

struct ClusterConfig {
    double cluster_distance = 2.0;
    double max_number = 9999999.0;  // sentinel used to seed distance minimisation
};

/// Physical layer: devices in a parent tree rooted at the single level-0
/// device, with sensors/actuators attached to leaf devices.
class Topology {
public:
    DeviceId add_device(const FogDeviceSpec& spec);
    int attach_sensor(Sensor sensor);
    int attach_actuator(Actuator actuator);

    const FogDevice& device(DeviceId id) const;
    DeviceId find_by_name(const std::string& name) const;  // kNoDevice when absent
    std::size_t device_count() const noexcept { return devices_.size(); }
    const std::vector<FogDevice>& devices() const noexcept { return devices_; }
    const std::vector<Sensor>& sensors() const noexcept { return sensors_; }
    const std::vector<Actuator>& actuators() const noexcept { return actuators_; }

    double euclidean_distance(DeviceId a, DeviceId b) const;

    /// Assigns each parentless non-root device the nearest device one
    /// level closer to the root. Ties break toward the lower device id.
    void select_gateways(const ClusterConfig& cfg = {});

    /// Groups the devices of one level into clusters: two devices share a
    /// cluster iff they are connected by a chain of same-parent pairs at
    /// pairwise distance below the threshold. Cluster ids start at 1 and
    /// follow ascending order of each cluster's lowest device id.
    std::map<int, std::vector<DeviceId>> form_clusters(int level, const ClusterConfig& cfg) const;

    /// Unconditional reparent used by mobility handling.
    void set_parent(DeviceId device, DeviceId new_parent);

    bool is_leaf(DeviceId id) const;
    std::vector<DeviceId> children(DeviceId id) const;
    DeviceId root() const;  // kNoDevice when no level-0 device exists

    /// Full structural check; returns one message per violation.
    std::vector<std::string> validate() const;

private:
    std::vector<FogDevice> devices_;
    std::vector<Sensor> sensors_;
    std::vector<Actuator> actuators_;
    std::map<std::string, DeviceId> by_name_;
};

}  // namespace fogsim
