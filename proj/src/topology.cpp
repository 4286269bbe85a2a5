#include "fogsim/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fogsim {

namespace {

[[noreturn]] void reject(const std::string& message) {
    throw SimError(ErrorClass::validation, message);
}

}  // namespace

DeviceId Topology::add_device(const FogDeviceSpec& spec) {
    if (spec.name.empty()) reject("device rejected: empty name");
    if (by_name_.count(spec.name)) reject("device rejected: duplicate name '" + spec.name + "'");
    if (!(spec.mips > 0.0)) reject("device '" + spec.name + "' rejected: mips must be positive");
    if (spec.level < 0) reject("device '" + spec.name + "' rejected: negative level");
    if (spec.idle_power < 0.0 || spec.busy_power < spec.idle_power) {
        reject("device '" + spec.name + "' rejected: requires busy_power >= idle_power >= 0");
    }
    if (spec.level == 0) {
        if (spec.parent) reject("device '" + spec.name + "' rejected: level-0 device cannot have a parent");
        for (const auto& d : devices_) {
            if (d.level == 0) reject("device '" + spec.name + "' rejected: a level-0 device already exists");
        }
    }

    DeviceId parent_id = kNoDevice;
    if (spec.parent) {
        parent_id = find_by_name(*spec.parent);
        if (parent_id == kNoDevice) {
            reject("device '" + spec.name + "' rejected: unknown parent '" + *spec.parent + "'");
        }
        if (devices_[parent_id].level != spec.level - 1) {
            reject("device '" + spec.name + "' rejected: parent '" + *spec.parent +
                   "' is at level " + std::to_string(devices_[parent_id].level) +
                   ", expected " + std::to_string(spec.level - 1));
        }
    }

    FogDevice d;
    d.id = static_cast<DeviceId>(devices_.size());
    d.name = spec.name;
    d.mips = spec.mips;
    d.ram = spec.ram;
    d.up_bw = spec.up_bw;
    d.down_bw = spec.down_bw;
    d.level = spec.level;
    d.rate_per_mips = spec.rate_per_mips;
    d.busy_power = spec.busy_power;
    d.idle_power = spec.idle_power;
    d.parent = parent_id;
    d.uplink_latency_ms = spec.uplink_latency_ms;
    d.x = spec.x;
    d.y = spec.y;
    devices_.push_back(d);
    by_name_[d.name] = d.id;
    return d.id;
}

int Topology::attach_sensor(Sensor sensor) {
    if (sensor.gateway < 0 || sensor.gateway >= static_cast<DeviceId>(devices_.size())) {
        reject("sensor '" + sensor.name + "' rejected: unknown gateway device");
    }
    if (sensor.name != sensor.tuple_type) {
        reject("sensor '" + sensor.name + "' rejected: sensor name and emitted tuple type must be equal (got type '" +
               sensor.tuple_type + "')");
    }
    if (!(sensor.emission_interval_ms > 0.0)) {
        reject("sensor '" + sensor.name + "' rejected: emission interval must be positive");
    }
    sensors_.push_back(std::move(sensor));
    return static_cast<int>(sensors_.size()) - 1;
}

int Topology::attach_actuator(Actuator actuator) {
    if (actuator.gateway < 0 || actuator.gateway >= static_cast<DeviceId>(devices_.size())) {
        reject("actuator '" + actuator.name + "' rejected: unknown gateway device");
    }
    actuators_.push_back(std::move(actuator));
    return static_cast<int>(actuators_.size()) - 1;
}

const FogDevice& Topology::device(DeviceId id) const {
    if (id < 0 || id >= static_cast<DeviceId>(devices_.size())) {
        throw SimError(ErrorClass::runtime_fault, "unknown device id " + std::to_string(id));
    }
    return devices_[id];
}

DeviceId Topology::find_by_name(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? kNoDevice : it->second;
}

double Topology::euclidean_distance(DeviceId a, DeviceId b) const {
    const FogDevice& da = device(a);
    const FogDevice& db = device(b);
    return std::sqrt((da.x - db.x) * (da.x - db.x) + (da.y - db.y) * (da.y - db.y));
}

void Topology::select_gateways(const ClusterConfig& cfg) {
    for (auto& d : devices_) {
        if (d.level == 0 || d.parent != kNoDevice) continue;
        double min_distance = cfg.max_number;
        DeviceId chosen = kNoDevice;
        for (const auto& candidate : devices_) {
            if (candidate.level != d.level - 1) continue;
            double distance = euclidean_distance(d.id, candidate.id);
            if (distance < min_distance) {
                min_distance = distance;
                chosen = candidate.id;
            }
        }
        if (chosen == kNoDevice) {
            reject("gateway selection failed for device '" + d.name + "': no candidate at level " +
                   std::to_string(d.level - 1));
        }
        d.parent = chosen;
    }
}

std::map<int, std::vector<DeviceId>> Topology::form_clusters(int level, const ClusterConfig& cfg) const {
    std::vector<DeviceId> members;
    for (const auto& d : devices_) {
        if (d.level == level) members.push_back(d.id);
    }

    // Union-find over the level's devices; merging makes the result
    // independent of pair enumeration order.
    std::vector<std::size_t> parent(members.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    auto unite = [&](std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };

    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            const FogDevice& a = devices_[members[i]];
            const FogDevice& b = devices_[members[j]];
            if (a.parent == b.parent && euclidean_distance(a.id, b.id) < cfg.cluster_distance) {
                unite(i, j);
            }
        }
    }

    std::map<int, std::vector<DeviceId>> clusters;
    std::map<std::size_t, int> cluster_of_root;
    int next_cluster = 1;
    for (std::size_t i = 0; i < members.size(); ++i) {
        std::size_t r = find(i);
        auto it = cluster_of_root.find(r);
        if (it == cluster_of_root.end()) {
            it = cluster_of_root.emplace(r, next_cluster++).first;
        }
        clusters[it->second].push_back(members[i]);
    }
    return clusters;
}

void Topology::set_parent(DeviceId device_id, DeviceId new_parent) {
    device(device_id);
    device(new_parent);
    devices_[device_id].parent = new_parent;
}

bool Topology::is_leaf(DeviceId id) const {
    device(id);
    for (const auto& d : devices_) {
        if (d.parent == id) return false;
    }
    return true;
}

std::vector<DeviceId> Topology::children(DeviceId id) const {
    device(id);
    std::vector<DeviceId> out;
    for (const auto& d : devices_) {
        if (d.parent == id) out.push_back(d.id);
    }
    return out;
}

DeviceId Topology::root() const {
    for (const auto& d : devices_) {
        if (d.level == 0) return d.id;
    }
    return kNoDevice;
}

std::vector<std::string> Topology::validate() const {
    std::vector<std::string> violations;
    int roots = 0;
    for (const auto& d : devices_) {
        if (d.level == 0) {
            ++roots;
            if (d.parent != kNoDevice) {
                violations.push_back("device '" + d.name + "': level-0 device must not have a parent");
            }
        } else if (d.parent == kNoDevice) {
            violations.push_back("device '" + d.name + "': no parent assigned (level " +
                                 std::to_string(d.level) + ")");
        } else if (devices_[d.parent].level != d.level - 1) {
            violations.push_back("device '" + d.name + "': parent level " +
                                 std::to_string(devices_[d.parent].level) + " is not level-1 = " +
                                 std::to_string(d.level - 1));
        }
        if (!(d.up_bw > 0.0)) violations.push_back("device '" + d.name + "': up_bw must be positive");
        if (!(d.down_bw > 0.0)) violations.push_back("device '" + d.name + "': down_bw must be positive");
    }
    if (roots != 1) {
        violations.push_back("topology must contain exactly one level-0 device, found " +
                             std::to_string(roots));
    }

    // Cycle check: every device must reach the root in at most n hops.
    const std::size_t n = devices_.size();
    for (const auto& d : devices_) {
        DeviceId cursor = d.id;
        std::size_t hops = 0;
        while (cursor != kNoDevice && hops <= n) {
            cursor = devices_[cursor].parent;
            ++hops;
        }
        if (hops > n) {
            violations.push_back("device '" + d.name + "': parent chain contains a cycle");
            break;
        }
    }

    for (const auto& s : sensors_) {
        if (s.name != s.tuple_type) {
            violations.push_back("sensor '" + s.name + "': name and tuple type differ");
        }
        if (!is_leaf(s.gateway)) {
            violations.push_back("sensor '" + s.name + "': gateway device '" +
                                 devices_[s.gateway].name + "' is not a leaf device");
        }
        if (!(s.emission_interval_ms > 0.0)) {
            violations.push_back("sensor '" + s.name + "': emission interval must be positive");
        }
    }
    for (const auto& a : actuators_) {
        if (a.gateway < 0 || a.gateway >= static_cast<DeviceId>(devices_.size())) {
            violations.push_back("actuator '" + a.name + "': unknown gateway device");
        }
    }
    return violations;
}

}  // namespace fogsim
