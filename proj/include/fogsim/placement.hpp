#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fogsim/app_model.hpp"
#include "fogsim/topology.hpp"

namespace fogsim {

struct ModuleInstance {
    std::string module;
    DeviceId host = kNoDevice;
    std::optional<DeviceId> client_scope;  // set when the instance serves one end device
    double allocated_mips = 0.0;
};

struct Placement {
    std::vector<ModuleInstance> instances;
    std::map<DeviceId, double> used_mips;

    void add(ModuleInstance instance);
    double used(DeviceId device) const;

    /// Rebuilds the ledger from the instance list; used by consistency checks.
    std::map<DeviceId, double> recompute_ledger() const;
};

struct PinEntry {
    std::string module;
    std::string device;
};

using PinList = std::vector<PinEntry>;

/// Appends one pin after checking both names resolve.
PinList pin_module(PinList pins, const std::string& module, const std::string& device,
                   const Application& app, const Topology& topo);

/// Strict capacity test: used + base + extra < device.mips.
bool capacity_check(const FogDevice& device, double used_mips, double base_mips, double extra_mips);

Placement cloud_only_place(const Application& app, const Topology& topo, const PinList& pins);
Placement edge_ward_place(const Application& app, const Topology& topo, const PinList& pins);

/// Places one module per end device: each level-1 device takes its
/// children in ascending-deadline order and hosts an instance while the
/// strict capacity test passes; later children fall back to the level-1
/// device's parent with no capacity check.
Placement deadline_aware_place(const Application& app, const Topology& topo, const PinList& pins,
                               const std::string& module_to_place);

}  // namespace fogsim
