#include "fogsim/placement.hpp"

#include <algorithm>

namespace fogsim {

namespace {

[[noreturn]] void reject(const std::string& message) {
    throw SimError(ErrorClass::validation, message);
}

Placement apply_pins(const Application& app, const Topology& topo, const PinList& pins) {
    Placement placement;
    for (const auto& pin : pins) {
        const AppModule* module = app.module_by_name(pin.module);
        if (!module) reject("pin rejected: unknown module '" + pin.module + "'");
        DeviceId host = topo.find_by_name(pin.device);
        if (host == kNoDevice) reject("pin rejected: unknown device '" + pin.device + "'");

        ModuleInstance instance;
        instance.module = module->name;
        instance.host = host;
        double extra = 0.0;
        if (topo.is_leaf(host)) {
            instance.client_scope = host;
            extra = app.additional_mips(host, module->name).value_or(0.0);
        }
        instance.allocated_mips = module->mips + extra;
        placement.add(std::move(instance));
    }
    return placement;
}

bool has_pin(const PinList& pins, const std::string& module) {
    return std::any_of(pins.begin(), pins.end(),
                       [&](const PinEntry& p) { return p.module == module; });
}

// Modules in the order a loop walks them from the sensor end, followed by
// any module no loop mentions, in registration order.
std::vector<std::string> module_order(const Application& app) {
    std::vector<std::string> order;
    auto push_unique = [&](const std::string& name) {
        if (std::find(order.begin(), order.end(), name) == order.end()) order.push_back(name);
    };
    for (const auto& loop : app.loops()) {
        for (const auto& name : app.loop_modules(loop)) push_unique(name);
    }
    for (const auto& m : app.modules()) push_unique(m.name);
    return order;
}

std::vector<DeviceId> path_to_root(const Topology& topo, DeviceId leaf) {
    std::vector<DeviceId> path;
    for (DeviceId cursor = leaf; cursor != kNoDevice; cursor = topo.device(cursor).parent) {
        path.push_back(cursor);
    }
    return path;
}

void require_all_modules_placed(const Application& app, const Placement& placement,
                                const std::string& policy) {
    for (const auto& m : app.modules()) {
        bool placed = std::any_of(placement.instances.begin(), placement.instances.end(),
                                  [&](const ModuleInstance& i) { return i.module == m.name; });
        if (!placed) {
            reject("placement policy '" + policy + "' left module '" + m.name +
                   "' without an instance; pin it or choose another policy");
        }
    }
}

}  // namespace

void Placement::add(ModuleInstance instance) {
    used_mips[instance.host] += instance.allocated_mips;
    instances.push_back(std::move(instance));
}

double Placement::used(DeviceId device) const {
    auto it = used_mips.find(device);
    return it == used_mips.end() ? 0.0 : it->second;
}

std::map<DeviceId, double> Placement::recompute_ledger() const {
    std::map<DeviceId, double> ledger;
    for (const auto& instance : instances) {
        ledger[instance.host] += instance.allocated_mips;
    }
    return ledger;
}

PinList pin_module(PinList pins, const std::string& module, const std::string& device,
                   const Application& app, const Topology& topo) {
    if (!app.module_by_name(module)) reject("pin rejected: unknown module '" + module + "'");
    if (topo.find_by_name(device) == kNoDevice) reject("pin rejected: unknown device '" + device + "'");
    pins.push_back(PinEntry{module, device});
    return pins;
}

bool capacity_check(const FogDevice& device, double used_mips, double base_mips, double extra_mips) {
    return used_mips + base_mips + extra_mips < device.mips;
}

Placement cloud_only_place(const Application& app, const Topology& topo, const PinList& pins) {
    Placement placement = apply_pins(app, topo, pins);
    DeviceId cloud = topo.root();
    if (cloud == kNoDevice) reject("cloud_only placement requires a level-0 device");
    for (const auto& m : app.modules()) {
        if (has_pin(pins, m.name)) continue;
        placement.add(ModuleInstance{m.name, cloud, std::nullopt, m.mips});
    }
    return placement;
}

Placement edge_ward_place(const Application& app, const Topology& topo, const PinList& pins) {
    Placement placement = apply_pins(app, topo, pins);
    const std::vector<std::string> order = module_order(app);

    std::vector<DeviceId> leaves;
    for (const auto& d : topo.devices()) {
        if (topo.is_leaf(d.id)) leaves.push_back(d.id);
    }

    for (DeviceId leaf : leaves) {
        const std::vector<DeviceId> path = path_to_root(topo, leaf);
        std::size_t prev = 0;  // index into path of the predecessor's host

        auto index_on_path = [&](DeviceId host) -> std::optional<std::size_t> {
            auto it = std::find(path.begin(), path.end(), host);
            if (it == path.end()) return std::nullopt;
            return static_cast<std::size_t>(it - path.begin());
        };

        for (const auto& name : order) {
            const AppModule* module = app.module_by_name(name);

            // Reuse any instance of this module already sitting on the
            // path (pinned or previously placed); placement never goes
            // below the predecessor's host.
            std::optional<std::size_t> existing;
            for (const auto& instance : placement.instances) {
                if (instance.module != name) continue;
                if (instance.client_scope && *instance.client_scope != leaf) continue;
                auto idx = index_on_path(instance.host);
                if (idx && (!existing || *idx < *existing)) existing = idx;
            }
            if (existing) {
                prev = std::max(prev, *existing);
                continue;
            }
            if (has_pin(pins, name)) continue;  // pinned elsewhere, off this path

            bool placed = false;
            for (std::size_t j = prev; j < path.size(); ++j) {
                const FogDevice& d = topo.device(path[j]);
                if (d.mips - placement.used(d.id) >= module->mips) {
                    placement.add(ModuleInstance{name, d.id, std::nullopt, module->mips});
                    prev = j;
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                const FogDevice& root = topo.device(path.back());
                double deficit = module->mips - (root.mips - placement.used(root.id));
                reject("edge_ward placement failed: module '" + name + "' needs " +
                       std::to_string(module->mips) + " MI/s; even '" + root.name +
                       "' is short by " + std::to_string(deficit) + " MI/s");
            }
        }
    }
    require_all_modules_placed(app, placement, "edge_ward");
    return placement;
}

Placement deadline_aware_place(const Application& app, const Topology& topo, const PinList& pins,
                               const std::string& module_to_place) {
    const AppModule* module = app.module_by_name(module_to_place);
    if (!module) reject("deadline_aware placement: unknown module '" + module_to_place + "'");
    Placement placement = apply_pins(app, topo, pins);

    for (const auto& gateway : topo.devices()) {
        if (gateway.level != 1) continue;

        std::vector<DeviceId> children;
        for (DeviceId child : topo.children(gateway.id)) {
            if (topo.is_leaf(child)) children.push_back(child);
        }

        std::vector<std::pair<double, DeviceId>> ordered;
        for (DeviceId child : children) {
            auto deadline = app.deadline(child, module_to_place);
            if (!deadline) {
                reject("deadline_aware placement: no deadline for module '" + module_to_place +
                       "' on device '" + topo.device(child).name + "'");
            }
            ordered.emplace_back(*deadline, child);
        }
        std::stable_sort(ordered.begin(), ordered.end());

        for (const auto& [deadline, child] : ordered) {
            auto extra = app.additional_mips(child, module_to_place);
            if (!extra) {
                reject("deadline_aware placement: no additional-mips entry for module '" +
                       module_to_place + "' on device '" + topo.device(child).name + "'");
            }
            const double need = module->mips + *extra;
            DeviceId host;
            if (capacity_check(gateway, placement.used(gateway.id), module->mips, *extra)) {
                host = gateway.id;
            } else {
                // Published policy: overflow lands on the gateway's parent
                // unconditionally.
                host = gateway.parent;
                if (host == kNoDevice) {
                    reject("deadline_aware placement: gateway '" + gateway.name +
                           "' is full and has no parent to overflow to");
                }
            }
            placement.add(ModuleInstance{module_to_place, host, child, need});
        }
    }
    require_all_modules_placed(app, placement, "deadline_aware");
    return placement;
}

}  // namespace fogsim
