#include "fogsim/app_model.hpp"

#include <algorithm>
#include <set>

namespace fogsim {

namespace {

[[noreturn]] void reject(const std::string& message) {
    throw SimError(ErrorClass::validation, message);
}

bool is_subsequence(const std::vector<std::string>& needle, const std::vector<std::string>& haystack) {
    std::size_t i = 0;
    for (const auto& item : haystack) {
        if (i < needle.size() && needle[i] == item) ++i;
    }
    return i == needle.size();
}

}  // namespace

std::string_view to_string(Direction d) {
    return d == Direction::up ? "UP" : "DOWN";
}

std::string_view to_string(EdgeKind k) {
    switch (k) {
        case EdgeKind::sensor: return "SENSOR";
        case EdgeKind::module: return "MODULE";
        case EdgeKind::actuator: return "ACTUATOR";
    }
    return "unknown";
}

std::string trim_type(std::string_view text) {
    const char* ws = " \t\r\n";
    auto begin = text.find_first_not_of(ws);
    if (begin == std::string_view::npos) return "";
    auto end = text.find_last_not_of(ws);
    return std::string(text.substr(begin, end - begin + 1));
}

void Application::add_module(const std::string& name, double ram, double mips, double size, double bw) {
    if (module_by_name(name)) reject("module '" + name + "' rejected: duplicate name");
    if (!(mips > 0.0)) reject("module '" + name + "' rejected: mips must be positive");
    modules_.push_back(AppModule{name, ram, mips, size, bw});
}

void Application::add_edge(const std::string& source, const std::string& destination,
                           double cpu_length_mi, double nw_length_kb, const std::string& tuple_type,
                           Direction direction, EdgeKind kind, std::optional<double> period_ms) {
    if (edge_by_tuple_type(tuple_type)) {
        reject("edge rejected: tuple type '" + tuple_type + "' already defined by another edge");
    }
    if (cpu_length_mi < 0.0 || nw_length_kb < 0.0) {
        reject("edge '" + tuple_type + "' rejected: lengths must be non-negative");
    }
    switch (kind) {
        case EdgeKind::module:
            if (!module_by_name(source)) reject("edge '" + tuple_type + "' rejected: unknown source module '" + source + "'");
            if (!module_by_name(destination)) reject("edge '" + tuple_type + "' rejected: unknown destination module '" + destination + "'");
            break;
        case EdgeKind::sensor:
            if (!module_by_name(destination)) reject("edge '" + tuple_type + "' rejected: unknown destination module '" + destination + "'");
            if (trim_type(source) != trim_type(tuple_type)) {
                reject("edge '" + tuple_type + "' rejected: sensor edge source must equal its tuple type");
            }
            break;
        case EdgeKind::actuator:
            if (!module_by_name(source)) reject("edge '" + tuple_type + "' rejected: unknown source module '" + source + "'");
            break;
    }
    if (period_ms && !(*period_ms > 0.0)) {
        reject("edge '" + tuple_type + "' rejected: period must be positive");
    }
    edges_.push_back(AppEdge{source, destination, cpu_length_mi, nw_length_kb, tuple_type, direction,
                             kind, period_ms});
}

void Application::add_tuple_mapping(const std::string& module, const std::string& input_type,
                                    const std::string& output_type, double selectivity) {
    if (!module_by_name(module)) reject("mapping rejected: unknown module '" + module + "'");
    const AppEdge* edge = edge_by_tuple_type(output_type);
    if (!edge || edge->source != module) {
        reject("mapping rejected: module '" + module + "' has no outgoing edge of type '" +
               output_type + "'");
    }
    if (selectivity < 0.0 || selectivity > 1.0) {
        reject("mapping rejected: selectivity " + std::to_string(selectivity) + " outside [0, 1]");
    }
    mappings_.push_back(TupleMapping{module, trim_type(input_type), output_type, selectivity});
}

void Application::add_loop(std::vector<std::string> sequence) {
    loops_.push_back(AppLoop{std::move(sequence)});
}

void Application::set_deadline(DeviceId end_device, const std::string& module, double deadline_ms) {
    deadline_info_[end_device][module] = deadline_ms;
}

void Application::set_additional_mips(DeviceId end_device, const std::string& module, double extra_mips) {
    additional_mips_info_[end_device][module] = extra_mips;
}

std::optional<double> Application::deadline(DeviceId end_device, const std::string& module) const {
    auto it = deadline_info_.find(end_device);
    if (it == deadline_info_.end()) return std::nullopt;
    auto jt = it->second.find(module);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

std::optional<double> Application::additional_mips(DeviceId end_device, const std::string& module) const {
    auto it = additional_mips_info_.find(end_device);
    if (it == additional_mips_info_.end()) return std::nullopt;
    auto jt = it->second.find(module);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

const AppModule* Application::module_by_name(const std::string& name) const {
    for (const auto& m : modules_) {
        if (m.name == name) return &m;
    }
    return nullptr;
}

const AppEdge* Application::edge_by_tuple_type(const std::string& tuple_type) const {
    const std::string wanted = trim_type(tuple_type);
    for (const auto& e : edges_) {
        if (trim_type(e.tuple_type) == wanted) return &e;
    }
    return nullptr;
}

const AppEdge* Application::loop_edge(const std::string& from, const std::string& to) const {
    for (const auto& e : edges_) {
        if (e.source == from && e.destination == to) return &e;
    }
    const AppEdge* sole_actuator = nullptr;
    int actuator_edges = 0;
    for (const auto& e : edges_) {
        if (e.kind != EdgeKind::actuator || e.source != from) continue;
        ++actuator_edges;
        sole_actuator = &e;
        if (trim_type(e.tuple_type) == trim_type(to)) return &e;
    }
    return actuator_edges == 1 ? sole_actuator : nullptr;
}

std::vector<std::string> Application::loop_modules(const AppLoop& loop) const {
    std::vector<std::string> out;
    for (const auto& name : loop.sequence) {
        if (module_by_name(name)) out.push_back(name);
    }
    return out;
}

std::vector<Tuple> Application::derive(const std::string& module, const Tuple& input, RngStream& rng,
                                       TupleId& next_tuple_id, SimTime now) const {
    std::vector<Tuple> out;
    const std::string input_type = trim_type(input.tuple_type);
    for (const auto& mapping : mappings_) {
        if (mapping.module != module || mapping.input_type != input_type) continue;
        bool emit;
        if (mapping.selectivity >= 1.0) {
            emit = true;
        } else if (mapping.selectivity <= 0.0) {
            emit = false;
        } else {
            emit = rng.next_double() < mapping.selectivity;
        }
        if (!emit) continue;
        const AppEdge* edge = edge_by_tuple_type(mapping.output_type);
        if (!edge) continue;  // validate() reports this configuration defect
        Tuple t;
        t.id = next_tuple_id++;
        t.lineage = input.lineage;
        t.tuple_type = edge->tuple_type;
        t.direction = edge->direction;
        t.kind = edge->kind;
        t.cpu_length_mi = edge->cpu_length_mi;
        t.nw_length_kb = edge->nw_length_kb;
        t.source_module = module;
        t.dest_module = edge->destination;
        t.origin_device = input.origin_device;
        t.emitted_at = now;
        t.down_path = input.down_path;
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<std::string> Application::validate() const {
    std::vector<std::string> violations;

    std::set<std::string> names;
    for (const auto& m : modules_) {
        if (!names.insert(m.name).second) {
            violations.push_back("duplicate module name '" + m.name + "'");
        }
        if (!(m.mips > 0.0)) violations.push_back("module '" + m.name + "': mips must be positive");
    }

    std::set<std::string> tuple_types;
    for (const auto& e : edges_) {
        if (!tuple_types.insert(trim_type(e.tuple_type)).second) {
            violations.push_back("duplicate edge tuple type '" + e.tuple_type + "'");
        }
        if (e.cpu_length_mi < 0.0 || e.nw_length_kb < 0.0) {
            violations.push_back("edge '" + e.tuple_type + "': lengths must be non-negative");
        }
        switch (e.kind) {
            case EdgeKind::module:
                if (!module_by_name(e.source)) violations.push_back("edge '" + e.tuple_type + "': unknown source module '" + e.source + "'");
                if (!module_by_name(e.destination)) violations.push_back("edge '" + e.tuple_type + "': unknown destination module '" + e.destination + "'");
                break;
            case EdgeKind::sensor:
                if (!module_by_name(e.destination)) violations.push_back("edge '" + e.tuple_type + "': unknown destination module '" + e.destination + "'");
                if (trim_type(e.source) != trim_type(e.tuple_type)) {
                    violations.push_back("edge '" + e.tuple_type + "': sensor edge source must equal the tuple type");
                }
                break;
            case EdgeKind::actuator:
                if (!module_by_name(e.source)) violations.push_back("edge '" + e.tuple_type + "': unknown source module '" + e.source + "'");
                break;
        }
    }

    for (const auto& m : mappings_) {
        if (!module_by_name(m.module)) {
            violations.push_back("mapping '" + m.input_type + "' -> '" + m.output_type +
                                 "': unknown module '" + m.module + "'");
        }
        const AppEdge* edge = edge_by_tuple_type(m.output_type);
        if (!edge || edge->source != m.module) {
            violations.push_back("mapping '" + m.input_type + "' -> '" + m.output_type +
                                 "': module '" + m.module + "' has no outgoing edge of that type");
        }
        if (m.selectivity < 0.0 || m.selectivity > 1.0) {
            violations.push_back("mapping '" + m.input_type + "' -> '" + m.output_type +
                                 "': selectivity outside [0, 1]");
        }
    }

    for (std::size_t i = 0; i < loops_.size(); ++i) {
        const auto& seq = loops_[i].sequence;
        if (seq.size() < 2) {
            violations.push_back("loop " + std::to_string(i) + ": needs at least two elements");
            continue;
        }
        for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
            if (!loop_edge(seq[k], seq[k + 1])) {
                violations.push_back("loop " + std::to_string(i) + ": no edge for pair '" + seq[k] +
                                     "' -> '" + seq[k + 1] + "'");
            }
        }
    }

    // Two loops that end in the same tuple type where one module sequence
    // contains the other cannot be attributed unambiguously.
    for (std::size_t i = 0; i < loops_.size(); ++i) {
        for (std::size_t j = 0; j < loops_.size(); ++j) {
            if (i == j) continue;
            const auto& a = loops_[i].sequence;
            const auto& b = loops_[j].sequence;
            if (a.size() < 2 || b.size() < 2) continue;
            const AppEdge* ea = loop_edge(a[a.size() - 2], a.back());
            const AppEdge* eb = loop_edge(b[b.size() - 2], b.back());
            if (!ea || !eb || trim_type(ea->tuple_type) != trim_type(eb->tuple_type)) continue;
            if (is_subsequence(loop_modules(loops_[i]), loop_modules(loops_[j]))) {
                violations.push_back("loops " + std::to_string(i) + " and " + std::to_string(j) +
                                     " share terminal type '" + ea->tuple_type +
                                     "' and overlapping module sequences; attribution is ambiguous");
            }
        }
    }

    for (const auto& [device, per_module] : deadline_info_) {
        for (const auto& [module, value] : per_module) {
            if (!(value > 0.0)) {
                violations.push_back("deadline for module '" + module + "' on device " +
                                     std::to_string(device) + " must be positive");
            }
        }
    }
    return violations;
}

namespace {

// Modules declared with only a RAM figure take the toolkit defaults for
// the remaining resources.
constexpr double kDefaultModuleMips = 1000.0;
constexpr double kDefaultModuleSize = 10000.0;
constexpr double kDefaultModuleBw = 1000.0;

Application make_master_worker() {
    Application app("master_worker");
    app.add_module("MasterModule", 10, kDefaultModuleMips, kDefaultModuleSize, kDefaultModuleBw);
    app.add_module("WorkerModule-1", 10, kDefaultModuleMips, kDefaultModuleSize, kDefaultModuleBw);
    app.add_module("WorkerModule-2", 10, kDefaultModuleMips, kDefaultModuleSize, kDefaultModuleBw);
    app.add_module("WorkerModule-3", 10, kDefaultModuleMips, kDefaultModuleSize, kDefaultModuleBw);

    app.add_edge("Sensor", "MasterModule", 3000, 500, "Sensor", Direction::up, EdgeKind::sensor);
    app.add_edge("MasterModule", "WorkerModule-1", 100, 1000, "Task-1", Direction::up, EdgeKind::module);
    app.add_edge("MasterModule", "WorkerModule-2", 100, 1000, "Task-2", Direction::up, EdgeKind::module);
    app.add_edge("MasterModule", "WorkerModule-3", 100, 1000, "Task-3", Direction::up, EdgeKind::module);
    app.add_edge("WorkerModule-1", "MasterModule", 20, 50, "Response-1", Direction::down, EdgeKind::module);
    app.add_edge("WorkerModule-2", "MasterModule", 20, 50, "Response-2", Direction::down, EdgeKind::module);
    app.add_edge("WorkerModule-3", "MasterModule", 20, 50, "Response-3", Direction::down, EdgeKind::module);
    app.add_edge("MasterModule", "Actuators", 100, 50, "OutputData", Direction::down, EdgeKind::actuator);

    app.add_tuple_mapping("MasterModule", " Sensor ", "Task-1", 0.3);
    app.add_tuple_mapping("MasterModule", " Sensor ", "Task-2", 0.3);
    app.add_tuple_mapping("MasterModule", " Sensor ", "Task-3", 0.3);
    app.add_tuple_mapping("WorkerModule-1", "Task-1", "Response-1", 1.0);
    app.add_tuple_mapping("WorkerModule-2", "Task-2", "Response-2", 1.0);
    app.add_tuple_mapping("WorkerModule-3", "Task-3", "Response-3", 1.0);
    app.add_tuple_mapping("MasterModule", "Response-1", "OutputData", 0.3);
    app.add_tuple_mapping("MasterModule", "Response-2", "OutputData", 0.3);
    app.add_tuple_mapping("MasterModule", "Response-3", "OutputData", 0.3);

    app.add_loop({"Sensor", "MasterModule", "WorkerModule-1", "MasterModule", "Actuator"});
    app.add_loop({"Sensor", "MasterModule", "WorkerModule-2", "MasterModule", "Actuator"});
    app.add_loop({"Sensor", "MasterModule", "WorkerModule-3", "MasterModule", "Actuator"});
    return app;
}

Application make_sequential() {
    Application app("sequential");
    app.add_module("Module1", 10, kDefaultModuleMips, kDefaultModuleSize, kDefaultModuleBw);
    app.add_module("Module2", 10, kDefaultModuleMips, kDefaultModuleSize, kDefaultModuleBw);
    app.add_module("Module3", 10, kDefaultModuleMips, kDefaultModuleSize, kDefaultModuleBw);
    app.add_module("Module4", 10, kDefaultModuleMips, kDefaultModuleSize, kDefaultModuleBw);

    app.add_edge("Sensor", "Module1", 3000, 500, "Sensor", Direction::up, EdgeKind::sensor);
    app.add_edge("Module1", "Module2", 100, 1000, "ProcessedData-1", Direction::up, EdgeKind::module);
    app.add_edge("Module2", "Module3", 100, 1000, "ProcessedData-2", Direction::up, EdgeKind::module);
    app.add_edge("Module3", "Module4", 100, 1000, "ProcessedData-3", Direction::up, EdgeKind::module);
    app.add_edge("Module4", "Module1", 100, 1000, "ProcessedData-4", Direction::down, EdgeKind::module);
    app.add_edge("Module1", "Actuators", 100, 50, "OutputData", Direction::down, EdgeKind::actuator);

    app.add_tuple_mapping("Module1", "Sensor", "ProcessedData-1", 1.0);
    app.add_tuple_mapping("Module2", "ProcessedData-1", "ProcessedData-2", 1.0);
    app.add_tuple_mapping("Module3", "ProcessedData-2", "ProcessedData-3", 1.0);
    app.add_tuple_mapping("Module4", "ProcessedData-3", "ProcessedData-4", 1.0);
    app.add_tuple_mapping("Module1", "ProcessedData-4", "OutputData", 1.0);

    app.add_loop({"Sensor", "Module1", "Module2", "Module3", "Module4", "Module1", "Actuator"});
    return app;
}

Application make_client_main() {
    Application app("client_main");
    app.add_module("ClientModule", 20, 500, 1024, 1500);
    app.add_module("MainModule", 100, 1200, 4000, 100);

    app.add_edge("Sensor", "ClientModule", 3000, 500, "Sensor", Direction::up, EdgeKind::sensor);
    app.add_edge("ClientModule", "MainModule", 100, 1000, "PreProcessedData", Direction::up, EdgeKind::module);
    app.add_edge("MainModule", "ClientModule", 100, 1000, "ProcessedData", Direction::down, EdgeKind::module);
    app.add_edge("ClientModule", "Actuators", 100, 50, "OutputData", Direction::down, EdgeKind::actuator);

    app.add_tuple_mapping("ClientModule", "Sensor", "PreProcessedData", 1.0);
    app.add_tuple_mapping("MainModule", "PreProcessedData", "ProcessedData", 1.0);
    app.add_tuple_mapping("ClientModule", "ProcessedData", "OutputData", 1.0);

    // The published sketch of this loop skips the return hop through
    // ClientModule; the dataflow requires it for every pair to map to an
    // edge, so the loop follows the actual route.
    app.add_loop({"Sensor", "ClientModule", "MainModule", "ClientModule", "Actuator"});
    return app;
}

Application make_deadline_test() {
    Application app("deadline_test");
    app.add_module("clientModule", 10, 1000, 1000, 100);
    app.add_module("mainModule", 50, 1500, 4000, 800);
    app.add_module("storageModule", 10, 50, 12000, 100);

    app.add_edge("IoTSensor", "clientModule", 100, 200, "IoTSensor", Direction::up, EdgeKind::sensor);
    app.add_edge("clientModule", "mainModule", 6000, 600, "RawData", Direction::up, EdgeKind::module);
    app.add_edge("mainModule", "storageModule", 1000, 300, "StoreData", Direction::up, EdgeKind::module);
    app.add_edge("mainModule", "clientModule", 100, 50, "ResultData", Direction::down, EdgeKind::module);
    app.add_edge("clientModule", "IoTActuator", 100, 50, "Response", Direction::down, EdgeKind::actuator);

    app.add_tuple_mapping("clientModule", "IoTSensor", "RawData", 1.0);
    app.add_tuple_mapping("mainModule", "RawData", "ResultData", 1.0);
    app.add_tuple_mapping("mainModule", "RawData", "StoreData", 1.0);
    app.add_tuple_mapping("clientModule", "ResultData", "Response", 1.0);

    app.add_loop({"IoTSensor", "clientModule", "mainModule", "clientModule", "IoTActuator"});
    return app;
}

}  // namespace

Application builtin_application(const std::string& name) {
    if (name == "master_worker") return make_master_worker();
    if (name == "sequential") return make_sequential();
    if (name == "client_main") return make_client_main();
    if (name == "deadline_test") return make_deadline_test();
    throw SimError(ErrorClass::validation,
                   "unknown builtin application '" + name +
                       "'; valid names: master_worker, sequential, client_main, deadline_test");
}

}  // namespace fogsim
