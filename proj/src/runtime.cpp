#include "fogsim/runtime.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>

#include <json.hpp>

namespace fogsim {

namespace {

using ordered_json = nlohmann::ordered_json;

bool is_subsequence(const std::vector<std::string>& needle, const std::vector<std::string>& haystack) {
    std::size_t i = 0;
    for (const auto& item : haystack) {
        if (i < needle.size() && needle[i] == item) ++i;
    }
    return i == needle.size();
}

}  // namespace

std::string LogRecord::to_jsonl() const {
    ordered_json j;
    j["t"] = t;
    j["kind"] = kind;
    if (device != kNoDevice) j["device"] = device;
    if (to != kNoDevice) j["to"] = to;
    if (tuple >= 0) j["tuple"] = tuple;
    if (lineage >= 0) j["lineage"] = lineage;
    if (!tuple_type.empty()) j["type"] = tuple_type;
    if (direction) j["dir"] = *direction;
    if (nw_kb) j["nw_kb"] = *nw_kb;
    if (latency_ms) j["latency_ms"] = *latency_ms;
    if (start_ms) j["start_ms"] = *start_ms;
    if (arrive_ms) j["arrive_ms"] = *arrive_ms;
    if (cpu_mi) j["cpu_mi"] = *cpu_mi;
    if (enqueued_ms) j["enqueued_ms"] = *enqueued_ms;
    if (utilization) j["u"] = *utilization;
    if (old_parent) j["old_parent"] = *old_parent;
    if (new_parent) j["new_parent"] = *new_parent;
    if (level_warning) j["level_warning"] = *level_warning;
    return j.dump();
}

LogRecord LogRecord::from_jsonl(const std::string& line) {
    ordered_json j = ordered_json::parse(line);
    LogRecord rec;
    rec.t = j.at("t").get<double>();
    rec.kind = j.at("kind").get<std::string>();
    if (j.contains("device")) rec.device = j["device"].get<DeviceId>();
    if (j.contains("to")) rec.to = j["to"].get<DeviceId>();
    if (j.contains("tuple")) rec.tuple = j["tuple"].get<TupleId>();
    if (j.contains("lineage")) rec.lineage = j["lineage"].get<LineageId>();
    if (j.contains("type")) rec.tuple_type = j["type"].get<std::string>();
    if (j.contains("dir")) rec.direction = j["dir"].get<std::string>();
    if (j.contains("nw_kb")) rec.nw_kb = j["nw_kb"].get<double>();
    if (j.contains("latency_ms")) rec.latency_ms = j["latency_ms"].get<double>();
    if (j.contains("start_ms")) rec.start_ms = j["start_ms"].get<double>();
    if (j.contains("arrive_ms")) rec.arrive_ms = j["arrive_ms"].get<double>();
    if (j.contains("cpu_mi")) rec.cpu_mi = j["cpu_mi"].get<double>();
    if (j.contains("enqueued_ms")) rec.enqueued_ms = j["enqueued_ms"].get<double>();
    if (j.contains("u")) rec.utilization = j["u"].get<double>();
    if (j.contains("old_parent")) rec.old_parent = j["old_parent"].get<DeviceId>();
    if (j.contains("new_parent")) rec.new_parent = j["new_parent"].get<DeviceId>();
    if (j.contains("level_warning")) rec.level_warning = j["level_warning"].get<bool>();
    return rec;
}

void StreamLogSink::record(const LogRecord& rec) {
    out_ << rec.to_jsonl() << '\n';
}

namespace {

struct InstanceState {
    std::deque<Tuple> pending;
    bool serving = false;
};

struct LinkState {
    SimTime up_busy_until = 0.0;
    SimTime down_busy_until = 0.0;
};

struct LineageState {
    SimTime emitted_at = 0.0;
    bool loop_eligible = false;  // periodic tuples never complete loops
    std::vector<std::string> visited_modules;
};

class SimulationRun {
public:
    SimulationRun(CompiledScenario& compiled, EventLogSink* log)
        : compiled_(compiled),
          topo_(compiled.topology),
          app_(compiled.app),
          metrics_(compiled.topology, compiled.app),
          selectivity_rng_(RngStream::named(compiled.seed, "selectivity")),
          log_(log) {
        instances_.resize(compiled_.placement.instances.size());
        serving_mips_.resize(topo_.device_count(), 0.0);
        links_.resize(topo_.device_count());
    }

    MetricsReport run() {
        validate_run_config();
        schedule_initial_events();
        kernel_.run_until(compiled_.horizon_ms);
        if (log_) {
            LogRecord rec;
            rec.t = compiled_.horizon_ms;
            rec.kind = "end";
            log_->record(rec);
        }
        return metrics_.finalize(compiled_.horizon_ms, compiled_.seed);
    }

private:
    void validate_run_config() {
        for (const auto& sensor : topo_.sensors()) {
            const AppEdge* edge = sensor_edge(sensor);
            if (!edge) {
                throw SimError(ErrorClass::validation,
                               "sensor '" + sensor.name + "': no SENSOR edge matches tuple type '" +
                                   sensor.tuple_type + "'");
            }
        }
    }

    const AppEdge* sensor_edge(const Sensor& sensor) const {
        for (const auto& e : app_.edges()) {
            if (e.kind == EdgeKind::sensor && trim_type(e.source) == trim_type(sensor.tuple_type)) {
                return &e;
            }
        }
        return nullptr;
    }

    void schedule_initial_events() {
        sensor_emitted_.assign(topo_.sensors().size(), 0);
        for (std::size_t i = 0; i < topo_.sensors().size(); ++i) {
            // First emission one interval in, matching a deterministic
            // inter-arrival reading.
            kernel_.schedule(EventKind::sensor_emit, topo_.sensors()[i].emission_interval_ms,
                             [this, i] { on_sensor_emit(i); });
        }
        for (const auto& entry : compiled_.mobility) {
            kernel_.schedule(EventKind::mobility, entry.at_ms, [this, entry] { on_mobility(entry); });
        }
        for (std::size_t e = 0; e < app_.edges().size(); ++e) {
            if (!app_.edges()[e].period_ms) continue;
            for (std::size_t i = 0; i < compiled_.placement.instances.size(); ++i) {
                if (compiled_.placement.instances[i].module != app_.edges()[e].source) continue;
                kernel_.schedule(EventKind::periodic_edge_fire, *app_.edges()[e].period_ms,
                                 [this, e, i] { on_periodic_fire(e, i); });
            }
        }
    }

    void on_sensor_emit(std::size_t sensor_index) {
        const Sensor& sensor = topo_.sensors()[sensor_index];
        if (sensor.max_tuples && sensor_emitted_[sensor_index] >= *sensor.max_tuples) return;

        const AppEdge* edge = sensor_edge(sensor);
        Tuple t;
        t.id = next_tuple_id_++;
        t.lineage = next_lineage_id_++;
        t.tuple_type = edge->tuple_type;
        t.direction = edge->direction;
        t.kind = edge->kind;
        t.cpu_length_mi = edge->cpu_length_mi;
        t.nw_length_kb = edge->nw_length_kb;
        t.source_module = sensor.name;
        t.dest_module = edge->destination;
        t.origin_device = sensor.gateway;
        t.emitted_at = kernel_.now();

        auto& lineage = lineages_[t.lineage];
        lineage.emitted_at = t.emitted_at;
        lineage.loop_eligible = true;

        log_tuple("emit", t, sensor.gateway);
        ++sensor_emitted_[sensor_index];

        kernel_.schedule(EventKind::tuple_arrival, sensor.latency_ms,
                         [this, t = std::move(t), device = sensor.gateway] { on_arrival(device, t); });

        if (!sensor.max_tuples || sensor_emitted_[sensor_index] < *sensor.max_tuples) {
            kernel_.schedule(EventKind::sensor_emit, sensor.emission_interval_ms,
                             [this, sensor_index] { on_sensor_emit(sensor_index); });
        }
    }

    void on_periodic_fire(std::size_t edge_index, std::size_t instance_index) {
        const AppEdge& edge = app_.edges()[edge_index];
        const ModuleInstance& instance = compiled_.placement.instances[instance_index];
        Tuple t;
        t.id = next_tuple_id_++;
        t.lineage = next_lineage_id_++;
        t.tuple_type = edge.tuple_type;
        t.direction = edge.direction;
        t.kind = edge.kind;
        t.cpu_length_mi = edge.cpu_length_mi;
        t.nw_length_kb = edge.nw_length_kb;
        t.source_module = edge.source;
        t.dest_module = edge.destination;
        t.origin_device = instance.host;
        t.emitted_at = kernel_.now();
        lineages_[t.lineage];  // periodic lineages stay loop-ineligible

        log_tuple("periodic", t, instance.host);
        route_tuple(instance.host, std::move(t));

        kernel_.schedule(EventKind::periodic_edge_fire, *edge.period_ms,
                         [this, edge_index, instance_index] { on_periodic_fire(edge_index, instance_index); });
    }

    void on_arrival(DeviceId device, Tuple t) {
        log_tuple("arrive", t, device);
        route_tuple(device, std::move(t));
    }

    // Instance lookup: a client-scoped instance matching the tuple's
    // origin wins over an unscoped one.
    std::optional<std::size_t> find_instance(DeviceId device, const std::string& module,
                                             DeviceId origin) const {
        std::optional<std::size_t> unscoped;
        for (std::size_t i = 0; i < compiled_.placement.instances.size(); ++i) {
            const ModuleInstance& inst = compiled_.placement.instances[i];
            if (inst.host != device || inst.module != module) continue;
            if (inst.client_scope) {
                if (*inst.client_scope == origin) return i;
            } else if (!unscoped) {
                unscoped = i;
            }
        }
        return unscoped;
    }

    void route_tuple(DeviceId device, Tuple t) {
        if (auto idx = find_instance(device, t.dest_module, t.origin_device)) {
            enqueue(*idx, std::move(t));
            return;
        }
        if (t.kind == EdgeKind::actuator && device == t.origin_device) {
            deliver_to_actuator(device, std::move(t));
            return;
        }
        if (t.direction == Direction::up) {
            DeviceId parent = topo_.device(device).parent;
            if (parent == kNoDevice) {
                throw SimError(ErrorClass::runtime_fault,
                               "routing failed: UP tuple '" + t.tuple_type + "' (dest module '" +
                                   t.dest_module + "') reached root '" + topo_.device(device).name +
                                   "' with no hosting instance; placement incomplete");
            }
            t.down_path.push_back(device);  // recorded at forwarding hops only
            transmit(device, parent, Direction::up, std::move(t));
        } else {
            if (t.down_path.empty()) {
                throw SimError(ErrorClass::runtime_fault,
                               "routing failed: DOWN tuple '" + t.tuple_type + "' at '" +
                                   topo_.device(device).name +
                                   "' has an empty down path and no local instance");
            }
            DeviceId child = t.down_path.back();
            t.down_path.pop_back();
            transmit(device, child, Direction::down, std::move(t));
        }
    }

    // Upward hops serialize on the child's uplink and consume its up_bw;
    // downward hops serialize on the child's downlink and consume the
    // sender's down_bw. Latency is the child's uplink latency either way.
    void transmit(DeviceId sender, DeviceId receiver, Direction direction, Tuple t) {
        DeviceId child = direction == Direction::up ? sender : receiver;
        const FogDevice& child_device = topo_.device(child);
        const double bandwidth =
            direction == Direction::up ? child_device.up_bw : topo_.device(sender).down_bw;
        if (!(bandwidth > 0.0)) {
            throw SimError(ErrorClass::validation,
                           "transmission rejected: zero bandwidth on link of '" + child_device.name + "'");
        }
        SimTime& busy_until = direction == Direction::up ? links_[child].up_busy_until
                                                         : links_[child].down_busy_until;
        const SimTime start = std::max(kernel_.now(), busy_until);
        const double service_ms = t.nw_length_kb / bandwidth * 1000.0;
        busy_until = start + service_ms;
        const SimTime arrive = start + service_ms + child_device.uplink_latency_ms;

        metrics_.record_transmission(t.nw_length_kb, child_device.uplink_latency_ms);
        if (log_) {
            LogRecord rec;
            rec.t = kernel_.now();
            rec.kind = "send";
            rec.device = sender;
            rec.to = receiver;
            rec.tuple = t.id;
            rec.lineage = t.lineage;
            rec.tuple_type = t.tuple_type;
            rec.direction = std::string(to_string(direction));
            rec.nw_kb = t.nw_length_kb;
            rec.latency_ms = child_device.uplink_latency_ms;
            rec.start_ms = start;
            rec.arrive_ms = arrive;
            log_->record(rec);
        }

        kernel_.schedule(EventKind::transmission_complete, arrive - kernel_.now(),
                         [this, receiver, t = std::move(t)] { on_arrival(receiver, t); });
    }

    void deliver_to_actuator(DeviceId device, Tuple t) {
        const Actuator* actuator = nullptr;
        for (const auto& a : topo_.actuators()) {
            if (a.gateway != device) continue;
            if (trim_type(a.consumed_tuple_type) == trim_type(t.dest_module) ||
                trim_type(a.consumed_tuple_type) == trim_type(t.tuple_type)) {
                actuator = &a;
                break;
            }
        }
        if (!actuator) {
            throw SimError(ErrorClass::runtime_fault,
                           "delivery failed: no actuator at '" + topo_.device(device).name +
                               "' consumes '" + t.tuple_type + "'");
        }
        kernel_.schedule(EventKind::tuple_arrival, actuator->latency_ms,
                         [this, device, t = std::move(t)] { on_delivered(device, t); });
    }

    void on_delivered(DeviceId device, const Tuple& t) {
        log_tuple("deliver", t, device);
        auto it = lineages_.find(t.lineage);
        if (it == lineages_.end() || !it->second.loop_eligible) return;
        const LineageState& lineage = it->second;
        for (std::size_t i = 0; i < app_.loops().size(); ++i) {
            const auto& seq = app_.loops()[i].sequence;
            if (seq.size() < 2) continue;
            const AppEdge* terminal = app_.loop_edge(seq[seq.size() - 2], seq.back());
            if (!terminal || trim_type(terminal->tuple_type) != trim_type(t.tuple_type)) continue;
            if (!is_subsequence(app_.loop_modules(app_.loops()[i]), lineage.visited_modules)) continue;
            metrics_.record_loop_completion(i, lineage.emitted_at, kernel_.now());
        }
    }

    void enqueue(std::size_t instance_index, Tuple t) {
        t.enqueued_at = kernel_.now();
        InstanceState& state = instances_[instance_index];
        state.pending.push_back(std::move(t));
        if (!state.serving) start_service(instance_index);
    }

    void start_service(std::size_t instance_index) {
        InstanceState& state = instances_[instance_index];
        const ModuleInstance& inst = compiled_.placement.instances[instance_index];
        state.serving = true;
        update_utilization(inst.host, inst.allocated_mips);
        const Tuple& t = state.pending.front();
        const double service_ms = t.cpu_length_mi / inst.allocated_mips * 1000.0;
        kernel_.schedule(EventKind::processing_complete, service_ms,
                         [this, instance_index] { on_processing_complete(instance_index); });
    }

    void on_processing_complete(std::size_t instance_index) {
        InstanceState& state = instances_[instance_index];
        const ModuleInstance& inst = compiled_.placement.instances[instance_index];
        Tuple input = std::move(state.pending.front());
        state.pending.pop_front();

        metrics_.accrue_cost(inst.host, input.cpu_length_mi);
        metrics_.record_processing_delay(input.tuple_type, kernel_.now() - input.enqueued_at);
        if (log_) {
            LogRecord rec;
            rec.t = kernel_.now();
            rec.kind = "complete";
            rec.device = inst.host;
            rec.tuple = input.id;
            rec.lineage = input.lineage;
            rec.tuple_type = input.tuple_type;
            rec.cpu_mi = input.cpu_length_mi;
            rec.enqueued_ms = input.enqueued_at;
            log_->record(rec);
        }
        lineages_[input.lineage].visited_modules.push_back(inst.module);

        std::vector<Tuple> outputs =
            app_.derive(inst.module, input, selectivity_rng_, next_tuple_id_, kernel_.now());
        for (auto& out : outputs) {
            log_tuple("derive", out, inst.host);
            route_tuple(inst.host, std::move(out));
        }

        if (!state.pending.empty()) {
            // Instance stays busy; utilization unchanged.
            const Tuple& next = state.pending.front();
            const double service_ms = next.cpu_length_mi / inst.allocated_mips * 1000.0;
            kernel_.schedule(EventKind::processing_complete, service_ms,
                             [this, instance_index] { on_processing_complete(instance_index); });
        } else {
            state.serving = false;
            update_utilization(inst.host, -inst.allocated_mips);
        }
    }

    void update_utilization(DeviceId device, double delta_mips) {
        serving_mips_[device] += delta_mips;
        if (serving_mips_[device] < 0.0) serving_mips_[device] = 0.0;
        const double u = std::min(1.0, serving_mips_[device] / topo_.device(device).mips);
        metrics_.record_utilization_change(device, u, kernel_.now());
        if (log_) {
            LogRecord rec;
            rec.t = kernel_.now();
            rec.kind = "util";
            rec.device = device;
            rec.utilization = u;
            log_->record(rec);
        }
    }

    void on_mobility(const MobilityEntry& entry) {
        const DeviceId old_parent = topo_.device(entry.device).parent;
        topo_.set_parent(entry.device, entry.new_parent);
        const bool level_ok =
            topo_.device(entry.new_parent).level == topo_.device(entry.device).level - 1;
        if (log_) {
            LogRecord rec;
            rec.t = kernel_.now();
            rec.kind = "mobility";
            rec.device = entry.device;
            rec.old_parent = old_parent;
            rec.new_parent = entry.new_parent;
            if (!level_ok) rec.level_warning = true;
            log_->record(rec);
        }
        // The uplink state (busy_until) stays with the device, so traffic
        // already committed to the old link keeps its serialization horizon.
    }

    void log_tuple(const char* kind, const Tuple& t, DeviceId device) {
        if (!log_) return;
        LogRecord rec;
        rec.t = kernel_.now();
        rec.kind = kind;
        rec.device = device;
        rec.tuple = t.id;
        rec.lineage = t.lineage;
        rec.tuple_type = t.tuple_type;
        log_->record(rec);
    }

    CompiledScenario& compiled_;
    Topology& topo_;
    const Application& app_;
    EventKernel kernel_;
    MetricsCollector metrics_;
    RngStream selectivity_rng_;
    EventLogSink* log_ = nullptr;

    std::vector<InstanceState> instances_;
    std::vector<double> serving_mips_;
    std::vector<LinkState> links_;
    std::vector<std::uint64_t> sensor_emitted_;
    std::map<LineageId, LineageState> lineages_;
    TupleId next_tuple_id_ = 0;
    LineageId next_lineage_id_ = 0;
};

}  // namespace

MetricsReport run_compiled(CompiledScenario& compiled, EventLogSink* log) {
    SimulationRun run(compiled, log);
    return run.run();
}

}  // namespace fogsim
