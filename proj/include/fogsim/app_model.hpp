#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fogsim/kernel.hpp"
#include "fogsim/topology.hpp"

namespace fogsim {

enum class Direction { up, down };
enum class EdgeKind { sensor, module, actuator };

std::string_view to_string(Direction d);
std::string_view to_string(EdgeKind k);

struct AppModule {
    std::string name;
    double ram = 0.0;   // MB
    double mips = 0.0;  // MI per second served by one instance
    double size = 0.0;  // MB storage
    double bw = 0.0;    // kB per second
};

struct AppEdge {
    std::string source;
    std::string destination;
    double cpu_length_mi = 0.0;
    double nw_length_kb = 0.0;
    std::string tuple_type;
    Direction direction = Direction::up;
    EdgeKind kind = EdgeKind::module;
    std::optional<double> period_ms;  // set on periodically firing edges
};

struct TupleMapping {
    std::string module;
    std::string input_type;   // stored trimmed
    std::string output_type;
    double selectivity = 0.0;
};

struct AppLoop {
    std::vector<std::string> sequence;  // sensor tuple type, modules..., actuator name
};

using TupleId = std::int64_t;
using LineageId = std::int64_t;

/// A unit of work in flight. Derived tuples inherit the lineage of the
/// sensor emission they descend from, plus the current down-routing path.
struct Tuple {
    TupleId id = -1;
    LineageId lineage = -1;
    std::string tuple_type;
    Direction direction = Direction::up;
    EdgeKind kind = EdgeKind::module;
    double cpu_length_mi = 0.0;
    double nw_length_kb = 0.0;
    std::string source_module;
    std::string dest_module;
    DeviceId origin_device = kNoDevice;
    SimTime emitted_at = 0.0;
    std::vector<DeviceId> down_path;  // stack of device ids recorded at UP forwarding hops
    SimTime enqueued_at = 0.0;        // runtime bookkeeping
};

/// Trims ASCII whitespace from both ends; tuple types are compared in
/// trimmed form.
std::string trim_type(std::string_view text);

class Application {
public:
    Application() = default;
    explicit Application(std::string app_id) : app_id_(std::move(app_id)) {}

    void add_module(const std::string& name, double ram, double mips, double size, double bw);
    void add_edge(const std::string& source, const std::string& destination, double cpu_length_mi,
                  double nw_length_kb, const std::string& tuple_type, Direction direction,
                  EdgeKind kind, std::optional<double> period_ms = std::nullopt);
    void add_tuple_mapping(const std::string& module, const std::string& input_type,
                           const std::string& output_type, double selectivity);
    void add_loop(std::vector<std::string> sequence);

    void set_deadline(DeviceId end_device, const std::string& module, double deadline_ms);
    void set_additional_mips(DeviceId end_device, const std::string& module, double extra_mips);
    std::optional<double> deadline(DeviceId end_device, const std::string& module) const;
    std::optional<double> additional_mips(DeviceId end_device, const std::string& module) const;

    const std::string& app_id() const noexcept { return app_id_; }
    const std::vector<AppModule>& modules() const noexcept { return modules_; }
    const std::vector<AppEdge>& edges() const noexcept { return edges_; }
    const std::vector<TupleMapping>& mappings() const noexcept { return mappings_; }
    const std::vector<AppLoop>& loops() const noexcept { return loops_; }

    const AppModule* module_by_name(const std::string& name) const;
    const AppEdge* edge_by_tuple_type(const std::string& tuple_type) const;

    /// Edge matching one consecutive loop pair. Terminal actuator hops
    /// match leniently: an ACTUATOR edge from `from` matches when its
    /// destination or tuple type equals `to`, or when it is the only
    /// actuator edge leaving `from`.
    const AppEdge* loop_edge(const std::string& from, const std::string& to) const;

    /// Module names of a loop sequence, in order.
    std::vector<std::string> loop_modules(const AppLoop& loop) const;

    /// Evaluates the module's mappings against one input tuple, in
    /// registration order; each mapping draws independently. Selectivity
    /// endpoints 0 and 1 do not consume randomness, so all-certain
    /// dataflows are rng-independent.
    std::vector<Tuple> derive(const std::string& module, const Tuple& input, RngStream& rng,
                              TupleId& next_tuple_id, SimTime now) const;

    std::vector<std::string> validate() const;

private:
    std::string app_id_;
    std::vector<AppModule> modules_;
    std::vector<AppEdge> edges_;
    std::vector<TupleMapping> mappings_;
    std::vector<AppLoop> loops_;
    std::map<DeviceId, std::map<std::string, double>> deadline_info_;
    std::map<DeviceId, std::map<std::string, double>> additional_mips_info_;
};

/// Applications reconstructed from published reference configurations:
/// master_worker | sequential | client_main | deadline_test.
Application builtin_application(const std::string& name);

}  // namespace fogsim
