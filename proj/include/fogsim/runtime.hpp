#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fogsim/app_model.hpp"
#include "fogsim/kernel.hpp"
#include "fogsim/metrics.hpp"
#include "fogsim/placement.hpp"
#include "fogsim/topology.hpp"

namespace fogsim {

/// One line of the machine-readable event log. Optional fields are
/// omitted from the serialized form when unset.
struct LogRecord {
    SimTime t = 0.0;
    std::string kind;  // emit | derive | periodic | send | arrive | complete | deliver | util | mobility | end
    DeviceId device = kNoDevice;
    DeviceId to = kNoDevice;
    TupleId tuple = -1;
    LineageId lineage = -1;
    std::string tuple_type;
    std::optional<std::string> direction;
    std::optional<double> nw_kb;
    std::optional<double> latency_ms;
    std::optional<double> start_ms;    // transmission service start
    std::optional<double> arrive_ms;   // transmission arrival time
    std::optional<double> cpu_mi;
    std::optional<double> enqueued_ms;
    std::optional<double> utilization;
    std::optional<DeviceId> old_parent;
    std::optional<DeviceId> new_parent;
    std::optional<bool> level_warning;

    std::string to_jsonl() const;
    static LogRecord from_jsonl(const std::string& line);
};

class EventLogSink {
public:
    virtual ~EventLogSink() = default;
    virtual void record(const LogRecord& rec) = 0;
};

class MemoryLogSink : public EventLogSink {
public:
    void record(const LogRecord& rec) override { records.push_back(rec); }
    std::vector<LogRecord> records;
};

class StreamLogSink : public EventLogSink {
public:
    explicit StreamLogSink(std::ostream& out) : out_(out) {}
    void record(const LogRecord& rec) override;

private:
    std::ostream& out_;
};

/// Everything a run needs, with names resolved to ids and the placement
/// computed. Built by the scenario layer.
struct CompiledScenario {
    Topology topology;
    Application app;
    Placement placement;
    std::vector<MobilityEntry> mobility;
    std::map<int, std::vector<DeviceId>> clusters;  // empty when clustering is off
    double horizon_ms = 0.0;
    std::uint64_t seed = 0;
};

/// Executes a compiled scenario on the event kernel and returns the
/// finalized metrics. The topology inside `compiled` is mutated by
/// mobility reparenting during the run.
MetricsReport run_compiled(CompiledScenario& compiled, EventLogSink* log);

}  // namespace fogsim
