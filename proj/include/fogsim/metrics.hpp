#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fogsim/app_model.hpp"
#include "fogsim/topology.hpp"

namespace fogsim {

struct LoopStats {
    std::vector<std::string> sequence;
    std::uint64_t count = 0;
    std::vector<double> samples_ms;
    double mean_ms = 0.0;
};

struct DeviceEnergy {
    DeviceId device = kNoDevice;
    std::string name;
    double joules = 0.0;
};

struct TypeDelay {
    std::string tuple_type;
    std::uint64_t count = 0;
    double mean_ms = 0.0;
};

struct MetricsReport {
    std::vector<LoopStats> loops;
    std::vector<DeviceEnergy> energy;
    double network_total_kb = 0.0;
    double network_kb_ms = 0.0;
    double total_cost = 0.0;
    std::vector<TypeDelay> processing_delay;
    double horizon_ms = 0.0;
    std::uint64_t seed = 0;
};

/// Accumulates the per-run result dimensions. Energy integrates the
/// linear power model (idle + (busy - idle) * u) in watts over seconds,
/// piecewise constant between utilization changes.
class MetricsCollector {
public:
    MetricsCollector(const Topology& topo, const Application& app);

    /// Flushes energy up to t at the previous utilization, then switches
    /// to new_u. Values outside [0, 1] are clamped (and counted).
    void record_utilization_change(DeviceId device, double new_u, SimTime t);

    void record_transmission(double nw_length_kb, double link_latency_ms);
    void accrue_cost(DeviceId device, double cpu_length_mi);
    void record_loop_completion(std::size_t loop_index, SimTime t_emit, SimTime t_done);
    void record_processing_delay(const std::string& tuple_type, double delay_ms);

    std::size_t loop_count() const noexcept { return loop_samples_.size(); }
    std::uint64_t clamp_warnings() const noexcept { return clamp_warnings_; }

    /// Flushes all ledgers to t_end and freezes the report. A collector
    /// finalizes once.
    MetricsReport finalize(SimTime t_end, std::uint64_t seed);

private:
    struct EnergyLedger {
        SimTime last_update = 0.0;
        double utilization = 0.0;
        double joules = 0.0;
        double busy_power = 0.0;
        double idle_power = 0.0;
    };

    const Topology& topo_;
    std::vector<EnergyLedger> ledgers_;  // indexed by device id
    std::vector<std::vector<std::string>> loop_sequences_;
    std::vector<std::vector<double>> loop_samples_;
    double network_total_kb_ = 0.0;
    double network_kb_ms_ = 0.0;
    double total_cost_ = 0.0;
    std::map<std::string, std::pair<std::uint64_t, double>> delay_sums_;  // type -> (count, sum)
    std::uint64_t clamp_warnings_ = 0;
    bool finalized_ = false;
};

}  // namespace fogsim
