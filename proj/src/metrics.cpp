#include "fogsim/metrics.hpp"

namespace fogsim {

MetricsCollector::MetricsCollector(const Topology& topo, const Application& app) : topo_(topo) {
    ledgers_.resize(topo.device_count());
    for (const auto& d : topo.devices()) {
        ledgers_[d.id].busy_power = d.busy_power;
        ledgers_[d.id].idle_power = d.idle_power;
    }
    for (const auto& loop : app.loops()) {
        loop_sequences_.push_back(loop.sequence);
        loop_samples_.emplace_back();
    }
}

void MetricsCollector::record_utilization_change(DeviceId device, double new_u, SimTime t) {
    EnergyLedger& ledger = ledgers_.at(device);
    if (t < ledger.last_update) {
        throw SimError(ErrorClass::runtime_fault,
                       "utilization change at t=" + std::to_string(t) + " precedes last update of device " +
                           std::to_string(device));
    }
    if (new_u < 0.0) {
        new_u = 0.0;
        ++clamp_warnings_;
    } else if (new_u > 1.0) {
        new_u = 1.0;
        ++clamp_warnings_;
    }
    ledger.joules += (t - ledger.last_update) / 1000.0 *
                     (ledger.idle_power + (ledger.busy_power - ledger.idle_power) * ledger.utilization);
    ledger.utilization = new_u;
    ledger.last_update = t;
}

void MetricsCollector::record_transmission(double nw_length_kb, double link_latency_ms) {
    network_total_kb_ += nw_length_kb;
    network_kb_ms_ += nw_length_kb * link_latency_ms;
}

void MetricsCollector::accrue_cost(DeviceId device, double cpu_length_mi) {
    total_cost_ += topo_.device(device).rate_per_mips * cpu_length_mi;
}

void MetricsCollector::record_loop_completion(std::size_t loop_index, SimTime t_emit, SimTime t_done) {
    if (t_done < t_emit) {
        throw SimError(ErrorClass::runtime_fault, "loop completion precedes its emission");
    }
    loop_samples_.at(loop_index).push_back(t_done - t_emit);
}

void MetricsCollector::record_processing_delay(const std::string& tuple_type, double delay_ms) {
    auto& entry = delay_sums_[tuple_type];
    entry.first += 1;
    entry.second += delay_ms;
}

MetricsReport MetricsCollector::finalize(SimTime t_end, std::uint64_t seed) {
    if (finalized_) {
        throw SimError(ErrorClass::validation, "metrics already finalized");
    }
    finalized_ = true;

    MetricsReport report;
    report.horizon_ms = t_end;
    report.seed = seed;

    for (const auto& d : topo_.devices()) {
        record_utilization_change(d.id, ledgers_[d.id].utilization, t_end);
        report.energy.push_back(DeviceEnergy{d.id, d.name, ledgers_[d.id].joules});
    }

    for (std::size_t i = 0; i < loop_samples_.size(); ++i) {
        LoopStats stats;
        stats.sequence = loop_sequences_[i];
        stats.samples_ms = loop_samples_[i];
        stats.count = stats.samples_ms.size();
        double sum = 0.0;
        for (double s : stats.samples_ms) sum += s;
        stats.mean_ms = stats.count ? sum / static_cast<double>(stats.count) : 0.0;
        report.loops.push_back(std::move(stats));
    }

    report.network_total_kb = network_total_kb_;
    report.network_kb_ms = network_kb_ms_;
    report.total_cost = total_cost_;

    for (const auto& [type, entry] : delay_sums_) {
        report.processing_delay.push_back(
            TypeDelay{type, entry.first, entry.second / static_cast<double>(entry.first)});
    }
    return report;
}

}  // namespace fogsim
