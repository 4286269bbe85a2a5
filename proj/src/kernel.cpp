#include "fogsim/kernel.hpp"

#include <algorithm>
#include <cmath>

namespace fogsim {

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::sensor_emit: return "sensor-emit";
        case EventKind::tuple_arrival: return "tuple-arrival";
        case EventKind::transmission_complete: return "transmission-complete";
        case EventKind::processing_complete: return "processing-complete";
        case EventKind::mobility: return "mobility";
        case EventKind::periodic_edge_fire: return "periodic-edge-fire";
        case EventKind::simulation_end: return "simulation-end";
    }
    return "unknown";
}

EventId EventKernel::schedule(EventKind kind, SimTime delay_ms, EventAction action) {
    if (finished_) {
        throw SimError(ErrorClass::validation, "schedule rejected: run already terminated");
    }
    if (!(delay_ms >= 0.0) || !std::isfinite(delay_ms)) {
        throw SimError(ErrorClass::validation,
                       "schedule rejected: delay must be a finite non-negative duration, got " +
                           std::to_string(delay_ms));
    }
    EventId id = next_seq_++;
    queue_.push_back(Entry{now_ + delay_ms, id, kind, std::move(action)});
    std::push_heap(queue_.begin(), queue_.end(), later);
    return id;
}

SimTime EventKernel::run_until(SimTime t_end) {
    if (finished_) {
        throw SimError(ErrorClass::validation, "run_until rejected: run already terminated");
    }
    if (!std::isfinite(t_end) || t_end < 0.0) {
        throw SimError(ErrorClass::validation, "run_until rejected: horizon must be finite and non-negative");
    }
    while (!queue_.empty() && queue_.front().fire_at <= t_end) {
        std::pop_heap(queue_.begin(), queue_.end(), later);
        Entry entry = std::move(queue_.back());
        queue_.pop_back();
        now_ = entry.fire_at;
        try {
            entry.action();
        } catch (const SimError&) {
            finished_ = true;
            throw;
        } catch (const std::exception& ex) {
            finished_ = true;
            throw SimError(ErrorClass::runtime_fault,
                           "event dispatch failed: kind=" + std::string(to_string(entry.kind)) +
                               " t=" + std::to_string(entry.fire_at) + ": " + ex.what());
        }
    }
    finished_ = true;
    return now_;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

}  // namespace

RngStream RngStream::named(std::uint64_t base_seed, std::string_view name) {
    return RngStream(splitmix64(base_seed ^ fnv1a64(name)));
}

double RngStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double min, double max) {
    if (min > max) {
        throw SimError(ErrorClass::validation,
                       "uniform sample rejected: min " + std::to_string(min) + " > max " +
                           std::to_string(max));
    }
    if (min == max) return min;
    double value = min + (max - min) * next_double();
    if (value >= max) value = std::nextafter(max, min);
    return value;
}

int RngStream::uniform_int(int min, int max) {
    if (min > max) {
        throw SimError(ErrorClass::validation, "uniform_int sample rejected: min > max");
    }
    if (min == max) return min;
    const double span = static_cast<double>(max) - static_cast<double>(min);
    int offset = static_cast<int>(next_double() * span);
    if (offset >= max - min) offset = max - min - 1;
    return min + offset;
}

}  // namespace fogsim
