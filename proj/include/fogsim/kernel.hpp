#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fogsim {

/// Simulation clock value in milliseconds.
using SimTime = double;

/// Error classes map one-to-one onto process exit codes.
enum class ErrorClass { runtime_fault = 1, usage = 2, validation = 3 };

class SimError : public std::runtime_error {
public:
    SimError(ErrorClass cls, const std::string& message)
        : std::runtime_error(message), class_(cls) {}

    ErrorClass error_class() const noexcept { return class_; }

private:
    ErrorClass class_;
};

enum class EventKind {
    sensor_emit,
    tuple_arrival,
    transmission_complete,
    processing_complete,
    mobility,
    periodic_edge_fire,
    simulation_end,
};

std::string_view to_string(EventKind kind);

using EventId = std::uint64_t;
using EventAction = std::function<void()>;

/// Deterministic discrete-event engine. Events fire in ascending
/// (fire_at, seq) order; seq is assigned at scheduling time, so
/// simultaneous events are delivered in the order they were scheduled.
/// A kernel drives exactly one run; scheduling after the run has
/// terminated is rejected.
class EventKernel {
public:
    EventId schedule(EventKind kind, SimTime delay_ms, EventAction action);

    /// Pops and dispatches events until the queue is empty or the next
    /// event would fire after t_end. Returns the final clock value (the
    /// clock only advances to dispatched event times).
    SimTime run_until(SimTime t_end);

    SimTime now() const noexcept { return now_; }
    bool finished() const noexcept { return finished_; }
    std::size_t pending() const noexcept { return queue_.size(); }

private:
    struct Entry {
        SimTime fire_at;
        EventId seq;
        EventKind kind;
        EventAction action;
    };

    // True when a fires after b; makes the heap front the earliest event.
    static bool later(const Entry& a, const Entry& b) noexcept {
        if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
        return a.seq > b.seq;
    }

    std::vector<Entry> queue_;
    SimTime now_ = 0.0;
    EventId next_seq_ = 0;
    bool finished_ = false;
};

/// Seeded random stream with a fixed algorithm (mt19937_64 plus an
/// explicit 53-bit double mapping): equal seeds reproduce equal sample
/// sequences across runs and platforms.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Derives an independent stream from a base seed and a role name.
    static RngStream named(std::uint64_t base_seed, std::string_view name);

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1).
    double next_double();

    /// Uniform double in [min, max); a degenerate interval yields min.
    double uniform(double min, double max);

    /// Uniform integer in [min, max); a degenerate interval yields min.
    int uniform_int(int min, int max);

private:
    std::mt19937_64 engine_;
};

}  // namespace fogsim
