#pragma once

// Seeded discrete-event simulation of Look-Compute-Move cycles.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "apfgrid/grid.hpp"
#include "apfgrid/rules.hpp"
#include "apfgrid/verify.hpp"

namespace apfgrid {

enum class SchedulerKind { FSync, SSync, ASync };

std::string_view to_string(SchedulerKind kind);
std::optional<SchedulerKind> parse_scheduler(std::string_view text);

struct SchedulerPolicy {
    SchedulerKind kind = SchedulerKind::ASync;
    std::uint64_t seed = 0;
    int max_compute = 4;
    int max_move = 4;
    int max_sleep = 6;
    /// Stall window in ticks; 0 means 64 ticks per robot.
    std::int64_t fairness = 0;

    /// "<kind> compute=.. move=.. sleep=.. fairness=.."
    std::string describe() const;
};

struct RunLimits {
    std::int64_t max_ticks = 200000;
    std::int64_t max_epochs = 1000000;
};

enum class Verdict { Formed, Violation, Timeout };

std::string_view to_string(Verdict v);

struct Instance {
    std::vector<GridPoint> robots;
    std::vector<GridPoint> targets;

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Throws InvalidInstance unless robots are distinct, counts match, and the
/// robots are asymmetric (or a single robot).
void validate_instance(const Instance& instance);

struct RunResult {
    Verdict verdict = Verdict::Timeout;
    std::vector<SimEvent> trace;
    Configuration final_config;
    Metrics metrics;
    Dimensions dims;
    BoundsReport bounds;
    std::vector<Violation> violations;
    std::optional<bool> saturated_at_descent;
    int asymmetry_checks = 0;
    std::int64_t ticks = 0;
};

/// A snapshot in the observer's coordinates and the map that produced it
/// (global to local).
struct LocalView {
    Snapshot snapshot;
    Isometry to_local = Isometry::identity();
    int frame_index = 0;
};

/// Strict frames: translate to the observer and apply a random point-group
/// element drawn from `rng`. Otherwise global coordinates are used unchanged.
LocalView take_snapshot(const Configuration& world, int observer_id, bool strict_frames,
                        std::mt19937_64& rng);

/// The observer's local decision mapped back to global directions.
Action decide(const LocalView& view, const TargetShape& target);

RunResult run_simulation(const Instance& instance, const SchedulerPolicy& policy,
                         const RunLimits& limits, bool strict_frames);

/// Re-run the monitor over a recorded event stream.
RunResult replay_trace(const Instance& instance, const std::vector<SimEvent>& trace,
                       std::int64_t fairness = 0);

}  // namespace apfgrid
