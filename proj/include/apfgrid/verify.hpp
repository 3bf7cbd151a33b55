#pragma once

// Oracles, run metrics, bound checks and the trace monitor.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "apfgrid/frame.hpp"
#include "apfgrid/grid.hpp"

namespace apfgrid {

/// True iff some point-group map plus a translation carries `points` onto `pattern`.
bool patterns_equivalent(std::span<const GridPoint> points, std::span<const GridPoint> pattern);

/// Size scales of an instance. m/n are the initial SER's longer/shorter sides,
/// mp/np the target's.
struct Dimensions {
    int m = 1, n = 1;
    int mp = 1, np = 1;
    int M = 1, N = 1;
    int D = 1;
    int k = 0;
};

Dimensions derive_dimensions(std::span<const GridPoint> robots, std::span<const GridPoint> targets);

struct Metrics {
    std::map<int, int> moves_by_robot;
    std::optional<int> head_id;
    std::optional<int> tail_id;
    int head_moves = 0;
    int tail_moves = 0;
    int max_inner_moves = 0;
    int total_moves = 0;
    std::optional<BoundingRect> visited;
    int epochs = 0;
};

struct BoundsReport {
    bool space_ok = true;
    bool head_ok = true;
    bool inner_ok = true;
    bool tail_ok = true;
    bool total_ok = true;
    /// The tighter tail figure quoted for the head-and-tail analysis.
    bool tail_within_2d = true;
    std::vector<std::string> failures;

    bool pass() const { return failures.empty(); }
};

/// Visited box compared orientation-free against M x N, or (M+1) x N for M = N.
BoundsReport check_run_bounds(const Metrics& metrics, const Dimensions& dims);

enum class ViolationKind {
    NodeCollision,
    EdgeConflict,
    SpaceExceeded,
    MoveBudgetExceeded,
    AsymmetryLost,
    NonMonotoneVertical,
    Stall,
    Malformed,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    std::int64_t tick = 0;
    std::string details;
};

enum class EventKind { Activate, Look, ComputeEnd, MoveStart, MoveEnd };

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view text);

/// One trace record. Fields not relevant to the kind are left empty.
struct SimEvent {
    std::int64_t tick = 0;
    EventKind kind = EventKind::Activate;
    int robot = 0;
    std::optional<GridPoint> pos;         // Look, MoveEnd
    std::optional<int> frame;             // Look under strict frames
    std::optional<LightColor> color;      // ComputeEnd
    std::optional<Direction> step;        // ComputeEnd (empty: stay)
    std::optional<GridPoint> from;        // MoveStart
    std::optional<GridPoint> to;          // MoveStart

    friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

struct MonitorOptions {
    /// Ticks without any colour change or move before a Stall is flagged.
    std::int64_t fairness_window = 0;
    bool check_space_online = true;
};

/// Replays events against a shadow world and checks the run invariants.
/// Feed events in trace order; call end_tick() once all events of a tick are in.
class Monitor {
public:
    Monitor(std::vector<GridPoint> robots, std::vector<GridPoint> targets, MonitorOptions options);

    void observe(const SimEvent& e);
    void end_tick(std::int64_t tick);

    const Configuration& world() const { return world_; }
    const std::vector<Violation>& violations() const { return violations_; }
    bool formed() const { return formed_; }
    std::optional<std::int64_t> formed_tick() const { return formed_tick_; }
    /// Post-hoc metrics with roles attributed.
    Metrics metrics() const;
    const Dimensions& dimensions() const { return dims_; }
    int epochs() const { return epochs_; }

    /// Saturation of every line at the tail's first descent, if one happened.
    std::optional<bool> saturated_at_descent() const { return saturated_at_descent_; }
    /// Number of still instants with all lights off and not final that were checked.
    int asymmetry_checks() const { return asymmetry_checks_; }

private:
    void flag(ViolationKind kind, std::int64_t tick, std::string details);
    void check_tail_descent(const Robot& tail, GridPoint from, GridPoint to, std::int64_t tick);
    void record_inner_vertical(const Robot& r, GridPoint from, GridPoint to, std::int64_t tick);
    void visit(GridPoint p);

    Configuration world_;
    std::vector<GridPoint> targets_;
    TargetShape shape_;
    Dimensions dims_;
    MonitorOptions options_;

    std::vector<Violation> violations_;
    std::map<int, int> moves_;
    std::optional<int> head_id_;
    std::optional<int> tail_id_;
    std::optional<Roles> initial_roles_;
    std::optional<BoundingRect> visited_;
    std::map<int, int> vertical_sign_;
    std::set<int> cycled_;
    int epochs_ = 0;
    std::int64_t last_progress_ = 0;
    std::int64_t current_tick_ = 0;
    std::vector<GridPoint> arrivals_;
    bool changed_ = true;
    bool formed_ = false;
    std::optional<std::int64_t> formed_tick_;
    std::optional<bool> saturated_at_descent_;
    int asymmetry_checks_ = 0;
};

}  // namespace apfgrid
