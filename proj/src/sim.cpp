#include "apfgrid/sim.hpp"

#include <algorithm>
#include <limits>

#include "apfgrid/symmetry.hpp"

namespace apfgrid {

namespace {

constexpr int kSsyncForceRounds = 4;

struct RobotClock {
    enum class Stage { Idle, Computing, Moving } stage = Stage::Idle;
    std::int64_t next = 0;  // when the current stage ends, or when an idle robot may wake
    Action pending;
    GridPoint dest;
    std::int64_t last_round = 0;
};

std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::int64_t next_even(std::int64_t t) { return t % 2 == 0 ? t : t + 1; }

bool placement_less(const RobotView& l, const RobotView& r) {
    auto key = [](const RobotView& v) {
        const auto [a, b] = v.placement.endpoints();
        return std::tuple(a, b, v.placement.is_on_edge(), static_cast<int>(v.color));
    };
    return key(l) < key(r);
}

Placement map_placement(const Placement& p, const Isometry& g) {
    if (p.is_at_node()) return Placement::at(g.apply(p.node()));
    const auto [a, b] = p.endpoints();
    return Placement::on_edge(g.apply(a), g.apply(b));
}

bool formed_now(const Configuration& world, const std::vector<GridPoint>& targets) {
    if (!world.is_still()) return false;
    for (const auto& r : world.robots()) {
        if (r.color != LightColor::Off) return false;
    }
    return patterns_equivalent(world.node_positions(), targets);
}

void finish(RunResult& res, const Monitor& mon) {
    res.metrics = mon.metrics();
    res.dims = mon.dimensions();
    res.violations = mon.violations();
    res.saturated_at_descent = mon.saturated_at_descent();
    res.asymmetry_checks = mon.asymmetry_checks();
    res.bounds = check_run_bounds(res.metrics, res.dims);
    if (res.verdict == Verdict::Formed) {
        const auto& b = res.bounds;
        if (!b.head_ok || !b.inner_ok || !b.tail_ok || !b.total_ok) {
            for (const auto& f : b.failures) {
                res.violations.push_back({ViolationKind::MoveBudgetExceeded, res.ticks, f});
            }
        }
    }
    if (!res.violations.empty()) res.verdict = Verdict::Violation;
}

}  // namespace

std::string_view to_string(SchedulerKind kind) {
    switch (kind) {
        case SchedulerKind::FSync: return "fsync";
        case SchedulerKind::SSync: return "ssync";
        case SchedulerKind::ASync: return "async";
    }
    return "async";
}

std::optional<SchedulerKind> parse_scheduler(std::string_view text) {
    if (text == "fsync") return SchedulerKind::FSync;
    if (text == "ssync") return SchedulerKind::SSync;
    if (text == "async") return SchedulerKind::ASync;
    return std::nullopt;
}

std::string SchedulerPolicy::describe() const {
    return std::string(to_string(kind)) + " compute=" + std::to_string(max_compute) +
           " move=" + std::to_string(max_move) + " sleep=" + std::to_string(max_sleep) +
           " fairness=" + std::to_string(fairness);
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Formed: return "Formed";
        case Verdict::Violation: return "Violation";
        case Verdict::Timeout: return "Timeout";
    }
    return "Timeout";
}

void validate_instance(const Instance& instance) {
    if (instance.robots.empty()) throw InvalidInstance("no robots");
    if (sorted_set(instance.robots).size() != instance.robots.size()) {
        throw InvalidInstance("multiplicity");
    }
    if (sorted_set(instance.targets).size() != instance.targets.size() ||
        instance.targets.size() != instance.robots.size()) {
        throw InvalidInstance("cardinality");
    }
    if (instance.robots.size() >= 2 && !is_asymmetric(instance.robots)) {
        throw InvalidInstance("symmetric initial configuration");
    }
}

LocalView take_snapshot(const Configuration& world, int observer_id, bool strict_frames,
                        std::mt19937_64& rng) {
    LocalView out;
    const Robot& self = world.by_id(observer_id);
    if (strict_frames) {
        out.frame_index = static_cast<int>(rng() % Isometry::kPointGroupSize);
        const GridPoint at = self.placement.endpoints().first;
        out.to_local = Isometry::translation(GridPoint{} - at)
                           .then(Isometry::point_group(out.frame_index));
    }
    RobotView me{map_placement(self.placement, out.to_local), self.color};
    for (const auto& r : world.robots()) {
        out.snapshot.robots.push_back({map_placement(r.placement, out.to_local), r.color});
    }
    std::sort(out.snapshot.robots.begin(), out.snapshot.robots.end(), placement_less);
    for (std::size_t i = 0; i < out.snapshot.robots.size(); ++i) {
        const auto& v = out.snapshot.robots[i];
        if (v.placement == me.placement && v.color == me.color) {
            out.snapshot.observer = i;
            break;
        }
    }
    return out;
}

Action decide(const LocalView& view, const TargetShape& target) {
    Action a = compute_action(view.snapshot, target);
    if (a.step) a.step = view.to_local.inverse().apply(*a.step);
    return a;
}

RunResult run_simulation(const Instance& instance, const SchedulerPolicy& policy,
                         const RunLimits& limits, bool strict_frames) {
    validate_instance(instance);
    RunResult res;
    const TargetShape target = TargetShape::from_pattern(instance.targets);
    Monitor mon(instance.robots, instance.targets, MonitorOptions{policy.fairness, true});

    Configuration world;
    for (std::size_t i = 0; i < instance.robots.size(); ++i) {
        world.add(Robot{static_cast<int>(i), Placement::at(instance.robots[i]), LightColor::Off});
    }
    const std::size_t k = world.size();

    std::mt19937_64 rng(policy.seed);
    const bool async = policy.kind == SchedulerKind::ASync;
    std::vector<RobotClock> clocks(k);
    if (async) {
        for (auto& c : clocks) c.next = draw(rng, 0, policy.max_sleep);
    }

    auto emit = [&](SimEvent e) {
        mon.observe(e);
        res.trace.push_back(std::move(e));
    };
    auto sleep_after = [&](std::int64_t t) { return async ? t + draw(rng, 0, policy.max_sleep) : t; };

    if (formed_now(world, instance.targets)) {
        res.verdict = Verdict::Formed;
        res.final_config = world;
        finish(res, mon);
        return res;
    }

    std::int64_t round = 0;
    while (true) {
        std::int64_t t = std::numeric_limits<std::int64_t>::max();
        for (const auto& c : clocks) {
            const bool idle = c.stage == RobotClock::Stage::Idle;
            t = std::min(t, idle && !async ? next_even(c.next) : c.next);
        }
        if (t > limits.max_ticks || mon.epochs() > limits.max_epochs) {
            res.verdict = Verdict::Timeout;
            break;
        }
        res.ticks = t;

        for (std::size_t i = 0; i < k; ++i) {
            auto& c = clocks[i];
            if (c.stage != RobotClock::Stage::Moving || c.next != t) continue;
            Robot& r = world.mutable_robots()[i];
            const GridPoint dest = c.dest;
            r.placement = Placement::at(dest);
            emit({.tick = t, .kind = EventKind::MoveEnd, .robot = r.id, .pos = dest});
            c.stage = RobotClock::Stage::Idle;
            c.next = sleep_after(t);
        }

        for (std::size_t i = 0; i < k; ++i) {
            auto& c = clocks[i];
            if (c.stage != RobotClock::Stage::Computing || c.next != t) continue;
            Robot& r = world.mutable_robots()[i];
            r.color = c.pending.color;
            emit({.tick = t, .kind = EventKind::ComputeEnd, .robot = r.id, .color = r.color,
                  .step = c.pending.step});
            if (c.pending.step) {
                const GridPoint from = r.placement.node();
                const GridPoint to = from + c.pending.step->offset();
                emit({.tick = t, .kind = EventKind::MoveStart, .robot = r.id, .from = from, .to = to});
                r.placement = Placement::on_edge(from, to);
                c.dest = to;
                c.stage = RobotClock::Stage::Moving;
                c.next = t + (async ? draw(rng, 1, policy.max_move) : 1);
            } else {
                c.stage = RobotClock::Stage::Idle;
                c.next = sleep_after(t);
            }
        }

        std::vector<std::size_t> wake;
        if (async) {
            for (std::size_t i = 0; i < k; ++i) {
                if (clocks[i].stage == RobotClock::Stage::Idle && clocks[i].next == t) wake.push_back(i);
            }
        } else if (t % 2 == 0) {
            ++round;
            std::vector<std::size_t> idle;
            for (std::size_t i = 0; i < k; ++i) {
                if (clocks[i].stage == RobotClock::Stage::Idle && clocks[i].next <= t) idle.push_back(i);
            }
            for (std::size_t i : idle) {
                const bool pick = policy.kind == SchedulerKind::FSync || (rng() & 1u) != 0 ||
                                  round - clocks[i].last_round >= kSsyncForceRounds;
                if (pick) wake.push_back(i);
            }
            if (wake.empty() && !idle.empty()) wake.push_back(idle[rng() % idle.size()]);
            for (std::size_t i : idle) clocks[i].next = t + 1;
        }
        for (std::size_t i : wake) {
            auto& c = clocks[i];
            const Robot& r = world.robots()[i];
            const LocalView view = take_snapshot(world, r.id, strict_frames, rng);
            emit({.tick = t, .kind = EventKind::Activate, .robot = r.id, .pos = r.placement.node()});
            SimEvent look{.tick = t, .kind = EventKind::Look, .robot = r.id, .pos = r.placement.node()};
            if (strict_frames) look.frame = view.frame_index;
            emit(look);
            c.pending = decide(view, target);
            c.stage = RobotClock::Stage::Computing;
            c.last_round = round;
            c.next = t + (async ? draw(rng, 1, policy.max_compute) : 1);
        }

        mon.end_tick(t);
        if (!mon.violations().empty()) {
            res.verdict = Verdict::Violation;
            break;
        }
        if (formed_now(world, instance.targets)) {
            res.verdict = Verdict::Formed;
            break;
        }
    }
    res.final_config = world;
    finish(res, mon);
    return res;
}

RunResult replay_trace(const Instance& instance, const std::vector<SimEvent>& trace,
                       std::int64_t fairness) {
    RunResult res;
    Monitor mon(instance.robots, instance.targets, MonitorOptions{fairness, true});
    res.trace = trace;
    std::optional<std::int64_t> tick;
    for (const auto& e : trace) {
        if (tick && e.tick != *tick) mon.end_tick(*tick);
        if (tick && e.tick < *tick) {
            res.violations.push_back({ViolationKind::Malformed, e.tick, "ticks out of order"});
        }
        tick = e.tick;
        mon.observe(e);
    }
    if (tick) {
        mon.end_tick(*tick);
        res.ticks = *tick;
    } else {
        mon.end_tick(0);
    }
    res.final_config = mon.world();
    const bool formed = mon.formed() || (trace.empty() && patterns_equivalent(instance.robots, instance.targets));
    res.verdict = formed ? Verdict::Formed : Verdict::Timeout;
    auto extra = res.violations;
    finish(res, mon);
    res.violations.insert(res.violations.end(), extra.begin(), extra.end());
    if (!res.violations.empty()) res.verdict = Verdict::Violation;
    return res;
}

}  // namespace apfgrid
