#include <doctest.h>

#include <random>
#include <set>

#include "apfgrid/verify.hpp"
#include "oracles.hpp"

using namespace apfgrid;

namespace {

SimEvent move_start(std::int64_t t, int robot, GridPoint from, GridPoint to) {
    return {.tick = t, .kind = EventKind::MoveStart, .robot = robot, .from = from, .to = to};
}

SimEvent move_end(std::int64_t t, int robot, GridPoint at) {
    return {.tick = t, .kind = EventKind::MoveEnd, .robot = robot, .pos = at};
}

SimEvent compute_end(std::int64_t t, int robot, LightColor c, std::optional<Direction> step = std::nullopt) {
    return {.tick = t, .kind = EventKind::ComputeEnd, .robot = robot, .color = c, .step = step};
}

bool has(const std::vector<Violation>& vs, ViolationKind k) {
    return std::any_of(vs.begin(), vs.end(), [k](const Violation& v) { return v.kind == k; });
}

const std::vector<GridPoint> kRobots = {{0, 0}, {2, 0}, {0, 1}};
const std::vector<GridPoint> kTargets = {{0, 0}, {2, 0}, {1, 1}};

}  // namespace

TEST_CASE("property: pattern equivalence agrees with the reference") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 2000; ++trial) {
        std::set<GridPoint> a, b;
        const int k = 1 + static_cast<int>(rng() % 4);
        while (static_cast<int>(a.size()) < k) a.insert({int(rng() % 3), int(rng() % 3)});
        while (static_cast<int>(b.size()) < k) b.insert({int(rng() % 3), int(rng() % 3)});
        const std::vector<GridPoint> va(a.begin(), a.end()), vb(b.begin(), b.end());
        CHECK(patterns_equivalent(va, vb) == oracle::equivalent(va, vb));
        const auto g = Isometry::point_group(int(rng() % 8)).then(Isometry::translation({7, -3}));
        CHECK(patterns_equivalent(apply_isometry(va, g), va));
    }
    const std::vector<GridPoint> three = {{0, 0}, {1, 0}, {2, 0}};
    const std::vector<GridPoint> two = {{0, 0}, {1, 0}};
    CHECK_FALSE(patterns_equivalent(three, two));
}

TEST_CASE("dimensions of the worked instance") {
    const auto d = derive_dimensions(kRobots, kTargets);
    CHECK(d.m == 3);
    CHECK(d.n == 2);
    CHECK(d.M == 3);
    CHECK(d.N == 2);
    CHECK(d.D == 3);
    CHECK(d.k == 3);
}

TEST_CASE("dimensions take the larger of both boxes per side") {
    const std::vector<GridPoint> r = {{0, 0}, {0, 4}, {1, 0}};
    const std::vector<GridPoint> t = {{0, 0}, {2, 0}, {0, 2}};
    const auto d = derive_dimensions(r, t);
    CHECK(d.M == 5);
    CHECK(d.N == 3);
    CHECK(d.D == 5);
}

TEST_CASE("bounds report") {
    Dimensions d;
    d.M = 3;
    d.N = 3;
    d.D = 3;
    d.k = 4;
    Metrics m;
    m.visited = BoundingRect{{0, 0}, {3, 2}};
    CHECK(check_run_bounds(m, d).space_ok);
    m.visited = BoundingRect{{0, 0}, {2, 3}};
    CHECK(check_run_bounds(m, d).space_ok);
    m.visited = BoundingRect{{0, 0}, {3, 3}};
    CHECK_FALSE(check_run_bounds(m, d).space_ok);

    m.visited = BoundingRect{{0, 0}, {1, 1}};
    m.head_moves = 7;
    m.tail_moves = 17;
    m.max_inner_moves = 9;
    m.total_moves = 3 * 3 * 4 + 6 * 3;
    const auto ok = check_run_bounds(m, d);
    CHECK_FALSE(ok.head_ok);
    CHECK_FALSE(ok.tail_ok);
    CHECK(ok.inner_ok);
    CHECK(ok.total_ok);
    CHECK_FALSE(ok.tail_within_2d);
    CHECK(ok.failures.size() == 2);

    d.N = 2;
    m.visited = BoundingRect{{0, 0}, {3, 1}};
    CHECK_FALSE(check_run_bounds(m, d).space_ok);
}

TEST_CASE("event kinds round-trip") {
    for (auto k : {EventKind::Activate, EventKind::Look, EventKind::ComputeEnd, EventKind::MoveStart,
                   EventKind::MoveEnd}) {
        CHECK(parse_event_kind(to_string(k)) == k);
    }
    CHECK_FALSE(parse_event_kind("Jump"));
}

TEST_CASE("monitor flags two robots arriving at one node") {
    Monitor mon({{0, 0}, {2, 0}, {5, 5}}, {{0, 0}, {1, 0}, {2, 0}}, {});
    mon.observe(move_start(0, 0, {0, 0}, {1, 0}));
    mon.observe(move_start(0, 1, {2, 0}, {1, 0}));
    mon.end_tick(0);
    CHECK(mon.violations().empty());
    mon.observe(move_end(1, 0, {1, 0}));
    mon.observe(move_end(1, 1, {1, 0}));
    mon.end_tick(1);
    CHECK(has(mon.violations(), ViolationKind::NodeCollision));
}

TEST_CASE("monitor flags two robots on one edge") {
    Monitor mon({{0, 0}, {1, 0}, {4, 4}}, {{0, 0}, {1, 0}, {4, 4}}, {});
    mon.observe(move_start(0, 0, {0, 0}, {1, 0}));
    mon.observe(move_start(0, 1, {1, 0}, {0, 0}));
    CHECK(has(mon.violations(), ViolationKind::EdgeConflict));
}

TEST_CASE("monitor flags malformed events") {
    Monitor mon(kRobots, kTargets, {});
    mon.observe(move_end(0, 0, {0, 0}));
    CHECK(has(mon.violations(), ViolationKind::Malformed));
    Monitor other(kRobots, kTargets, {});
    other.observe(move_start(0, 9, {0, 0}, {1, 0}));
    CHECK(has(other.violations(), ViolationKind::Malformed));
    Monitor jump(kRobots, kTargets, {});
    jump.observe(move_start(0, 0, {0, 0}, {1, 1}));
    CHECK(has(jump.violations(), ViolationKind::Malformed));
}

TEST_CASE("monitor flags leaving the allowed box") {
    Monitor mon(kRobots, kTargets, {});
    mon.observe(move_start(0, 1, {2, 0}, {3, 0}));
    CHECK(has(mon.violations(), ViolationKind::SpaceExceeded));
}

TEST_CASE("monitor flags a stall") {
    Monitor mon(kRobots, kTargets, MonitorOptions{10, true});
    mon.end_tick(5);
    CHECK(mon.violations().empty());
    mon.end_tick(11);
    CHECK(has(mon.violations(), ViolationKind::Stall));
}

TEST_CASE("monitor flags symmetry among unlit still robots") {
    // Moving (0,1) to (1,1) makes the three robots mirror-symmetric.
    const std::vector<GridPoint> targets = {{0, 0}, {1, 0}, {3, 0}};
    Monitor mon(kRobots, targets, {});
    mon.observe(move_start(0, 2, {0, 1}, {1, 1}));
    mon.end_tick(0);
    CHECK(mon.violations().empty());
    mon.observe(move_end(1, 2, {1, 1}));
    mon.end_tick(1);
    CHECK(has(mon.violations(), ViolationKind::AsymmetryLost));
}

TEST_CASE("monitor flags an inner robot reversing its vertical direction") {
    const std::vector<GridPoint> robots = {{0, 0}, {2, 1}, {4, 2}};
    const std::vector<GridPoint> targets = {{0, 0}, {2, 0}, {4, 2}};
    Monitor mon(robots, targets, {});
    mon.observe(compute_end(0, 0, LightColor::Head));
    mon.observe(compute_end(0, 2, LightColor::Tail));
    mon.end_tick(0);
    mon.observe(move_start(1, 1, {2, 1}, {2, 0}));
    mon.observe(move_end(2, 1, {2, 0}));
    mon.end_tick(2);
    CHECK_FALSE(has(mon.violations(), ViolationKind::NonMonotoneVertical));
    mon.observe(move_start(3, 1, {2, 0}, {2, 1}));
    CHECK(has(mon.violations(), ViolationKind::NonMonotoneVertical));
}

TEST_CASE("monitor attributes moves by role") {
    Monitor mon(kRobots, kTargets, {});
    mon.observe(compute_end(0, 2, LightColor::Tail));
    mon.end_tick(0);
    mon.observe(compute_end(1, 0, LightColor::Head));
    mon.end_tick(1);
    mon.observe(move_start(2, 2, {0, 1}, {1, 1}));
    mon.end_tick(2);
    mon.observe(move_end(3, 2, {1, 1}));
    mon.end_tick(3);
    const auto m = mon.metrics();
    CHECK(m.head_id == 0);
    CHECK(m.tail_id == 2);
    CHECK(m.tail_moves == 1);
    CHECK(m.total_moves == 1);
    CHECK(m.visited->width() == 3);
    CHECK(m.visited->height() == 2);
    // Positions now match the targets but the lights are still on.
    CHECK_FALSE(mon.formed());
    mon.observe(compute_end(4, 0, LightColor::Off));
    mon.observe(compute_end(4, 2, LightColor::Off));
    mon.end_tick(4);
    CHECK(mon.formed());
    CHECK(mon.formed_tick() == 4);
    CHECK(mon.violations().empty());
}
