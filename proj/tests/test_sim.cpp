#include <doctest.h>

#include <map>
#include <random>

#include "apfgrid/io.hpp"
#include "apfgrid/sim.hpp"
#include "oracles.hpp"

using namespace apfgrid;

namespace {

const Instance kW1{{{0, 0}, {2, 0}, {0, 1}}, {{0, 0}, {2, 0}, {1, 1}}};

SchedulerPolicy policy(SchedulerKind kind, std::uint64_t seed) {
    SchedulerPolicy p;
    p.kind = kind;
    p.seed = seed;
    return p;
}

}  // namespace

TEST_CASE("scheduler names") {
    for (auto k : {SchedulerKind::FSync, SchedulerKind::SSync, SchedulerKind::ASync}) {
        CHECK(parse_scheduler(to_string(k)) == k);
    }
    CHECK_FALSE(parse_scheduler("sync"));
    CHECK(to_string(Verdict::Formed) == "Formed");
}

TEST_CASE("instance validation") {
    CHECK_NOTHROW(validate_instance(kW1));
    Instance dup{{{0, 0}, {0, 0}, {1, 1}}, {{0, 0}, {1, 0}, {2, 0}}};
    CHECK_THROWS_WITH_AS(validate_instance(dup), "multiplicity", InvalidInstance);
    Instance count{{{0, 0}, {2, 0}, {0, 1}}, {{0, 0}, {1, 0}}};
    CHECK_THROWS_WITH_AS(validate_instance(count), "cardinality", InvalidInstance);
    Instance sym{{{0, 0}, {2, 0}, {1, 1}}, {{0, 0}, {1, 0}, {2, 0}}};
    CHECK_THROWS_WITH_AS(validate_instance(sym), "symmetric initial configuration", InvalidInstance);
}

TEST_CASE("worked instance under the fully synchronous scheduler") {
    const auto r = run_simulation(kW1, policy(SchedulerKind::FSync, 7), {}, false);
    CHECK(r.verdict == Verdict::Formed);
    CHECK(r.violations.empty());
    CHECK(r.metrics.head_moves == 0);
    CHECK(r.metrics.tail_moves == 1);
    CHECK(r.metrics.max_inner_moves == 0);
    CHECK(r.metrics.visited->width() == 3);
    CHECK(r.metrics.visited->height() == 2);
    CHECK(patterns_equivalent(r.final_config.node_positions(), kW1.targets));
}

TEST_CASE("worked instance under every scheduler and frame mode") {
    for (auto kind : {SchedulerKind::FSync, SchedulerKind::SSync, SchedulerKind::ASync}) {
        for (bool strict : {false, true}) {
            for (std::uint64_t seed = 0; seed < 5; ++seed) {
                const auto r = run_simulation(kW1, policy(kind, seed), {}, strict);
                CHECK(r.verdict == Verdict::Formed);
                CHECK(r.metrics.tail_moves == 1);
            }
        }
    }
}

TEST_CASE("an already formed instance finishes at once") {
    const Instance done{{{0, 0}, {1, 0}, {3, 0}}, {{5, 5}, {5, 6}, {5, 8}}};
    const auto r = run_simulation(done, policy(SchedulerKind::ASync, 1), {}, false);
    CHECK(r.verdict == Verdict::Formed);
    CHECK(r.trace.empty());
}

TEST_CASE("a single robot is already formed") {
    const Instance one{{{3, 3}}, {{0, 0}}};
    CHECK(run_simulation(one, policy(SchedulerKind::FSync, 0), {}, false).verdict == Verdict::Formed);
}

TEST_CASE("tick limit yields a timeout") {
    RunLimits limits;
    limits.max_ticks = 2;
    const auto r = run_simulation(kW1, policy(SchedulerKind::FSync, 0), limits, false);
    CHECK(r.verdict == Verdict::Timeout);
}

TEST_CASE("snapshots hide robot identities") {
    Configuration world;
    world.add({5, Placement::at({2, 0}), LightColor::Off});
    world.add({1, Placement::at({0, 0}), LightColor::Head});
    world.add({3, Placement::on_edge({0, 1}, {0, 2}), LightColor::Tail});
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        const auto view = take_snapshot(world, 5, true, rng);
        const auto& robots = view.snapshot.robots;
        CHECK(std::is_sorted(robots.begin(), robots.end(), [](const RobotView& a, const RobotView& b) {
            return a.placement.endpoints() < b.placement.endpoints();
        }));
        CHECK(robots[view.snapshot.observer].placement == Placement::at({0, 0}));
        CHECK(view.to_local.apply(GridPoint{2, 0}) == GridPoint{0, 0});
    }
}

TEST_CASE("property: replaying a trace reproduces the verdict and metrics") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Instance inst = generate_random_instance(seed, 3, 8, 6);
        for (auto kind : {SchedulerKind::SSync, SchedulerKind::ASync}) {
            const auto r = run_simulation(inst, policy(kind, seed), {}, seed % 2 == 0);
            REQUIRE(r.verdict == Verdict::Formed);
            const auto re = replay_trace(inst, r.trace);
            CHECK(re.verdict == Verdict::Formed);
            CHECK(re.violations.empty());
            CHECK(re.metrics.total_moves == r.metrics.total_moves);
            CHECK(re.metrics.tail_moves == r.metrics.tail_moves);
            CHECK(re.metrics.head_moves == r.metrics.head_moves);
            CHECK(re.final_config.node_positions() == r.final_config.node_positions());
        }
    }
}

TEST_CASE("property: runs are deterministic per seed") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Instance inst = generate_random_instance(100 + seed, 3, 10, 7);
        const auto a = run_simulation(inst, policy(SchedulerKind::ASync, seed), {}, true);
        const auto b = run_simulation(inst, policy(SchedulerKind::ASync, seed), {}, true);
        CHECK(a.trace == b.trace);
    }
}

TEST_CASE("asynchronous runs interleave cycles") {
    const Instance inst = generate_random_instance(3, 6, 6, 6);
    const auto r = run_simulation(inst, policy(SchedulerKind::ASync, 3), {}, false);
    REQUIRE(r.verdict == Verdict::Formed);
    bool overlap = false;
    std::map<int, bool> busy;
    for (const auto& e : r.trace) {
        if (e.kind == EventKind::Look) {
            for (const auto& [id, b] : busy) overlap = overlap || (b && id != e.robot);
            busy[e.robot] = true;
        }
        if (e.kind == EventKind::MoveEnd || (e.kind == EventKind::ComputeEnd && !e.step)) busy[e.robot] = false;
    }
    CHECK(overlap);
}

TEST_CASE("property: every formed run stays within its budgets") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Instance inst = generate_random_instance(500 + seed, 3, 12, 8);
        const auto r = run_simulation(inst, policy(SchedulerKind::ASync, seed), {}, true);
        CHECK(r.verdict == Verdict::Formed);
        CHECK(r.bounds.pass());
        CHECK(r.violations.empty());
    }
}
