#include <doctest.h>

#include <random>
#include <set>

#include "apfgrid/frame.hpp"
#include "apfgrid/verify.hpp"
#include "oracles.hpp"

using namespace apfgrid;

namespace {

RobotView off(GridPoint p) { return {Placement::at(p), LightColor::Off}; }
RobotView head(GridPoint p) { return {Placement::at(p), LightColor::Head}; }
RobotView tail(GridPoint p) { return {Placement::at(p), LightColor::Tail}; }

const std::vector<GridPoint> kW1Robots = {{0, 0}, {2, 0}, {0, 1}};
const std::vector<GridPoint> kW1Targets = {{0, 0}, {2, 0}, {1, 1}};

}  // namespace

TEST_CASE("frame conversions are inverse to each other") {
    std::mt19937_64 rng(2);
    const Direction dirs[] = {Direction::pos_x(), Direction::neg_x(), Direction::pos_y(), Direction::neg_y()};
    for (int trial = 0; trial < 200; ++trial) {
        const Direction x = dirs[rng() % 4];
        const Direction y = rng() % 2 ? Direction::from_offset(-x.dy(), x.dx()) : Direction::from_offset(x.dy(), -x.dx());
        const Frame f{{int(rng() % 7), int(rng() % 7)}, x, y};
        const GridPoint p{int(rng() % 15) - 7, int(rng() % 15) - 7};
        CHECK(f.to_frame(f.to_global(p)) == p);
        CHECK(f.to_global(f.to_frame(p)) == p);
        CHECK(f.to_global(Direction::pos_x()) == x);
        CHECK(f.to_frame(y) == Direction::pos_y());
    }
}

TEST_CASE("a frame without y completes two ways") {
    const Frame f{{1, 1}, Direction::neg_y(), std::nullopt};
    const auto c = f.completions();
    REQUIRE(c.size() == 2);
    CHECK(c[0].y_dir != c[1].y_dir);
    CHECK(c[0].y_dir->perpendicular_to(Direction::neg_y()));
    CHECK(f.to_frame(GridPoint{1, -2}) == GridPoint{3, 0});
    CHECK_THROWS_AS(f.to_frame(GridPoint{2, 1}), std::logic_error);
}

TEST_CASE("procedure one on the worked instance") {
    const auto e = procedure_one(kW1Robots);
    CHECK(e.bits == "101100");
    CHECK(e.frame.origin == GridPoint{0, 0});
    CHECK(e.frame.x_dir == Direction::pos_x());
    CHECK(e.frame.y_dir == Direction::pos_y());
    CHECK(e.roles.head == 0);
    CHECK(e.roles.tail == 2);
}

TEST_CASE("procedure one on a line leaves y open") {
    const std::vector<GridPoint> pts = {{0, 0}, {1, 0}, {3, 0}};
    const auto e = procedure_one(pts);
    CHECK_FALSE(e.frame.y_dir);
    CHECK(e.roles.head == 0);
    CHECK(e.roles.tail == 2);
}

TEST_CASE("procedure one refuses symmetric or moving input") {
    const std::vector<GridPoint> sym = {{0, 0}, {2, 0}, {1, 1}};
    CHECK_THROWS_AS(procedure_one(sym), ElectionFailure);
    const std::vector<RobotView> moving = {{Placement::on_edge({0, 0}, {0, 1}), LightColor::Off}, off({2, 0}),
                                           off({0, 1})};
    CHECK_THROWS_AS(procedure_one(moving), ElectionFailure);
}

TEST_CASE("property: procedure one commutes with isometries") {
    for (const auto& s : oracle::subsets(3, 3, 4)) {
        if (oracle::symmetric(s)) continue;
        const auto e = procedure_one(s);
        for (int i = 0; i < Isometry::kPointGroupSize; ++i) {
            const auto g = Isometry::point_group(i).then(Isometry::translation({3, -1}));
            const auto img = apply_isometry(s, g);
            const auto eg = procedure_one(img);
            CHECK(eg.roles.head == e.roles.head);
            CHECK(eg.roles.tail == e.roles.tail);
            CHECK(eg.frame.origin == g.apply(e.frame.origin));
            CHECK(eg.frame.x_dir == g.apply(e.frame.x_dir));
        }
    }
}

TEST_CASE("lit roles need the head at a corner") {
    CHECK(lit_roles(std::vector<RobotView>{head({0, 0}), off({2, 0}), tail({0, 1})}));
    CHECK_FALSE(lit_roles(std::vector<RobotView>{head({1, 0}), off({2, 0}), tail({0, 1})}));
    CHECK_FALSE(lit_roles(std::vector<RobotView>{head({0, 0}), off({2, 0}), off({0, 1})}));
}

TEST_CASE("procedure two cases") {
    SUBCASE("longer side decides") {
        const std::vector<RobotView> r = {head({0, 0}), off({1, 1}), tail({1, 3})};
        const auto f = procedure_two(r);
        REQUIRE(f.size() == 1);
        CHECK(f[0].x_dir == Direction::pos_y());
        CHECK(f[0].y_dir == Direction::pos_x());
    }
    SUBCASE("square with the tail opposite gives two frames") {
        const std::vector<RobotView> r = {head({2, 2}), off({1, 2}), tail({0, 0})};
        const auto f = procedure_two(r);
        REQUIRE(f.size() == 2);
        CHECK(f[0].origin == GridPoint{2, 2});
        CHECK(f[0].x_dir == Direction::neg_x());
        CHECK(f[1].x_dir == Direction::neg_y());
    }
    SUBCASE("square with the tail on the far row") {
        const std::vector<RobotView> r = {head({0, 0}), off({2, 0}), tail({1, 2})};
        const auto f = procedure_two(r);
        REQUIRE(f.size() == 1);
        CHECK(f[0].x_dir == Direction::pos_x());
    }
    SUBCASE("line points from head to tail") {
        const std::vector<RobotView> r = {tail({0, 0}), off({1, 0}), head({3, 0})};
        const auto f = procedure_two(r);
        REQUIRE(f.size() == 1);
        CHECK(f[0].x_dir == Direction::neg_x());
        CHECK_FALSE(f[0].y_dir);
    }
    SUBCASE("missing head is an error") {
        const std::vector<RobotView> r = {off({0, 0}), off({1, 0}), tail({3, 0})};
        CHECK_THROWS_AS(procedure_two(r), std::invalid_argument);
    }
}

TEST_CASE("target shape of the worked pattern") {
    const auto s = TargetShape::from_pattern(kW1Targets);
    CHECK(s.long_side == 3);
    CHECK(s.short_side == 2);
    CHECK(s.head_target == GridPoint{0, 0});
    CHECK(s.tail_target == GridPoint{1, 1});
    CHECK(s.inner() == std::vector<GridPoint>{{2, 0}});
    CHECK(s.without_head() == std::vector<GridPoint>{{1, 1}, {2, 0}});
    CHECK_FALSE(s.collinear());
    CHECK_THROWS_AS(TargetShape::from_pattern(std::vector<GridPoint>{}), InvalidInstance);
}

TEST_CASE("property: target shape is canonical") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        std::set<GridPoint> pts;
        const int k = 1 + static_cast<int>(rng() % 6);
        while (static_cast<int>(pts.size()) < k) pts.insert({int(rng() % 6), int(rng() % 4)});
        const std::vector<GridPoint> v(pts.begin(), pts.end());
        const auto s = TargetShape::from_pattern(v);
        CHECK(s.long_side >= s.short_side);
        CHECK(oracle::equivalent(s.points, v));
        const auto ser = compute_ser(s.points);
        CHECK(ser.min_corner == GridPoint{0, 0});
        CHECK(ser.width() == s.long_side);
        CHECK(ser.height() == s.short_side);
        const auto g = Isometry::point_group(int(rng() % 8));
        CHECK(TargetShape::from_pattern(apply_isometry(v, g)).points == s.points);
    }
}

TEST_CASE("embedding needs a y axis for a planar pattern") {
    const auto s = TargetShape::from_pattern(kW1Targets);
    const Frame line{{0, 0}, Direction::pos_x(), std::nullopt};
    CHECK_THROWS_AS(embed_target(line, s), std::invalid_argument);
    const Frame f{{5, 5}, Direction::neg_y(), Direction::pos_x()};
    const auto e = embed_target(f, s);
    CHECK(e.h_target == GridPoint{5, 5});
    CHECK(e.t_target == GridPoint{6, 4});
    CHECK(oracle::equivalent(e.targets, kW1Targets));
}

TEST_CASE("conditions on the worked instance with lit leaders") {
    const std::vector<RobotView> r = {head({0, 0}), off({2, 0}), tail({0, 1})};
    const auto shape = TargetShape::from_pattern(kW1Targets);
    const auto roles = lit_roles(r);
    REQUIRE(roles);
    const auto ev = evaluate_conditions(r, procedure_two(r), *roles, shape);
    CHECK(ev.set.c_lumi);
    CHECK(ev.set.c_inner);
    CHECK_FALSE(ev.set.c_hbar);
    CHECK_FALSE(ev.set.c_corner);
    CHECK(ev.set.c_enough);
    CHECK(ev.set.c_rect);
    CHECK_FALSE(ev.set.c_final);
    CHECK(ev.chosen().c_inner);
}

TEST_CASE("final configuration is recognised without a frame") {
    const std::vector<RobotView> r = {off({3, 3}), off({4, 2}), off({3, 1})};
    const auto set = frame_free_conditions(r, kW1Targets);
    CHECK(set.c_final);
    CHECK_FALSE(set.c_lumi);
    CHECK_FALSE(set.c_asym);
}

TEST_CASE("colored scan separates colours") {
    const Frame f{{0, 0}, Direction::pos_x(), Direction::pos_y()};
    const std::vector<RobotView> a = {head({0, 0}), off({1, 0})};
    const std::vector<RobotView> b = {head({0, 0}), tail({1, 0})};
    CHECK(colored_scan(a, f) < colored_scan(b, f));
}

TEST_CASE("the selected frame prefers c_inner") {
    // Square, tail opposite the head; only the swapped reading places the inner robot.
    const std::vector<GridPoint> pattern = {{0, 0}, {0, 2}, {2, 1}};
    const auto shape = TargetShape::from_pattern(pattern);
    const Frame plain{{0, 0}, Direction::pos_x(), Direction::pos_y()};
    const GridPoint inner = shape.inner().front();
    for (const auto& frame : {plain, Frame{{0, 0}, Direction::pos_y(), Direction::pos_x()}}) {
        const std::vector<RobotView> r = {head({0, 0}), off(frame.to_global(inner)), tail({2, 2})};
        const auto ev = evaluate_conditions(r, procedure_two(r), *lit_roles(r), shape);
        CHECK(ev.set.c_inner);
        CHECK(ev.chosen().c_inner);
    }
}
