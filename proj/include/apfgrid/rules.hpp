#pragma once

// The per-robot decision function.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "apfgrid/frame.hpp"
#include "apfgrid/grid.hpp"

namespace apfgrid {

/// What a robot does at the end of Compute: its new light, and an optional
/// one-node step.
struct Action {
    LightColor color = LightColor::Off;
    std::optional<Direction> step;

    friend bool operator==(const Action&, const Action&) = default;
};

/// Everything a robot sees at Look, in its own coordinates.
struct Snapshot {
    std::vector<RobotView> robots;
    std::size_t observer = 0;
};

/// Total decision function. Any snapshot with a robot in motion yields
/// keep-colour-and-stay; so does every robot that is not designated to act.
Action compute_action(const Snapshot& snapshot, const TargetShape& target);

/// Leader-election phase. Assumes a still, asymmetric snapshot without lit leaders.
Action phase_non_lumi(const Snapshot& snapshot, const TargetShape& target);

/// Lit phase. Assumes a still snapshot on which lit_roles() succeeds.
Action phase_lumi(const Snapshot& snapshot, const TargetShape& target, const Roles& roles);

/// Line bookkeeping for rearrangement. Counts cover inner robots and inner
/// targets only; `empty` means no robot of any kind sits on the line.
struct LineLedger {
    int i = 0;
    int a = 0;
    int b = 0;
    int a_target = 0;
    int b_target = 0;
    int robots_on = 0;
    int targets_on = 0;
    bool empty = true;
};

struct LineClass {
    bool upward = false;
    bool downward = false;
    bool saturated = false;
};

/// Neighbouring ledgers are null for lines outside the rectangle.
LineClass classify_line(const LineLedger* below, const LineLedger& line, const LineLedger* above);

/// Robots and targets in frame coordinates. The head sits at the origin and
/// the rectangle spans [0,width) x [0,height).
struct RearrangeView {
    int width = 0;
    int height = 0;
    std::vector<GridPoint> robots;
    std::size_t head = 0;
    std::size_t tail = 0;
    std::vector<GridPoint> inner_targets;

    bool occupied(GridPoint p) const;
    bool inside(GridPoint p) const {
        return p.x >= 0 && p.y >= 0 && p.x < width && p.y < height;
    }
};

std::vector<LineLedger> compute_ledgers(const RearrangeView& view);

enum class RearrangeRule {
    UpEmptyLine,
    UpFreeNode,
    UpSlide,
    DownEmptyLine,
    DownFreeNode,
    DownSlide,
    HoleShift,
    Saturated,
};

/// One robot and its step in frame directions.
struct Designation {
    std::size_t robot = 0;
    Direction step = Direction::pos_x();
    int line = 0;
    RearrangeRule rule = RearrangeRule::Saturated;
};

/// The move each line would make on its own, bottom line first.
std::vector<std::optional<Designation>> line_designations(const RearrangeView& view);

/// The single robot allowed to move on this snapshot: the lowest line with a move.
std::optional<Designation> rearrange_designation(const RearrangeView& view);

/// The observer's action under rearrangement; `frame` maps the view back.
Action rearrange_action(const RearrangeView& view, std::size_t observer, const Frame& frame,
                        LightColor observer_color);

}  // namespace apfgrid
