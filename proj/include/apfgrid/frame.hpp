#pragma once

// Leader election, global frame agreement, target embedding and the
// condition set the decision function branches on.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "apfgrid/grid.hpp"
#include "apfgrid/symmetry.hpp"

namespace apfgrid {

/// Raised when leaders cannot be elected (symmetric or malformed input).
class ElectionFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A global coordinate system. `y_dir` is empty when only the x axis is agreed.
struct Frame {
    GridPoint origin;
    Direction x_dir = Direction::pos_x();
    std::optional<Direction> y_dir;

    GridPoint to_global(GridPoint f) const;
    /// Throws std::logic_error if y is unset and p lies off the x axis.
    GridPoint to_frame(GridPoint p) const;
    Direction to_global(Direction d) const;
    Direction to_frame(Direction d) const;
    /// This frame if y is set, otherwise both y completions.
    std::vector<Frame> completions() const;

    friend bool operator==(const Frame&, const Frame&) = default;
};

using FrameCandidates = std::vector<Frame>;

/// Indices into the robot list the frame was computed from.
struct Roles {
    std::size_t head = 0;
    std::size_t tail = 0;
};

struct Election {
    Frame frame;
    Roles roles;
    BitString bits;
};

/// Leader scan election on a still, asymmetric configuration.
/// Throws ElectionFailure on ties or robots in motion.
Election procedure_one(std::span<const RobotView> robots);
Election procedure_one(std::span<const GridPoint> points);

/// The Head-coloured robot at an SER corner and the Tail-coloured robot,
/// if both exist.
std::optional<Roles> lit_roles(std::span<const RobotView> robots);

/// Frames agreed by the lit leaders. Throws std::invalid_argument unless
/// lit_roles() succeeds on a still configuration.
FrameCandidates procedure_two(std::span<const RobotView> robots);

struct Embedding {
    std::vector<GridPoint> targets;
    GridPoint h_target;
    GridPoint t_target;
};

/// The pattern in its own canonical frame: leading corner at (0,0), longer
/// side along +x.
struct TargetShape {
    int long_side = 1;
    int short_side = 1;
    std::vector<GridPoint> points;
    GridPoint head_target;
    GridPoint tail_target;

    /// Throws InvalidInstance on an empty pattern.
    static TargetShape from_pattern(std::span<const GridPoint> pattern);

    bool collinear() const { return short_side == 1; }
    /// Targets other than the head target, sorted.
    std::vector<GridPoint> without_head() const;
    /// Targets other than both leader targets, sorted.
    std::vector<GridPoint> inner() const;
};

/// Throws std::invalid_argument if the frame lacks y and the pattern is not collinear.
Embedding embed_target(const Frame& frame, const TargetShape& shape);

struct ConditionSet {
    bool c_asym = false;
    bool c_final = false;
    bool c_hbar = false;
    bool c_inner = false;
    bool c_lumi = false;
    bool c_corner = false;
    bool c_enough = false;
    bool c_rect = false;
};

/// Frame-dependent conditions under one completed frame.
struct FrameConditions {
    Frame frame;
    int width = 0;   // SER extent along x
    int height = 0;  // SER extent along y
    bool c_hbar = false;
    bool c_inner = false;
    bool c_corner = false;
    bool c_enough = false;
    bool c_rect = false;
};

struct Evaluation {
    ConditionSet set;
    /// Completed frames in canonical order.
    std::vector<FrameConditions> frames;
    std::size_t selected = 0;

    const FrameConditions& chosen() const { return frames.at(selected); }
};

/// Canonical ordering key: colour-aware scan of the robots under `frame`
/// (0 empty, 1 off, 2 head, 3 tail). Equal keys mean the frames are
/// indistinguishable.
std::string colored_scan(std::span<const RobotView> robots, const Frame& frame);

/// Completes every candidate, orders completions by descending colored_scan
/// (stable), and evaluates the table of conditions. The selected frame is the
/// first with c_inner, else the first with c_hbar, else the first.
Evaluation evaluate_conditions(std::span<const RobotView> robots,
                               const FrameCandidates& candidates, const Roles& roles,
                               const TargetShape& target);

/// Frame-free terms only (c_asym, c_final, c_lumi).
ConditionSet frame_free_conditions(std::span<const RobotView> robots,
                                   std::span<const GridPoint> pattern);

bool all_still(std::span<const RobotView> robots);
std::vector<GridPoint> node_positions(std::span<const RobotView> robots);

}  // namespace apfgrid
