#pragma once

// Integer grid geometry, robot placements, and the eight grid isometries.

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace apfgrid {

/// Thrown when an input cannot describe a valid robot instance.
class InvalidInstance : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GridPoint {
    int x = 0;
    int y = 0;

    friend constexpr auto operator<=>(const GridPoint&, const GridPoint&) = default;

    constexpr GridPoint operator+(GridPoint o) const { return {x + o.x, y + o.y}; }
    constexpr GridPoint operator-(GridPoint o) const { return {x - o.x, y - o.y}; }
    constexpr GridPoint operator*(int s) const { return {x * s, y * s}; }
};

std::string to_string(GridPoint p);

/// A unit step along one grid axis.
class Direction {
public:
    static constexpr Direction pos_x() { return {1, 0}; }
    static constexpr Direction neg_x() { return {-1, 0}; }
    static constexpr Direction pos_y() { return {0, 1}; }
    static constexpr Direction neg_y() { return {0, -1}; }

    /// Throws std::invalid_argument unless (dx, dy) is a unit axis vector.
    static Direction from_offset(int dx, int dy);

    constexpr int dx() const { return dx_; }
    constexpr int dy() const { return dy_; }
    constexpr GridPoint offset() const { return {dx_, dy_}; }
    constexpr Direction reversed() const { return {-dx_, -dy_}; }
    constexpr bool is_horizontal() const { return dy_ == 0; }
    constexpr bool perpendicular_to(Direction o) const { return dx_ * o.dx_ + dy_ * o.dy_ == 0; }

    friend constexpr bool operator==(const Direction&, const Direction&) = default;

private:
    constexpr Direction(int dx, int dy) : dx_(dx), dy_(dy) {}
    int dx_;
    int dy_;
};

/// "+x", "-x", "+y", "-y".
std::string to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view text);

enum class LightColor { Off, Head, Tail };

std::string_view to_string(LightColor c);
std::optional<LightColor> parse_color(std::string_view text);

/// Where a robot is: resting on a node, or travelling along a unit edge.
class Placement {
public:
    static Placement at(GridPoint node) { return Placement(node, node, false); }
    /// Throws std::invalid_argument unless u and v are grid neighbours.
    static Placement on_edge(GridPoint u, GridPoint v);

    bool is_at_node() const { return !on_edge_; }
    bool is_on_edge() const { return on_edge_; }

    /// The occupied node; only meaningful when is_at_node().
    GridPoint node() const { return first_; }
    /// Edge endpoints in ascending order; only meaningful when is_on_edge().
    std::pair<GridPoint, GridPoint> endpoints() const { return {first_, second_}; }

    friend bool operator==(const Placement&, const Placement&) = default;

private:
    Placement(GridPoint a, GridPoint b, bool edge) : first_(a), second_(b), on_edge_(edge) {}
    GridPoint first_;
    GridPoint second_;
    bool on_edge_;
};

/// A robot as decision logic sees it: no identity, just where it is and its light.
struct RobotView {
    Placement placement;
    LightColor color = LightColor::Off;
};

struct Robot {
    int id = 0;
    Placement placement = Placement::at({});
    LightColor color = LightColor::Off;
};

/// The world state. Rejects a second robot on an occupied node.
class Configuration {
public:
    Configuration() = default;
    explicit Configuration(std::vector<Robot> robots);

    /// Throws InvalidInstance on duplicate id or node multiplicity.
    void add(Robot r);

    const std::vector<Robot>& robots() const { return robots_; }
    std::vector<Robot>& mutable_robots() { return robots_; }
    std::size_t size() const { return robots_.size(); }
    const Robot& by_id(int id) const;
    Robot& by_id(int id);

    bool is_still() const;
    /// Nodes of robots resting on nodes, in robot order.
    std::vector<GridPoint> node_positions() const;
    std::vector<RobotView> anonymous_view() const;

private:
    std::vector<Robot> robots_;
};

bool is_still(const Configuration& config);

struct BoundingRect {
    GridPoint min_corner;
    GridPoint max_corner;

    int width() const { return max_corner.x - min_corner.x + 1; }
    int height() const { return max_corner.y - min_corner.y + 1; }
    bool contains(GridPoint p) const {
        return p.x >= min_corner.x && p.x <= max_corner.x && p.y >= min_corner.y &&
               p.y <= max_corner.y;
    }
    bool is_corner(GridPoint p) const {
        return (p.x == min_corner.x || p.x == max_corner.x) &&
               (p.y == min_corner.y || p.y == max_corner.y);
    }
    /// The corner diagonally across from `corner`.
    GridPoint opposite(GridPoint corner) const {
        return {min_corner.x + max_corner.x - corner.x, min_corner.y + max_corner.y - corner.y};
    }
    BoundingRect including(GridPoint p) const;

    friend bool operator==(const BoundingRect&, const BoundingRect&) = default;
};

/// Smallest enclosing rectangle. Throws InvalidInstance on an empty set.
BoundingRect compute_ser(std::span<const GridPoint> points);

/// An element of the grid's symmetry group: one of the 8 point-group maps
/// followed by an integer translation. Rotations are counterclockwise.
class Isometry {
public:
    static constexpr int kPointGroupSize = 8;

    static Isometry identity() { return point_group(0); }
    /// 0..3 rotate by 0/90/180/270 degrees; 4 mirrors x, 5 mirrors y,
    /// 6 swaps x and y, 7 maps (x, y) to (-y, -x).
    static Isometry point_group(int index);
    static Isometry translation(GridPoint t);

    int linear_index() const { return index_; }
    GridPoint translation_part() const { return shift_; }
    bool swaps_axes() const;

    GridPoint apply(GridPoint p) const;
    Direction apply(Direction d) const;

    /// (this.then(g))(p) == g(this(p)).
    Isometry then(const Isometry& g) const;
    Isometry inverse() const;

    friend bool operator==(const Isometry&, const Isometry&) = default;

private:
    Isometry(int index, GridPoint shift) : index_(index), shift_(shift) {}
    GridPoint linear(GridPoint p) const;

    int index_;
    GridPoint shift_;
};

std::string describe(const Isometry& g);

std::vector<GridPoint> apply_isometry(std::span<const GridPoint> points, const Isometry& g);

/// Sorted copy without duplicates; the canonical form used for set equality.
std::vector<GridPoint> sorted_set(std::span<const GridPoint> points);

}  // namespace apfgrid
