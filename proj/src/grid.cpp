#include "apfgrid/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

namespace apfgrid {

namespace {

struct Mat {
    int a, b, c, d;
    friend bool operator==(const Mat&, const Mat&) = default;
};

constexpr std::array<Mat, Isometry::kPointGroupSize> kMats = {{
    {1, 0, 0, 1},
    {0, -1, 1, 0},
    {-1, 0, 0, -1},
    {0, 1, -1, 0},
    {-1, 0, 0, 1},
    {1, 0, 0, -1},
    {0, 1, 1, 0},
    {0, -1, -1, 0},
}};

constexpr std::array<const char*, Isometry::kPointGroupSize> kNames = {
    "id", "rot90", "rot180", "rot270", "mirror-x", "mirror-y", "swap-xy", "anti-swap"};

Mat multiply(const Mat& l, const Mat& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
            l.c * r.b + l.d * r.d};
}

int index_of(const Mat& m) {
    for (int i = 0; i < Isometry::kPointGroupSize; ++i) {
        if (kMats[static_cast<std::size_t>(i)] == m) return i;
    }
    throw std::logic_error("matrix outside the grid point group");
}

}  // namespace

std::string to_string(GridPoint p) {
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

Direction Direction::from_offset(int dx, int dy) {
    if (std::abs(dx) + std::abs(dy) != 1) {
        throw std::invalid_argument("not a unit axis offset");
    }
    return {dx, dy};
}

std::string to_string(Direction d) {
    if (d == Direction::pos_x()) return "+x";
    if (d == Direction::neg_x()) return "-x";
    if (d == Direction::pos_y()) return "+y";
    return "-y";
}

std::optional<Direction> parse_direction(std::string_view text) {
    if (text == "+x") return Direction::pos_x();
    if (text == "-x") return Direction::neg_x();
    if (text == "+y") return Direction::pos_y();
    if (text == "-y") return Direction::neg_y();
    return std::nullopt;
}

std::string_view to_string(LightColor c) {
    switch (c) {
        case LightColor::Off: return "off";
        case LightColor::Head: return "head";
        case LightColor::Tail: return "tail";
    }
    return "off";
}

std::optional<LightColor> parse_color(std::string_view text) {
    if (text == "off") return LightColor::Off;
    if (text == "head") return LightColor::Head;
    if (text == "tail") return LightColor::Tail;
    return std::nullopt;
}

Placement Placement::on_edge(GridPoint u, GridPoint v) {
    const GridPoint d = v - u;
    if (std::abs(d.x) + std::abs(d.y) != 1) {
        throw std::invalid_argument("edge endpoints are not neighbours");
    }
    return Placement(std::min(u, v), std::max(u, v), true);
}

Configuration::Configuration(std::vector<Robot> robots) {
    for (auto& r : robots) add(r);
}

void Configuration::add(Robot r) {
    for (const auto& o : robots_) {
        if (o.id == r.id) throw InvalidInstance("duplicate robot id " + std::to_string(r.id));
        if (o.placement.is_at_node() && r.placement.is_at_node() &&
            o.placement.node() == r.placement.node()) {
            throw InvalidInstance("multiplicity at " + to_string(r.placement.node()));
        }
    }
    robots_.push_back(r);
}

const Robot& Configuration::by_id(int id) const {
    for (const auto& r : robots_) {
        if (r.id == id) return r;
    }
    throw std::out_of_range("no robot with id " + std::to_string(id));
}

Robot& Configuration::by_id(int id) {
    return const_cast<Robot&>(std::as_const(*this).by_id(id));
}

bool Configuration::is_still() const {
    return std::all_of(robots_.begin(), robots_.end(),
                       [](const Robot& r) { return r.placement.is_at_node(); });
}

std::vector<GridPoint> Configuration::node_positions() const {
    std::vector<GridPoint> out;
    out.reserve(robots_.size());
    for (const auto& r : robots_) {
        if (r.placement.is_at_node()) out.push_back(r.placement.node());
    }
    return out;
}

std::vector<RobotView> Configuration::anonymous_view() const {
    std::vector<RobotView> out;
    out.reserve(robots_.size());
    for (const auto& r : robots_) out.push_back({r.placement, r.color});
    return out;
}

bool is_still(const Configuration& config) { return config.is_still(); }

BoundingRect BoundingRect::including(GridPoint p) const {
    return {{std::min(min_corner.x, p.x), std::min(min_corner.y, p.y)},
            {std::max(max_corner.x, p.x), std::max(max_corner.y, p.y)}};
}

BoundingRect compute_ser(std::span<const GridPoint> points) {
    if (points.empty()) throw InvalidInstance("empty point set has no enclosing rectangle");
    BoundingRect r{points.front(), points.front()};
    for (const auto& p : points) r = r.including(p);
    return r;
}

Isometry Isometry::point_group(int index) {
    if (index < 0 || index >= kPointGroupSize) throw std::out_of_range("point group index");
    return {index, {0, 0}};
}

Isometry Isometry::translation(GridPoint t) { return {0, t}; }

bool Isometry::swaps_axes() const {
    return kMats[static_cast<std::size_t>(index_)].a == 0;
}

GridPoint Isometry::linear(GridPoint p) const {
    const Mat& m = kMats[static_cast<std::size_t>(index_)];
    return {m.a * p.x + m.b * p.y, m.c * p.x + m.d * p.y};
}

GridPoint Isometry::apply(GridPoint p) const { return linear(p) + shift_; }

Direction Isometry::apply(Direction d) const {
    const GridPoint v = linear(d.offset());
    return Direction::from_offset(v.x, v.y);
}

Isometry Isometry::then(const Isometry& g) const {
    // g(L p + s) = G L p + G s + t
    const Mat m = multiply(kMats[static_cast<std::size_t>(g.index_)],
                           kMats[static_cast<std::size_t>(index_)]);
    return {index_of(m), g.linear(shift_) + g.shift_};
}

Isometry Isometry::inverse() const {
    const Mat& m = kMats[static_cast<std::size_t>(index_)];
    // Orthogonal: inverse is the transpose.
    const Mat t{m.a, m.c, m.b, m.d};
    Isometry inv{index_of(t), {0, 0}};
    const GridPoint back = inv.linear(shift_);
    inv.shift_ = {-back.x, -back.y};
    return inv;
}

std::string describe(const Isometry& g) {
    return std::string(kNames[static_cast<std::size_t>(g.linear_index())]) + "+" +
           to_string(g.translation_part());
}

std::vector<GridPoint> apply_isometry(std::span<const GridPoint> points, const Isometry& g) {
    std::vector<GridPoint> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(g.apply(p));
    return out;
}

std::vector<GridPoint> sorted_set(std::span<const GridPoint> points) {
    std::vector<GridPoint> out(points.begin(), points.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace apfgrid
