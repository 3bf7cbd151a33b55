#include "apfgrid/frame.hpp"

#include <algorithm>

#include "apfgrid/verify.hpp"

namespace apfgrid {

namespace {

int dot(GridPoint a, GridPoint b) { return a.x * b.x + a.y * b.y; }

Direction perpendicular(Direction d) { return Direction::from_offset(-d.dy(), d.dx()); }

Direction toward(int from, int to, bool horizontal) {
    const int s = to >= from ? 1 : -1;
    return horizontal ? Direction::from_offset(s, 0) : Direction::from_offset(0, s);
}

std::optional<std::size_t> robot_at(std::span<const RobotView> robots, GridPoint p) {
    for (std::size_t i = 0; i < robots.size(); ++i) {
        if (robots[i].placement.is_at_node() && robots[i].placement.node() == p) return i;
    }
    return std::nullopt;
}

/// Nodes of every robot plus both endpoints of every edge in use.
BoundingRect occupied_rect(std::span<const RobotView> robots) {
    std::vector<GridPoint> pts;
    for (const auto& r : robots) {
        if (r.placement.is_at_node()) {
            pts.push_back(r.placement.node());
        } else {
            pts.push_back(r.placement.endpoints().first);
            pts.push_back(r.placement.endpoints().second);
        }
    }
    return compute_ser(pts);
}

std::vector<GridPoint> without(std::vector<GridPoint> pts, GridPoint a) {
    auto it = std::find(pts.begin(), pts.end(), a);
    if (it != pts.end()) pts.erase(it);
    return pts;
}

}  // namespace

GridPoint Frame::to_global(GridPoint f) const {
    GridPoint g = origin + x_dir.offset() * f.x;
    if (f.y != 0) {
        if (!y_dir) throw std::logic_error("frame has no agreed y axis");
        g = g + y_dir->offset() * f.y;
    }
    return g;
}

GridPoint Frame::to_frame(GridPoint p) const {
    const GridPoint d = p - origin;
    const int fx = dot(d, x_dir.offset());
    if (y_dir) return {fx, dot(d, y_dir->offset())};
    if (dot(d, perpendicular(x_dir).offset()) != 0) {
        throw std::logic_error("point off the x axis of a frame without y");
    }
    return {fx, 0};
}

Direction Frame::to_global(Direction d) const {
    if (d.is_horizontal()) return d.dx() > 0 ? x_dir : x_dir.reversed();
    if (!y_dir) throw std::logic_error("frame has no agreed y axis");
    return d.dy() > 0 ? *y_dir : y_dir->reversed();
}

Direction Frame::to_frame(Direction d) const {
    const GridPoint f = {dot(d.offset(), x_dir.offset()),
                         y_dir ? dot(d.offset(), y_dir->offset())
                               : dot(d.offset(), perpendicular(x_dir).offset())};
    return Direction::from_offset(f.x, f.y);
}

std::vector<Frame> Frame::completions() const {
    if (y_dir) return {*this};
    const Direction p = perpendicular(x_dir);
    return {Frame{origin, x_dir, p}, Frame{origin, x_dir, p.reversed()}};
}

bool all_still(std::span<const RobotView> robots) {
    return std::all_of(robots.begin(), robots.end(),
                       [](const RobotView& r) { return r.placement.is_at_node(); });
}

std::vector<GridPoint> node_positions(std::span<const RobotView> robots) {
    std::vector<GridPoint> out;
    out.reserve(robots.size());
    for (const auto& r : robots) {
        if (r.placement.is_at_node()) out.push_back(r.placement.node());
    }
    return out;
}

Election procedure_one(std::span<const RobotView> robots) {
    if (robots.empty()) throw ElectionFailure("no robots");
    if (!all_still(robots)) throw ElectionFailure("configuration is not still");
    const auto pts = node_positions(robots);
    const auto scan = leading_scan(pts);
    const auto* lead = std::get_if<LeadingScan>(&scan);
    if (!lead) throw ElectionFailure("configuration is symmetric");

    const auto nodes = scan_nodes(lead->rect, lead->order);
    const auto first = lead->bits.find('1');
    const auto last = lead->bits.rfind('1');
    Election e;
    e.frame = Frame{lead->order.start, lead->order.primary, lead->order.secondary};
    e.roles.head = *robot_at(robots, nodes[first]);
    e.roles.tail = *robot_at(robots, nodes[last]);
    e.bits = lead->bits;
    return e;
}

Election procedure_one(std::span<const GridPoint> points) {
    std::vector<RobotView> views;
    for (const GridPoint p : points) views.push_back({Placement::at(p), LightColor::Off});
    return procedure_one(views);
}

std::optional<Roles> lit_roles(std::span<const RobotView> robots) {
    if (robots.empty()) return std::nullopt;
    const BoundingRect rect = occupied_rect(robots);
    std::optional<std::size_t> head;
    std::optional<std::size_t> tail;
    for (std::size_t i = 0; i < robots.size(); ++i) {
        const auto& r = robots[i];
        if (!head && r.color == LightColor::Head && r.placement.is_at_node() &&
            rect.is_corner(r.placement.node())) {
            head = i;
        }
        if (!tail && r.color == LightColor::Tail) tail = i;
    }
    if (!head || !tail) return std::nullopt;
    return Roles{*head, *tail};
}

FrameCandidates procedure_two(std::span<const RobotView> robots) {
    if (!all_still(robots)) throw std::invalid_argument("configuration is not still");
    const auto roles = lit_roles(robots);
    if (!roles) throw std::invalid_argument("no head at an SER corner with a tail present");
    const auto pts = node_positions(robots);
    const BoundingRect rect = compute_ser(pts);
    const GridPoint a = robots[roles->head].placement.node();
    const GridPoint t = robots[roles->tail].placement.node();
    const GridPoint c = rect.opposite(a);
    const int w = rect.width();
    const int h = rect.height();

    if (w == 1 && h == 1) throw std::invalid_argument("single node has no axes");
    if (w == 1 || h == 1) {
        return {Frame{a, toward(a.x + a.y, c.x + c.y, h == 1), std::nullopt}};
    }
    const Direction u = toward(a.x, c.x, true);
    const Direction v = toward(a.y, c.y, false);
    if (w > h) return {Frame{a, u, v}};
    if (h > w) return {Frame{a, v, u}};
    if (t == c) return {Frame{a, u, v}, Frame{a, v, u}};
    if (t.y == c.y) return {Frame{a, u, v}};
    if (t.x == c.x) return {Frame{a, v, u}};
    // The tail is off both far edges; no case applies, keep both readings.
    return {Frame{a, u, v}, Frame{a, v, u}};
}

TargetShape TargetShape::from_pattern(std::span<const GridPoint> pattern) {
    if (pattern.empty()) throw InvalidInstance("empty pattern");
    const LeadingScan lead = first_leading_scan(pattern);
    const Frame f{lead.order.start, lead.order.primary, lead.order.secondary};

    TargetShape s;
    s.long_side = lead.order.primary.is_horizontal() ? lead.rect.width() : lead.rect.height();
    s.short_side = static_cast<int>(lead.bits.size()) / s.long_side;
    for (const GridPoint p : pattern) s.points.push_back(f.to_frame(p));
    std::sort(s.points.begin(), s.points.end());

    const auto first = static_cast<int>(lead.bits.find('1'));
    const auto last = static_cast<int>(lead.bits.rfind('1'));
    s.head_target = {first % s.long_side, first / s.long_side};
    s.tail_target = {last % s.long_side, last / s.long_side};
    return s;
}

std::vector<GridPoint> TargetShape::without_head() const { return without(points, head_target); }

std::vector<GridPoint> TargetShape::inner() const {
    return without(without(points, head_target), tail_target);
}

Embedding embed_target(const Frame& frame, const TargetShape& shape) {
    if (!frame.y_dir && !shape.collinear()) {
        throw std::invalid_argument("pattern needs a y axis the frame does not fix");
    }
    Embedding e;
    for (const GridPoint p : shape.points) e.targets.push_back(frame.to_global(p));
    e.h_target = frame.to_global(shape.head_target);
    e.t_target = frame.to_global(shape.tail_target);
    return e;
}

std::string colored_scan(std::span<const RobotView> robots, const Frame& frame) {
    std::vector<std::pair<GridPoint, LightColor>> local;
    for (const auto& r : robots) {
        if (r.placement.is_at_node()) local.push_back({frame.to_frame(r.placement.node()), r.color});
    }
    if (local.empty()) return {};
    GridPoint lo = local.front().first;
    GridPoint hi = lo;
    for (const auto& [p, c] : local) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    const int w = hi.x - lo.x + 1;
    std::string key(static_cast<std::size_t>(w * (hi.y - lo.y + 1)), '0');
    for (const auto& [p, c] : local) {
        const char ch = c == LightColor::Off ? '1' : c == LightColor::Head ? '2' : '3';
        key[static_cast<std::size_t>((p.y - lo.y) * w + (p.x - lo.x))] = ch;
    }
    return key;
}

ConditionSet frame_free_conditions(std::span<const RobotView> robots,
                                   std::span<const GridPoint> pattern) {
    ConditionSet s;
    const bool still = all_still(robots);
    const auto pts = node_positions(robots);
    s.c_asym = still && !pts.empty() && is_asymmetric(pts);
    s.c_final = still && patterns_equivalent(pts, pattern);
    s.c_lumi = lit_roles(robots).has_value();
    return s;
}

Evaluation evaluate_conditions(std::span<const RobotView> robots,
                               const FrameCandidates& candidates, const Roles& roles,
                               const TargetShape& target) {
    Evaluation ev;
    ev.set = frame_free_conditions(robots, target.points);
    if (!all_still(robots) || robots.empty()) return ev;

    std::vector<std::pair<std::string, Frame>> keyed;
    for (const Frame& f : candidates) {
        for (const Frame& c : f.completions()) keyed.push_back({colored_scan(robots, c), c});
    }
    std::stable_sort(keyed.begin(), keyed.end(),
                     [](const auto& l, const auto& r) { return l.first > r.first; });

    const auto pts = node_positions(robots);
    const BoundingRect rect = compute_ser(pts);
    const GridPoint head_node = robots[roles.head].placement.node();
    const GridPoint tail_node = robots[roles.tail].placement.node();
    const auto target_c1 = target.without_head();
    const auto target_c2 = target.inner();

    for (const auto& [key, f] : keyed) {
        FrameConditions fc;
        fc.frame = f;
        std::vector<GridPoint> c1;
        std::vector<GridPoint> c2;
        GridPoint lo{0, 0};
        GridPoint hi{0, 0};
        bool first = true;
        for (std::size_t i = 0; i < robots.size(); ++i) {
            const GridPoint p = f.to_frame(robots[i].placement.node());
            if (first) {
                lo = hi = p;
                first = false;
            }
            lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
            hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
            if (i != roles.head) {
                c1.push_back(p);
                if (i != roles.tail) c2.push_back(p);
            }
        }
        std::sort(c1.begin(), c1.end());
        std::sort(c2.begin(), c2.end());
        fc.width = hi.x - lo.x + 1;
        fc.height = hi.y - lo.y + 1;
        fc.c_hbar = c1 == target_c1;
        fc.c_inner = c2 == target_c2;
        fc.c_corner = rect.is_corner(head_node) && tail_node == rect.opposite(head_node);
        fc.c_enough = fc.width >= target.long_side && fc.height >= target.short_side;
        fc.c_rect = fc.width != fc.height;
        ev.frames.push_back(fc);
    }

    auto pick = [&](auto pred) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < ev.frames.size(); ++i) {
            if (pred(ev.frames[i])) return i;
        }
        return std::nullopt;
    };
    if (auto i = pick([](const FrameConditions& fc) { return fc.c_inner; })) {
        ev.selected = *i;
    } else if (auto j = pick([](const FrameConditions& fc) { return fc.c_hbar; })) {
        ev.selected = *j;
    }
    ev.set.c_hbar = pick([](const FrameConditions& fc) { return fc.c_hbar; }).has_value();
    ev.set.c_inner = pick([](const FrameConditions& fc) { return fc.c_inner; }).has_value();
    const auto& chosen = ev.chosen();
    ev.set.c_corner = chosen.c_corner;
    ev.set.c_enough = chosen.c_enough;
    ev.set.c_rect = chosen.c_rect;
    return ev;
}

}  // namespace apfgrid
