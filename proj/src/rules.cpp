#include "apfgrid/rules.hpp"

#include <algorithm>
#include <cstdlib>

#include "apfgrid/symmetry.hpp"
#include "apfgrid/verify.hpp"

namespace apfgrid {

namespace {

Action keep(const Snapshot& s) { return {s.robots.at(s.observer).color, std::nullopt}; }

Action step(LightColor c, const Frame& f, Direction local) { return {c, f.to_global(local)}; }

std::optional<std::size_t> first_where(const std::vector<FrameConditions>& frames,
                                       bool FrameConditions::*flag) {
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (frames[i].*flag) return i;
    }
    return std::nullopt;
}

/// Inner robots on line y, as robot indices sorted by x.
std::vector<std::size_t> inner_on_line(const RearrangeView& v, int y) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < v.robots.size(); ++i) {
        if (i != v.head && i != v.tail && v.robots[i].y == y) out.push_back(i);
    }
    std::sort(out.begin(), out.end(),
              [&](std::size_t l, std::size_t r) { return v.robots[l].x < v.robots[r].x; });
    return out;
}

bool leader_at(const RearrangeView& v, GridPoint p) {
    return v.robots[v.head] == p || v.robots[v.tail] == p;
}

Direction horizontal_toward(int from, int to) {
    return to < from ? Direction::neg_x() : Direction::pos_x();
}

/// Nearest robot to column c among `line`; ties go left when prefer_left.
std::size_t nearest(const RearrangeView& v, const std::vector<std::size_t>& line, int c,
                    bool prefer_left) {
    std::size_t best = line.front();
    int best_d = std::abs(v.robots[best].x - c);
    for (std::size_t idx : line) {
        const int d = std::abs(v.robots[idx].x - c);
        const bool better = d < best_d || (d == best_d && (prefer_left
                                                               ? v.robots[idx].x < v.robots[best].x
                                                               : v.robots[idx].x > v.robots[best].x));
        if (better) {
            best = idx;
            best_d = d;
        }
    }
    return best;
}

/// Cases I and II share their shape; `dir` is +1 for upward, -1 for downward.
std::optional<Designation> vertical_case(const RearrangeView& v, const LineLedger& next_line,
                                         int i, int dir) {
    const bool up = dir > 0;
    auto line = inner_on_line(v, i);
    if (line.empty()) return std::nullopt;
    if (!up) std::reverse(line.begin(), line.end());
    const Direction vstep = up ? Direction::pos_y() : Direction::neg_y();
    const int j = i + dir;

    if (next_line.empty) {
        return Designation{line.front(), vstep, i,
                           up ? RearrangeRule::UpEmptyLine : RearrangeRule::DownEmptyLine};
    }
    for (std::size_t idx : line) {
        if (!v.occupied(v.robots[idx] + vstep.offset())) {
            return Designation{idx, vstep, i,
                               up ? RearrangeRule::UpFreeNode : RearrangeRule::DownFreeNode};
        }
    }

    // Free nodes on the destination line, scanned from the preferred end.
    std::vector<int> free_cols;
    std::vector<int> blocked_cols;
    for (int c = 0; c < v.width; ++c) {
        const int col = up ? c : v.width - 1 - c;
        if (v.occupied({col, j})) continue;
        if (leader_at(v, {col, i})) {
            blocked_cols.push_back(col);
        } else {
            free_cols.push_back(col);
        }
    }
    if (!free_cols.empty()) {
        const int col = free_cols.front();
        const std::size_t idx = nearest(v, line, col, up);
        return Designation{idx, horizontal_toward(v.robots[idx].x, col), i,
                           up ? RearrangeRule::UpSlide : RearrangeRule::DownSlide};
    }
    if (!blocked_cols.empty()) {
        const int col = blocked_cols.front();
        const auto dest_line = inner_on_line(v, j);
        if (dest_line.empty()) return std::nullopt;
        const std::size_t idx = nearest(v, dest_line, col, up);
        return Designation{idx, horizontal_toward(v.robots[idx].x, col), i,
                           RearrangeRule::HoleShift};
    }
    return std::nullopt;
}

std::optional<Designation> saturated_case(const RearrangeView& v, int i) {
    const auto line = inner_on_line(v, i);
    std::vector<int> cols;
    for (const GridPoint t : v.inner_targets) {
        if (t.y == i) cols.push_back(t.x);
    }
    std::sort(cols.begin(), cols.end());
    if (cols.size() != line.size()) return std::nullopt;
    for (std::size_t j = 0; j < line.size(); ++j) {
        const GridPoint r = v.robots[line[j]];
        if (cols[j] == r.x) continue;
        const Direction d = horizontal_toward(r.x, cols[j]);
        if (!v.occupied(r + d.offset())) return Designation{line[j], d, i, RearrangeRule::Saturated};
    }
    return std::nullopt;
}

}  // namespace

bool RearrangeView::occupied(GridPoint p) const {
    return std::find(robots.begin(), robots.end(), p) != robots.end();
}

std::vector<LineLedger> compute_ledgers(const RearrangeView& view) {
    std::vector<LineLedger> out(static_cast<std::size_t>(std::max(view.height, 0)));
    for (int i = 0; i < view.height; ++i) {
        LineLedger& l = out[static_cast<std::size_t>(i)];
        l.i = i;
        for (std::size_t r = 0; r < view.robots.size(); ++r) {
            const int y = view.robots[r].y;
            if (y == i) l.empty = false;
            if (r == view.head || r == view.tail) continue;
            if (y > i) ++l.a;
            if (y < i) ++l.b;
            if (y == i) ++l.robots_on;
        }
        for (const GridPoint t : view.inner_targets) {
            if (t.y > i) ++l.a_target;
            if (t.y < i) ++l.b_target;
            if (t.y == i) ++l.targets_on;
        }
    }
    return out;
}

LineClass classify_line(const LineLedger* below, const LineLedger& line, const LineLedger* above) {
    LineClass c;
    const bool u1 = line.a_target > line.a;
    const bool u2 = above && ((above->a_target > above->a && above->empty) ||
                              above->a_target == above->a);
    const bool d1 = line.b_target > line.b;
    const bool d2 = below && (below->empty || below->b_target <= below->b);
    c.upward = u1 && u2;
    c.downward = d1 && d2;
    c.saturated = line.a == line.a_target && line.b == line.b_target;
    return c;
}

std::vector<std::optional<Designation>> line_designations(const RearrangeView& view) {
    const auto ledgers = compute_ledgers(view);
    std::vector<std::optional<Designation>> out(ledgers.size());
    for (std::size_t i = 0; i < ledgers.size(); ++i) {
        const LineLedger* below = i > 0 ? &ledgers[i - 1] : nullptr;
        const LineLedger* above = i + 1 < ledgers.size() ? &ledgers[i + 1] : nullptr;
        const LineClass c = classify_line(below, ledgers[i], above);
        const int y = static_cast<int>(i);
        if (c.downward) {
            out[i] = vertical_case(view, *below, y, -1);
        } else if (c.upward) {
            out[i] = vertical_case(view, *above, y, +1);
        } else if (c.saturated) {
            out[i] = saturated_case(view, y);
        }
    }
    return out;
}

std::optional<Designation> rearrange_designation(const RearrangeView& view) {
    for (const auto& d : line_designations(view)) {
        if (d) return d;
    }
    return std::nullopt;
}

Action rearrange_action(const RearrangeView& view, std::size_t observer, const Frame& frame,
                        LightColor observer_color) {
    const auto d = rearrange_designation(view);
    if (!d || d->robot != observer) return {observer_color, std::nullopt};
    return step(observer_color, frame, d->step);
}

Action phase_non_lumi(const Snapshot& snap, const TargetShape& target) {
    const Election el = procedure_one(snap.robots);
    const Evaluation ev = evaluate_conditions(snap.robots, {el.frame}, el.roles, target);
    const auto& self = snap.robots[snap.observer];
    const bool is_head = snap.observer == el.roles.head;

    if (auto i = first_where(ev.frames, &FrameConditions::c_hbar)) {
        if (!is_head) return keep(snap);
        const Frame& f = ev.frames[*i].frame;
        const GridPoint h = f.to_frame(self.placement.node());
        if (target.head_target.x == h.x) return keep(snap);
        return step(self.color, f,
                    target.head_target.x < h.x ? Direction::neg_x() : Direction::pos_x());
    }

    const bool tail_lit = std::any_of(snap.robots.begin(), snap.robots.end(),
                                      [](const RobotView& r) { return r.color == LightColor::Tail; });
    if (!tail_lit) {
        if (snap.observer == el.roles.tail) return {LightColor::Tail, std::nullopt};
        return keep(snap);
    }
    if (!is_head) return keep(snap);
    const Frame& f = ev.frames.front().frame;
    const GridPoint h = f.to_frame(self.placement.node());
    if (h == GridPoint{0, 0}) {
        if (self.color == LightColor::Off) return {LightColor::Head, std::nullopt};
        return keep(snap);
    }
    if (std::abs(h.x) + std::abs(h.y) == 1) return step(LightColor::Head, f, Direction::neg_x());
    return step(self.color, f, Direction::neg_x());
}

Action phase_lumi(const Snapshot& snap, const TargetShape& target, const Roles& roles) {
    const Evaluation ev = evaluate_conditions(snap.robots, procedure_two(snap.robots), roles, target);
    const FrameConditions& fc = ev.chosen();
    const Frame& f = fc.frame;
    const auto& self = snap.robots[snap.observer];
    const bool is_head = snap.observer == roles.head;
    const bool is_tail = snap.observer == roles.tail;

    const GridPoint t = f.to_frame(snap.robots[roles.tail].placement.node());
    const GridPoint goal = target.tail_target;
    // With the inner robots placed, rows above the tail target hold only the
    // tail and the target row is free to the right of it. A tail elsewhere
    // takes the corner and expansion route first.
    const bool tail_route = t.y > goal.y || (t.y == goal.y && t.x >= goal.x);
    if (fc.c_inner && (fc.c_hbar || tail_route)) {
        if (fc.c_hbar) {
            if (!is_head) return keep(snap);
            return step(LightColor::Off, f, Direction::pos_x());
        }
        if (!is_tail) return keep(snap);
        if (t.y > goal.y) return step(self.color, f, t.x < goal.x ? Direction::pos_x() : Direction::neg_y());
        return step(self.color, f, Direction::neg_x());
    }

    if (!fc.c_corner || !fc.c_enough || !fc.c_rect) {
        if (!is_tail) return keep(snap);
        if (fc.c_corner && !fc.c_enough && fc.width >= target.long_side) {
            return step(self.color, f, Direction::pos_y());
        }
        return step(self.color, f, Direction::pos_x());
    }

    RearrangeView view;
    view.width = fc.width;
    view.height = fc.height;
    view.head = roles.head;
    view.tail = roles.tail;
    view.inner_targets = target.inner();
    for (const auto& r : snap.robots) view.robots.push_back(f.to_frame(r.placement.node()));
    return rearrange_action(view, snap.observer, f, self.color);
}

Action compute_action(const Snapshot& snap, const TargetShape& target) {
    const Action stay = keep(snap);
    if (!all_still(snap.robots)) return stay;
    const auto pts = node_positions(snap.robots);
    if (patterns_equivalent(pts, target.points)) return {LightColor::Off, std::nullopt};

    Action a = stay;
    if (const auto roles = lit_roles(snap.robots)) {
        a = phase_lumi(snap, target, *roles);
    } else if (is_asymmetric(pts)) {
        a = phase_non_lumi(snap, target);
    }
    if (a.step) {
        const GridPoint dest = snap.robots[snap.observer].placement.node() + a.step->offset();
        if (std::find(pts.begin(), pts.end(), dest) != pts.end()) return stay;
    }
    return a;
}

}  // namespace apfgrid
