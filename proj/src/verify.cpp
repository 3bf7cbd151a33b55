#include "apfgrid/verify.hpp"

#include <algorithm>

#include "apfgrid/symmetry.hpp"

namespace apfgrid {

namespace {

bool fits(const BoundingRect& r, const Dimensions& d) {
    const int lo = std::min(r.width(), r.height());
    const int hi = std::max(r.width(), r.height());
    const int allowed_long = d.M == d.N ? d.M + 1 : d.M;
    return hi <= allowed_long && lo <= d.N;
}

}  // namespace

bool patterns_equivalent(std::span<const GridPoint> points, std::span<const GridPoint> pattern) {
    const auto target = sorted_set(pattern);
    const auto src = sorted_set(points);
    if (src.size() != target.size() || src.size() != points.size()) return false;
    if (src.empty()) return true;
    const GridPoint anchor = compute_ser(target).min_corner;
    for (int i = 0; i < Isometry::kPointGroupSize; ++i) {
        auto img = apply_isometry(src, Isometry::point_group(i));
        const GridPoint shift = anchor - compute_ser(img).min_corner;
        for (auto& p : img) p = p + shift;
        std::sort(img.begin(), img.end());
        if (img == target) return true;
    }
    return false;
}

Dimensions derive_dimensions(std::span<const GridPoint> robots, std::span<const GridPoint> targets) {
    const BoundingRect r = compute_ser(robots);
    const BoundingRect t = compute_ser(targets);
    Dimensions d;
    d.m = std::max(r.width(), r.height());
    d.n = std::min(r.width(), r.height());
    d.mp = std::max(t.width(), t.height());
    d.np = std::min(t.width(), t.height());
    d.M = std::max(d.m, d.mp);
    d.N = std::max(d.n, d.np);
    d.D = std::max(d.M, d.N);
    d.k = static_cast<int>(robots.size());
    return d;
}

BoundsReport check_run_bounds(const Metrics& metrics, const Dimensions& dims) {
    BoundsReport rep;
    const int D = dims.D;
    auto fail = [&](bool& flag, std::string msg) {
        flag = false;
        rep.failures.push_back(std::move(msg));
    };
    if (metrics.visited && !fits(*metrics.visited, dims)) {
        fail(rep.space_ok, "visited " + std::to_string(metrics.visited->width()) + "x" +
                               std::to_string(metrics.visited->height()) + " exceeds " +
                               std::to_string(dims.M) + "x" + std::to_string(dims.N));
    }
    if (metrics.head_moves > 2 * D) {
        fail(rep.head_ok, "head moves " + std::to_string(metrics.head_moves) + " > 2D");
    }
    if (metrics.max_inner_moves > 3 * D) {
        fail(rep.inner_ok, "inner moves " + std::to_string(metrics.max_inner_moves) + " > 3D");
    }
    if (metrics.tail_moves > 5 * D + 1) {
        fail(rep.tail_ok, "tail moves " + std::to_string(metrics.tail_moves) + " > 5D+1");
    }
    if (metrics.total_moves > 3 * D * dims.k + 6 * D) {
        fail(rep.total_ok, "total moves " + std::to_string(metrics.total_moves) + " > 3Dk+6D");
    }
    rep.tail_within_2d = metrics.tail_moves <= 2 * D;
    return rep;
}

std::string_view to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::NodeCollision: return "NodeCollision";
        case ViolationKind::EdgeConflict: return "EdgeConflict";
        case ViolationKind::SpaceExceeded: return "SpaceExceeded";
        case ViolationKind::MoveBudgetExceeded: return "MoveBudgetExceeded";
        case ViolationKind::AsymmetryLost: return "AsymmetryLost";
        case ViolationKind::NonMonotoneVertical: return "NonMonotoneVertical";
        case ViolationKind::Stall: return "Stall";
        case ViolationKind::Malformed: return "Malformed";
    }
    return "Malformed";
}

std::string_view to_string(EventKind kind) {
    switch (kind) {
        case EventKind::Activate: return "Activate";
        case EventKind::Look: return "Look";
        case EventKind::ComputeEnd: return "ComputeEnd";
        case EventKind::MoveStart: return "MoveStart";
        case EventKind::MoveEnd: return "MoveEnd";
    }
    return "Activate";
}

std::optional<EventKind> parse_event_kind(std::string_view text) {
    for (auto k : {EventKind::Activate, EventKind::Look, EventKind::ComputeEnd,
                   EventKind::MoveStart, EventKind::MoveEnd}) {
        if (to_string(k) == text) return k;
    }
    return std::nullopt;
}

Monitor::Monitor(std::vector<GridPoint> robots, std::vector<GridPoint> targets,
                 MonitorOptions options)
    : targets_(std::move(targets)), options_(options) {
    dims_ = derive_dimensions(robots, targets_);
    for (std::size_t i = 0; i < robots.size(); ++i) {
        world_.add(Robot{static_cast<int>(i), Placement::at(robots[i]), LightColor::Off});
        moves_[static_cast<int>(i)] = 0;
        visit(robots[i]);
    }
    shape_ = TargetShape::from_pattern(targets_);
    if (options_.fairness_window <= 0) options_.fairness_window = 64 * std::max(dims_.k, 1);
    if (is_asymmetric(robots)) initial_roles_ = procedure_one(robots).roles;
}

void Monitor::flag(ViolationKind kind, std::int64_t tick, std::string details) {
    violations_.push_back({kind, tick, std::move(details)});
}

void Monitor::visit(GridPoint p) {
    visited_ = visited_ ? visited_->including(p) : BoundingRect{p, p};
    if (options_.check_space_online && !fits(*visited_, dims_)) {
        const bool already = std::any_of(violations_.begin(), violations_.end(), [](const Violation& v) {
            return v.kind == ViolationKind::SpaceExceeded;
        });
        if (!already) flag(ViolationKind::SpaceExceeded, current_tick_, "visited box at " + to_string(p));
    }
}

void Monitor::observe(const SimEvent& e) {
    current_tick_ = e.tick;
    Robot* r = nullptr;
    try {
        r = &world_.by_id(e.robot);
    } catch (const std::out_of_range&) {
        flag(ViolationKind::Malformed, e.tick, "unknown robot " + std::to_string(e.robot));
        return;
    }

    switch (e.kind) {
        case EventKind::Activate:
            break;
        case EventKind::Look:
            if (e.pos && (!r->placement.is_at_node() || r->placement.node() != *e.pos)) {
                flag(ViolationKind::Malformed, e.tick, "look position disagrees with replay");
            }
            break;
        case EventKind::ComputeEnd: {
            if (e.color) {
                if (*e.color != r->color) last_progress_ = e.tick;
                r->color = *e.color;
                if (*e.color == LightColor::Head && !head_id_) head_id_ = r->id;
                if (*e.color == LightColor::Tail && !tail_id_) tail_id_ = r->id;
            }
            if (!e.step) cycled_.insert(r->id);
            changed_ = true;
            break;
        }
        case EventKind::MoveStart: {
            if (!e.from || !e.to || !r->placement.is_at_node() || r->placement.node() != *e.from) {
                flag(ViolationKind::Malformed, e.tick, "move start from a wrong node");
                return;
            }
            const GridPoint d = *e.to - *e.from;
            if (std::abs(d.x) + std::abs(d.y) != 1) {
                flag(ViolationKind::Malformed, e.tick, "move is not a unit step");
                return;
            }
            record_inner_vertical(*r, *e.from, *e.to, e.tick);
            if (tail_id_ && r->id == *tail_id_) check_tail_descent(*r, *e.from, *e.to, e.tick);
            const Placement edge = Placement::on_edge(*e.from, *e.to);
            for (const auto& o : world_.robots()) {
                if (o.id != r->id && o.placement == edge) {
                    flag(ViolationKind::EdgeConflict, e.tick,
                         "robots " + std::to_string(o.id) + " and " + std::to_string(r->id) +
                             " share an edge");
                }
            }
            r->placement = edge;
            visit(*e.from);
            visit(*e.to);
            last_progress_ = e.tick;
            changed_ = true;
            break;
        }
        case EventKind::MoveEnd: {
            if (!e.pos || !r->placement.is_on_edge()) {
                flag(ViolationKind::Malformed, e.tick, "move end without a move");
                return;
            }
            const auto [u, v] = r->placement.endpoints();
            if (*e.pos != u && *e.pos != v) {
                flag(ViolationKind::Malformed, e.tick, "move end off the edge");
                return;
            }
            for (const auto& o : world_.robots()) {
                if (o.id != r->id && o.placement.is_at_node() && o.placement.node() == *e.pos) {
                    flag(ViolationKind::NodeCollision, e.tick,
                         "robots " + std::to_string(o.id) + " and " + std::to_string(r->id) +
                             " at " + to_string(*e.pos));
                }
            }
            r->placement = Placement::at(*e.pos);
            ++moves_[r->id];
            cycled_.insert(r->id);
            visit(*e.pos);
            last_progress_ = e.tick;
            changed_ = true;
            break;
        }
    }
}

void Monitor::end_tick(std::int64_t tick) {
    current_tick_ = tick;
    if (!world_.robots().empty() && cycled_.size() == world_.size()) {
        ++epochs_;
        cycled_.clear();
    }
    if (changed_) {
        changed_ = false;
        if (world_.is_still()) {
            const auto pts = world_.node_positions();
            const bool all_off = std::all_of(world_.robots().begin(), world_.robots().end(),
                                             [](const Robot& r) { return r.color == LightColor::Off; });
            const bool final_positions = patterns_equivalent(pts, targets_);
            if (final_positions && all_off && !formed_) {
                formed_ = true;
                formed_tick_ = tick;
            }
            const auto views = world_.anonymous_view();
            if (!final_positions && world_.size() >= 2 && !lit_roles(views)) {
                if (all_off) ++asymmetry_checks_;
                if (!automorphism_oracle(pts).empty()) {
                    flag(ViolationKind::AsymmetryLost, tick, "symmetric still configuration");
                }
            }
        }
    }
    if (!formed_ && tick - last_progress_ > options_.fairness_window) {
        const bool already = std::any_of(violations_.begin(), violations_.end(), [](const Violation& v) {
            return v.kind == ViolationKind::Stall;
        });
        if (!already) flag(ViolationKind::Stall, tick, "no colour change or move in a fairness window");
    }
}

void Monitor::record_inner_vertical(const Robot& r, GridPoint from, GridPoint to, std::int64_t tick) {
    if (!head_id_ || !tail_id_ || r.id == *head_id_ || r.id == *tail_id_) return;
    const auto pts = world_.node_positions();
    if (pts.size() != world_.size()) return;
    const BoundingRect rect = compute_ser(pts);
    if (rect.width() == rect.height()) return;
    const bool vertical_is_y = rect.width() > rect.height();
    const int delta = vertical_is_y ? to.y - from.y : to.x - from.x;
    if (delta == 0) return;
    const GridPoint head = world_.by_id(*head_id_).placement.node();
    const bool head_low = vertical_is_y ? head.y == rect.min_corner.y : head.x == rect.min_corner.x;
    const int up = head_low ? delta : -delta;
    auto [it, inserted] = vertical_sign_.emplace(r.id, up);
    if (!inserted && it->second != up) {
        flag(ViolationKind::NonMonotoneVertical, tick,
             "robot " + std::to_string(r.id) + " moved both up and down");
    }
}

void Monitor::check_tail_descent(const Robot& tail, GridPoint from, GridPoint to, std::int64_t) {
    if (saturated_at_descent_ || !world_.is_still()) return;
    // On a line the vertical sense is not fixed, so a step off it is not a descent.
    const BoundingRect ser = compute_ser(world_.node_positions());
    if (ser.width() == 1 || ser.height() == 1) return;
    const auto views = world_.anonymous_view();
    const auto roles = lit_roles(views);
    if (!roles) return;
    const Evaluation ev = evaluate_conditions(views, procedure_two(views), *roles, shape_);
    if (ev.frames.empty()) return;
    const Frame& f = ev.chosen().frame;
    const GridPoint d = to - from;
    if (f.to_frame(Direction::from_offset(d.x, d.y)) != Direction::neg_y()) return;

    // Count inner robots and inner targets above and below every line.
    std::vector<GridPoint> inner;
    for (std::size_t i = 0; i < world_.size(); ++i) {
        if (i == roles->head || world_.robots()[i].id == tail.id) continue;
        inner.push_back(f.to_frame(world_.robots()[i].placement.node()));
    }
    const auto targets = shape_.inner();
    const int height = ev.chosen().height;
    bool ok = true;
    for (int y = 0; y < height && ok; ++y) {
        auto count = [y](const std::vector<GridPoint>& ps, bool above) {
            return std::count_if(ps.begin(), ps.end(),
                                 [&](GridPoint p) { return above ? p.y > y : p.y < y; });
        };
        ok = count(inner, true) == count(targets, true) && count(inner, false) == count(targets, false);
    }
    saturated_at_descent_ = ok;
}

Metrics Monitor::metrics() const {
    Metrics m;
    m.moves_by_robot = moves_;
    m.head_id = head_id_;
    m.tail_id = tail_id_;
    if (initial_roles_) {
        const int h0 = world_.robots()[initial_roles_->head].id;
        const int t0 = world_.robots()[initial_roles_->tail].id;
        if (!m.head_id && (!m.tail_id || *m.tail_id != h0)) m.head_id = h0;
        if (!m.tail_id && (!m.head_id || *m.head_id != t0)) m.tail_id = t0;
    }
    for (const auto& [id, n] : moves_) {
        m.total_moves += n;
        if (m.head_id && id == *m.head_id) {
            m.head_moves = n;
        } else if (m.tail_id && id == *m.tail_id) {
            m.tail_moves = n;
        } else {
            m.max_inner_moves = std::max(m.max_inner_moves, n);
        }
    }
    m.visited = visited_;
    m.epochs = epochs_;
    return m;
}

}  // namespace apfgrid
