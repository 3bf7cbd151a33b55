#include "apfgrid/symmetry.hpp"

#include <algorithm>
#include <set>

namespace apfgrid {

namespace {

Direction toward(int from, int to, bool horizontal) {
    const int s = to >= from ? 1 : -1;
    return horizontal ? Direction::from_offset(s, 0) : Direction::from_offset(0, s);
}

}  // namespace

std::string describe(const ScanOrder& order) {
    std::string s = to_string(order.start) + " " + to_string(order.primary);
    if (order.secondary) s += " " + to_string(*order.secondary);
    return s;
}

std::vector<ScanOrder> candidate_orders(const BoundingRect& rect) {
    const int w = rect.width();
    const int h = rect.height();
    const GridPoint lo = rect.min_corner;
    const GridPoint hi = rect.max_corner;
    const std::array<GridPoint, 4> corners = {
        GridPoint{lo.x, lo.y}, GridPoint{hi.x, lo.y}, GridPoint{lo.x, hi.y},
        GridPoint{hi.x, hi.y}};

    std::vector<ScanOrder> out;
    if (w == 1 && h == 1) {
        out.push_back({lo, Direction::pos_x(), std::nullopt});
        return out;
    }
    if (h == 1 || w == 1) {
        const bool horizontal = h == 1;
        out.push_back({lo, horizontal ? Direction::pos_x() : Direction::pos_y(), std::nullopt});
        out.push_back({hi, horizontal ? Direction::neg_x() : Direction::neg_y(), std::nullopt});
        return out;
    }
    for (const GridPoint c : corners) {
        const GridPoint far = rect.opposite(c);
        const Direction dx = toward(c.x, far.x, true);
        const Direction dy = toward(c.y, far.y, false);
        if (w >= h) out.push_back({c, dx, dy});
        if (h >= w) out.push_back({c, dy, dx});
    }
    return out;
}

std::vector<GridPoint> scan_nodes(const BoundingRect& rect, const ScanOrder& order) {
    const int along = order.primary.is_horizontal() ? rect.width() : rect.height();
    const int lines = order.secondary
                          ? (order.secondary->is_horizontal() ? rect.width() : rect.height())
                          : 1;
    std::vector<GridPoint> out;
    out.reserve(static_cast<std::size_t>(along * lines));
    const GridPoint step2 = order.secondary ? order.secondary->offset() : GridPoint{};
    for (int j = 0; j < lines; ++j) {
        for (int i = 0; i < along; ++i) {
            out.push_back(order.start + order.primary.offset() * i + step2 * j);
        }
    }
    return out;
}

BitString scan_string(std::span<const GridPoint> occupied, const BoundingRect& rect,
                      const ScanOrder& order) {
    const std::set<GridPoint> occ(occupied.begin(), occupied.end());
    BitString bits;
    for (const GridPoint p : scan_nodes(rect, order)) bits.push_back(occ.count(p) ? '1' : '0');
    return bits;
}

BitString scan_string(const Configuration& config, const ScanOrder& order) {
    if (!config.is_still()) throw std::invalid_argument("scan of a configuration in motion");
    const auto pts = config.node_positions();
    return scan_string(pts, compute_ser(pts), order);
}

std::variant<LeadingScan, TieReport> leading_scan(std::span<const GridPoint> points) {
    const BoundingRect rect = compute_ser(points);
    BitString best;
    std::vector<ScanOrder> tied;
    for (const ScanOrder& o : candidate_orders(rect)) {
        BitString s = scan_string(points, rect, o);
        if (tied.empty() || s > best) {
            best = std::move(s);
            tied.assign(1, o);
        } else if (s == best) {
            tied.push_back(o);
        }
    }
    if (tied.size() == 1) return LeadingScan{rect, tied.front(), best};
    return TieReport{rect, std::move(tied), best};
}

std::variant<LeadingScan, TieReport> leading_scan(const Configuration& config) {
    if (!config.is_still()) throw std::invalid_argument("scan of a configuration in motion");
    const auto pts = config.node_positions();
    return leading_scan(pts);
}

LeadingScan first_leading_scan(std::span<const GridPoint> points) {
    auto r = leading_scan(points);
    if (auto* lead = std::get_if<LeadingScan>(&r)) return *lead;
    const auto& tie = std::get<TieReport>(r);
    return {tie.rect, tie.orders.front(), tie.bits};
}

bool is_asymmetric(std::span<const GridPoint> points) {
    return std::holds_alternative<LeadingScan>(leading_scan(points));
}

bool is_asymmetric(const Configuration& config) {
    return std::holds_alternative<LeadingScan>(leading_scan(config));
}

std::vector<Isometry> automorphism_oracle(std::span<const GridPoint> points) {
    std::vector<Isometry> out;
    if (points.empty()) return out;
    const BoundingRect rect = compute_ser(points);
    const auto occ = sorted_set(points);
    const std::array<GridPoint, 2> box = {rect.min_corner, rect.max_corner};

    for (int i = 0; i < Isometry::kPointGroupSize; ++i) {
        const Isometry lin = Isometry::point_group(i);
        const auto img = compute_ser(apply_isometry(box, lin));
        if (img.width() != rect.width() || img.height() != rect.height()) continue;
        const Isometry g = lin.then(Isometry::translation(rect.min_corner - img.min_corner));

        bool moves_some_node = false;
        for (int y = rect.min_corner.y; y <= rect.max_corner.y && !moves_some_node; ++y) {
            for (int x = rect.min_corner.x; x <= rect.max_corner.x; ++x) {
                if (g.apply(GridPoint{x, y}) != GridPoint{x, y}) {
                    moves_some_node = true;
                    break;
                }
            }
        }
        if (!moves_some_node) continue;
        if (sorted_set(apply_isometry(occ, g)) == occ) out.push_back(g);
    }
    return out;
}

}  // namespace apfgrid
