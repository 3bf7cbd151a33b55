#pragma once

// Brute-force reference implementations used to check the library. They share
// no code with it beyond the GridPoint type.

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "apfgrid/grid.hpp"

namespace oracle {

using apfgrid::GridPoint;

struct Mat {
    int a, b, c, d;  // (x, y) -> (a x + b y, c x + d y)
    GridPoint operator()(GridPoint p) const { return {a * p.x + b * p.y, c * p.x + d * p.y}; }
};

inline const std::array<Mat, 8>& all_maps() {
    static const std::array<Mat, 8> maps = {{
        {1, 0, 0, 1}, {0, -1, 1, 0}, {-1, 0, 0, -1}, {0, 1, -1, 0},
        {-1, 0, 0, 1}, {1, 0, 0, -1}, {0, 1, 1, 0}, {0, -1, -1, 0},
    }};
    return maps;
}

inline std::vector<GridPoint> normalized(std::vector<GridPoint> pts) {
    if (pts.empty()) return pts;
    int mx = pts[0].x, my = pts[0].y;
    for (auto p : pts) {
        mx = std::min(mx, p.x);
        my = std::min(my, p.y);
    }
    for (auto& p : pts) p = {p.x - mx, p.y - my};
    std::sort(pts.begin(), pts.end());
    return pts;
}

inline std::vector<GridPoint> mapped(const std::vector<GridPoint>& pts, const Mat& m) {
    std::vector<GridPoint> out;
    for (auto p : pts) out.push_back(m(p));
    return out;
}

/// Number of maps (point group element plus re-centring translation) that
/// carry the set onto itself and move at least one corner of its bounding box.
inline int nontrivial_automorphisms(const std::vector<GridPoint>& pts) {
    if (pts.empty()) return 0;
    const auto base = normalized(pts);
    int w = 0, h = 0;
    for (auto p : base) {
        w = std::max(w, p.x);
        h = std::max(h, p.y);
    }
    const std::array<GridPoint, 4> corners = {{{0, 0}, {w, 0}, {0, h}, {w, h}}};
    int count = 0;
    for (const Mat& m : all_maps()) {
        auto img = mapped(base, m);
        int mx = img[0].x, my = img[0].y;
        for (auto p : img) {
            mx = std::min(mx, p.x);
            my = std::min(my, p.y);
        }
        auto g = [&](GridPoint p) { return GridPoint{m(p).x - mx, m(p).y - my}; };
        bool trivial = true;
        for (auto c : corners) trivial = trivial && g(c) == c;
        if (trivial) continue;
        std::vector<GridPoint> moved;
        for (auto p : base) moved.push_back(g(p));
        std::sort(moved.begin(), moved.end());
        if (moved == base) ++count;
    }
    return count;
}

inline bool symmetric(const std::vector<GridPoint>& pts) { return nontrivial_automorphisms(pts) > 0; }

inline bool equivalent(const std::vector<GridPoint>& a, const std::vector<GridPoint>& b) {
    if (a.size() != b.size()) return false;
    const auto nb = normalized(b);
    for (const Mat& m : all_maps()) {
        if (normalized(mapped(a, m)) == nb) return true;
    }
    return false;
}

/// Largest row-major reading of the set over all orientations whose rows run
/// along a longest side.
inline std::string max_reading(const std::vector<GridPoint>& pts) {
    std::string best;
    for (const Mat& m : all_maps()) {
        const auto img = normalized(mapped(pts, m));
        int w = 0, h = 0;
        for (auto p : img) {
            w = std::max(w, p.x + 1);
            h = std::max(h, p.y + 1);
        }
        if (w < h) continue;
        std::string s(static_cast<std::size_t>(w * h), '0');
        for (auto p : img) s[static_cast<std::size_t>(p.y * w + p.x)] = '1';
        best = std::max(best, s);
    }
    return best;
}

/// Indices of the robots read first and last in the maximal reading.
inline std::pair<std::size_t, std::size_t> reading_ends(const std::vector<GridPoint>& pts) {
    const std::string best = max_reading(pts);
    for (const Mat& m : all_maps()) {
        const auto img = mapped(pts, m);
        const auto norm = normalized(img);
        int w = 0, h = 0;
        for (auto p : norm) {
            w = std::max(w, p.x + 1);
            h = std::max(h, p.y + 1);
        }
        if (w < h) continue;
        std::string s(static_cast<std::size_t>(w * h), '0');
        for (auto p : norm) s[static_cast<std::size_t>(p.y * w + p.x)] = '1';
        if (s != best) continue;
        int mx = img[0].x, my = img[0].y;
        for (auto p : img) {
            mx = std::min(mx, p.x);
            my = std::min(my, p.y);
        }
        std::size_t first = 0, last = 0;
        int lo = w * h, hi = -1;
        for (std::size_t i = 0; i < img.size(); ++i) {
            const int idx = (img[i].y - my) * w + (img[i].x - mx);
            if (idx < lo) lo = idx, first = i;
            if (idx > hi) hi = idx, last = i;
        }
        return {first, last};
    }
    return {0, 0};
}

/// Every subset of size `k` of the w x h box, in lexicographic index order.
inline std::vector<std::vector<GridPoint>> subsets(int w, int h, int k) {
    std::vector<std::vector<GridPoint>> out;
    const int n = w * h;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    if (k > n) return out;
    while (true) {
        std::vector<GridPoint> s;
        for (int i : idx) s.push_back({i % w, i / w});
        out.push_back(s);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

}  // namespace oracle
