#pragma once

// Scan strings over the smallest enclosing rectangle, leader scan selection,
// and symmetry detection.

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "apfgrid/grid.hpp"

namespace apfgrid {

/// How to walk an SER: start at a corner, run along `primary`, then advance
/// one line along `secondary`. Lines (and the 1x1 box) have no secondary.
struct ScanOrder {
    GridPoint start;
    Direction primary = Direction::pos_x();
    std::optional<Direction> secondary;

    friend bool operator==(const ScanOrder&, const ScanOrder&) = default;
};

std::string describe(const ScanOrder& order);

/// '0'/'1' characters, one per SER node in scan order.
using BitString = std::string;

/// Candidate orders for a rectangle: 4 for non-square boxes (primary along
/// the longer side), 8 for squares, 2 for lines, 1 for a single node.
/// Corners are visited in reading order (ascending y, then x); for squares
/// the horizontal primary comes first.
std::vector<ScanOrder> candidate_orders(const BoundingRect& rect);

/// SER nodes in the order `order` visits them.
std::vector<GridPoint> scan_nodes(const BoundingRect& rect, const ScanOrder& order);

BitString scan_string(std::span<const GridPoint> occupied, const BoundingRect& rect,
                      const ScanOrder& order);
/// Throws std::invalid_argument when the configuration is not still.
BitString scan_string(const Configuration& config, const ScanOrder& order);

struct LeadingScan {
    BoundingRect rect;
    ScanOrder order;
    BitString bits;
};

/// Several orders share the maximum string: the point set is symmetric.
struct TieReport {
    BoundingRect rect;
    std::vector<ScanOrder> orders;
    BitString bits;
};

std::variant<LeadingScan, TieReport> leading_scan(std::span<const GridPoint> points);
std::variant<LeadingScan, TieReport> leading_scan(const Configuration& config);

/// The maximum string with ties resolved by enumeration order.
LeadingScan first_leading_scan(std::span<const GridPoint> points);

bool is_asymmetric(std::span<const GridPoint> points);
bool is_asymmetric(const Configuration& config);

/// Brute-force symmetry search: every SER-preserving point-group map (with the
/// translation that re-centres it on the SER) that permutes the occupied set
/// and is not the identity on the SER's nodes.
std::vector<Isometry> automorphism_oracle(std::span<const GridPoint> points);

}  // namespace apfgrid
