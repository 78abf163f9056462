#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bubbles/configuration.hpp"
#include "bubbles/density.hpp"

namespace bubbles {

/// Outcome of one perimeter-reducing rearrangement.
struct MoveReport {
  std::string move;
  Configuration before;
  Configuration after;
  double perimeter_delta = 0.0;  ///< perimeter(after) - perimeter(before)
  bool strict = false;           ///< a strict decrease is guaranteed for this input
};

enum class Side { Left, Right };

enum class PatternKind { Alternating, Nested, Ordered };

/// Breakpoints closer than this to 0 are snapped to exactly 0.
inline constexpr double kOriginSnap = 1e-12;

/// Repacks each side of the origin into adjacent single intervals, ordered
/// by each region's original outermost endpoint on that side.
MoveReport condense(const Density& d, const Configuration& c);

/// Swaps two adjacent cells on one side so the lighter one is nearer the
/// origin. Only the shared breakpoint moves.
MoveReport transpose_adjacent(const Density& d, const Configuration& c, std::size_t shared_breakpoint);

/// Moves the opposite-side cell of the outermost region on `side` onto that
/// outermost cell; cells beyond the removed one slide inward.
MoveReport mass_steal_outer(const Density& d, const Configuration& c, Side side);

/// Relative order of two regions that each own exactly two cells.
PatternKind detect_pattern(const Configuration& c, RegionId a, RegionId b);

/// End state of simultaneous siphoning for an alternating pair: both
/// interior cells drain until the lighter one vanishes.
MoveReport siphon_alternating(const Density& d, const Configuration& c, RegionId a, RegionId b);

/// Region `b` straddles the origin and is immediately surrounded by `a`;
/// slides b's cells right until A+ or B- vanishes.
MoveReport slide_nested_origin(const Density& d, const Configuration& c, RegionId a, RegionId b);

/// Origin interior to a region: shifts every other breakpoint in the
/// direction of decreasing perimeter until the origin becomes an endpoint.
MoveReport slide_origin_to_endpoint(const Density& d, const Configuration& c);

// Applicability probes used by the strategy loop.
bool can_mass_steal(const Configuration& c, Side side);
bool origin_is_interior(const Configuration& c);

/// Drives condense, mass stealing, siphoning / nested sliding and the
/// origin slide until none applies. Returns every applied move in order.
std::vector<MoveReport> run_strategy(const Density& d, const Configuration& start);

std::string to_string(PatternKind kind);

}  // namespace bubbles
