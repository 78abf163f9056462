#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bubbles/configuration.hpp"
#include "bubbles/density.hpp"

namespace bubbles {

/// A region with one cell on each side of the origin; `fraction` is the
/// share of its mass placed on the negative side.
struct SplitSpec {
  RegionId region;
  double fraction = 0.5;

  friend bool operator==(const SplitSpec&, const SplitSpec&) = default;
};

/// Combinatorial skeleton of a condensed configuration. Both sides are
/// listed from the origin outward. Only the split region may appear on
/// both sides.
struct Layout {
  std::vector<RegionId> left;
  std::vector<RegionId> right;
  std::optional<SplitSpec> split;

  Layout mirrored() const;

  friend bool operator==(const Layout&, const Layout&) = default;
};

/// Throws PreconditionError unless `layout` is well formed for `n` regions.
void validate_layout(const Layout& layout, int n);

/// Per-cell masses of one side, origin outward, before zero-mass cells are dropped.
std::vector<double> side_masses(const Layout& layout, std::span<const double> masses, bool left_side);

/// Builds the condensed configuration: the k-th breakpoint out from the
/// origin on a side encloses the first k masses of that side. Zero-mass
/// cells are collapsed.
Configuration realize(const Density& d, const Layout& layout, std::span<const double> masses);

/// Reflects `c` when needed so the lighter origin-adjacent region sits on
/// the positive side (ties: smaller region id). Perimeter and masses are
/// unchanged; the map is idempotent.
Configuration canonicalize(const Density& d, const Configuration& c);

/// Reads the layout back from a condensed configuration whose regions are
/// single cells on each side.
Layout layout_of(const Density& d, const Configuration& c);

/// Human form, e.g. "M4 M2 . M1 M3" (left side written outer to inner).
std::string describe(const Layout& layout);

}  // namespace bubbles
