#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "bubbles/density.hpp"

namespace bubbles {

struct RegionId {
  int index = 0;

  constexpr RegionId() = default;
  constexpr explicit RegionId(int i) : index(i) {}

  friend constexpr auto operator<=>(RegionId, RegionId) = default;
};

/// A cell label: a region, or std::nullopt for an empty gap.
using Cell = std::optional<RegionId>;

/// Sorted breakpoints x_0 < ... < x_m with one label per cell [x_k, x_{k+1}].
///
/// Adjacency is structural: two cells touch iff they share a breakpoint
/// index. A configuration with no cells has no breakpoints.
class Configuration {
 public:
  Configuration() = default;
  Configuration(std::vector<double> breakpoints, std::vector<Cell> cells, int n);

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Cell>& cells() const { return cells_; }
  int region_count() const { return n_; }
  std::size_t cell_count() const { return cells_.size(); }

  double lo(std::size_t cell) const { return breakpoints_[cell]; }
  double hi(std::size_t cell) const { return breakpoints_[cell + 1]; }

  /// Cells labelled with region r, left to right.
  std::vector<std::size_t> cells_of(RegionId r) const;

  /// True when breakpoint i separates two different labels and touches a region.
  bool is_boundary(std::size_t i) const;

  /// Index of the breakpoint equal to 0, if any.
  std::optional<std::size_t> origin_index() const;

  /// Mirror image about the origin.
  Configuration reflected() const;

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::vector<double> breakpoints_;
  std::vector<Cell> cells_;
  int n_ = 0;
};

double total_perimeter(const Density& d, const Configuration& c);
double region_mass(const Density& d, const Configuration& c, RegionId r);
std::vector<double> region_masses(const Density& d, const Configuration& c);

/// No empty cells, at most two cells per region, origin inside the support.
bool is_condensed(const Configuration& c);

/// Inserts a breakpoint at 0 when the origin is interior to a cell, giving
/// that region two cells that meet at the origin.
Configuration split_at_origin(const Configuration& c);

/// Drops breakpoints strictly between two cells of the same region, except
/// the origin.
Configuration merge_same_label(const Configuration& c);

/// Relative difference |a - b| / max(|a|, |b|, tiny).
double relative_error(double a, double b);

}  // namespace bubbles
