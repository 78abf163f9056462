#include "bubbles/layout.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace bubbles {

Layout Layout::mirrored() const {
  Layout out{right, left, split};
  if (out.split) out.split->fraction = 1.0 - out.split->fraction;
  return out;
}

void validate_layout(const Layout& layout, int n) {
  auto check_side = [n](const std::vector<RegionId>& side) {
    std::set<RegionId> seen;
    for (RegionId r : side) {
      if (r.index < 0 || r.index >= n) throw PreconditionError("layout: region id out of range");
      if (!seen.insert(r).second) throw PreconditionError("layout: duplicate region on one side");
    }
    return seen;
  };
  const auto left = check_side(layout.left);
  const auto right = check_side(layout.right);
  std::vector<RegionId> both;
  std::set_intersection(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(both));
  if (layout.split) {
    const double t = layout.split->fraction;
    if (!(t >= 0.0 && t <= 1.0)) throw PreconditionError("layout: split fraction outside [0,1]");
    if (both.size() != 1 || both.front() != layout.split->region)
      throw PreconditionError("layout: split region must appear exactly once on each side");
  } else if (!both.empty()) {
    throw PreconditionError("layout: region on both sides without a split");
  }
}

std::vector<double> side_masses(const Layout& layout, std::span<const double> masses, bool left_side) {
  const auto& side = left_side ? layout.left : layout.right;
  std::vector<double> out;
  out.reserve(side.size());
  for (RegionId r : side) {
    double m = masses[static_cast<std::size_t>(r.index)];
    if (layout.split && layout.split->region == r) m *= left_side ? layout.split->fraction : 1.0 - layout.split->fraction;
    out.push_back(m);
  }
  return out;
}

Configuration realize(const Density& d, const Layout& layout, std::span<const double> masses) {
  const int n = static_cast<int>(masses.size());
  validate_layout(layout, n);
  std::vector<bool> placed(masses.size(), false);
  for (RegionId r : layout.left) placed[static_cast<std::size_t>(r.index)] = true;
  for (RegionId r : layout.right) placed[static_cast<std::size_t>(r.index)] = true;
  for (std::size_t r = 0; r < masses.size(); ++r) {
    if (!(masses[r] >= 0.0)) throw PreconditionError("realize: masses must be nonnegative");
    if (masses[r] > 0.0 && !placed[r]) throw PreconditionError("realize: layout omits a region with positive mass");
  }

  auto build_side = [&](bool left_side, std::vector<double>& ends, std::vector<Cell>& labels) {
    const auto& side = left_side ? layout.left : layout.right;
    const auto ms = side_masses(layout, masses, left_side);
    double prefix = 0.0;
    for (std::size_t k = 0; k < side.size(); ++k) {
      if (ms[k] == 0.0) continue;
      prefix += ms[k];
      ends.push_back(d.inverse_cumulative(prefix));
      labels.push_back(side[k]);
    }
  };
  std::vector<double> left_ends, right_ends;
  std::vector<Cell> left_cells, right_cells;
  build_side(true, left_ends, left_cells);
  build_side(false, right_ends, right_cells);
  if (left_ends.empty() && right_ends.empty()) return Configuration({}, {}, n);

  std::vector<double> xs;
  std::vector<Cell> cells;
  for (auto it = left_ends.rbegin(); it != left_ends.rend(); ++it) xs.push_back(-*it);
  for (auto it = left_cells.rbegin(); it != left_cells.rend(); ++it) cells.push_back(*it);
  xs.push_back(0.0);
  xs.insert(xs.end(), right_ends.begin(), right_ends.end());
  cells.insert(cells.end(), right_cells.begin(), right_cells.end());
  return Configuration(std::move(xs), std::move(cells), n);
}

namespace {

using SideKey = std::vector<std::tuple<double, int, double>>;

// Cells of one side from the origin outward, keyed by (region mass, id, cell mass).
SideKey side_key(const Density& d, const Configuration& c, const std::vector<double>& masses, bool left_side) {
  SideKey key;
  const auto& xs = c.breakpoints();
  auto push = [&](std::size_t k) {
    const int r = c.cells()[k]->index;
    key.emplace_back(masses[static_cast<std::size_t>(r)], r, d.mass_between(xs[k], xs[k + 1]));
  };
  if (left_side) {
    for (std::size_t k = c.cell_count(); k-- > 0;)
      if (xs[k + 1] <= 0.0) push(k);
  } else {
    for (std::size_t k = 0; k < c.cell_count(); ++k)
      if (xs[k] >= 0.0) push(k);
  }
  return key;
}

}  // namespace

Configuration canonicalize(const Density& d, const Configuration& c) {
  if (!is_condensed(c)) throw PreconditionError("canonicalize: configuration is not condensed");
  const Configuration split = split_at_origin(c);
  const auto masses = region_masses(d, split);
  const SideKey neg = side_key(d, split, masses, true);
  const SideKey pos = side_key(d, split, masses, false);
  if (neg.empty()) return c;
  if (pos.empty() || neg < pos) return c.reflected();
  return c;
}

Layout layout_of(const Density& d, const Configuration& c) {
  const Configuration split = split_at_origin(c);
  if (!is_condensed(split)) throw PreconditionError("layout_of: configuration is not condensed");
  Layout out;
  const auto& xs = split.breakpoints();
  for (std::size_t k = split.cell_count(); k-- > 0;)
    if (xs[k + 1] <= 0.0) out.left.push_back(*split.cells()[k]);
  for (std::size_t k = 0; k < split.cell_count(); ++k)
    if (xs[k] >= 0.0) out.right.push_back(*split.cells()[k]);
  for (RegionId r : out.left) {
    if (std::find(out.right.begin(), out.right.end(), r) != out.right.end()) {
      if (out.split) throw PreconditionError("layout_of: more than one region spans both sides");
      out.split = SplitSpec{r, 0.0};
    }
  }
  if (out.split) {
    // Recover the fraction from the two cell masses.
    double neg = 0.0, total = 0.0;
    for (std::size_t k : split.cells_of(out.split->region)) {
      const double m = d.mass_between(split.lo(k), split.hi(k));
      total += m;
      if (split.hi(k) <= 0.0) neg += m;
    }
    out.split->fraction = neg / total;
  }
  return out;
}

std::string describe(const Layout& layout) {
  auto name = [&](RegionId r) {
    std::string s = "M" + std::to_string(r.index + 1);
    if (layout.split && layout.split->region == r) s += "*";
    return s;
  };
  std::string out;
  for (auto it = layout.left.rbegin(); it != layout.left.rend(); ++it) out += name(*it) + " ";
  out += ".";
  for (RegionId r : layout.right) out += " " + name(r);
  return out;
}

}  // namespace bubbles
