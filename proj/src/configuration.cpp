#include "bubbles/configuration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace bubbles {

Configuration::Configuration(std::vector<double> breakpoints, std::vector<Cell> cells, int n)
    : breakpoints_(std::move(breakpoints)), cells_(std::move(cells)), n_(n) {
  if (n_ < 0) throw PreconditionError("Configuration: negative region count");
  if (breakpoints_.empty()) {
    if (!cells_.empty()) throw PreconditionError("Configuration: cells without breakpoints");
    return;
  }
  if (cells_.size() + 1 != breakpoints_.size())
    throw PreconditionError("Configuration: need exactly one cell per pair of consecutive breakpoints");
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!std::isfinite(breakpoints_[i])) throw PreconditionError("Configuration: non-finite breakpoint");
    if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i]))
      throw PreconditionError("Configuration: breakpoints must be strictly increasing");
  }
  for (const Cell& cell : cells_) {
    if (cell && (cell->index < 0 || cell->index >= n_))
      throw PreconditionError("Configuration: region id " + std::to_string(cell->index) + " out of range");
  }
}

std::vector<std::size_t> Configuration::cells_of(RegionId r) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < cells_.size(); ++k)
    if (cells_[k] == r) out.push_back(k);
  return out;
}

bool Configuration::is_boundary(std::size_t i) const {
  const Cell left = i > 0 ? cells_[i - 1] : Cell{};
  const Cell right = i < cells_.size() ? cells_[i] : Cell{};
  return (left || right) && left != right;
}

std::optional<std::size_t> Configuration::origin_index() const {
  for (std::size_t i = 0; i < breakpoints_.size(); ++i)
    if (breakpoints_[i] == 0.0) return i;
  return std::nullopt;
}

Configuration Configuration::reflected() const {
  std::vector<double> xs(breakpoints_.rbegin(), breakpoints_.rend());
  for (double& x : xs) x = x == 0.0 ? 0.0 : -x;
  std::vector<Cell> cs(cells_.rbegin(), cells_.rend());
  return Configuration(std::move(xs), std::move(cs), n_);
}

double total_perimeter(const Density& d, const Configuration& c) {
  double p = 0.0;
  const auto& xs = c.breakpoints();
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (c.is_boundary(i)) p += d.value(xs[i]);
  return p;
}

double region_mass(const Density& d, const Configuration& c, RegionId r) {
  double m = 0.0;
  for (std::size_t k : c.cells_of(r)) m += d.mass_between(c.lo(k), c.hi(k));
  return m;
}

std::vector<double> region_masses(const Density& d, const Configuration& c) {
  std::vector<double> out(static_cast<std::size_t>(c.region_count()), 0.0);
  for (std::size_t k = 0; k < c.cell_count(); ++k)
    if (const Cell& cell = c.cells()[k]) out[static_cast<std::size_t>(cell->index)] += d.mass_between(c.lo(k), c.hi(k));
  return out;
}

bool is_condensed(const Configuration& c) {
  if (c.cell_count() == 0) return c.region_count() == 0;
  std::vector<int> per_region(static_cast<std::size_t>(c.region_count()), 0);
  for (const Cell& cell : c.cells()) {
    if (!cell) return false;
    if (++per_region[static_cast<std::size_t>(cell->index)] > 2) return false;
  }
  const auto& xs = c.breakpoints();
  return xs.front() <= 0.0 && xs.back() >= 0.0;
}

Configuration split_at_origin(const Configuration& c) {
  const auto& xs = c.breakpoints();
  for (std::size_t k = 0; k < c.cell_count(); ++k) {
    if (xs[k] < 0.0 && xs[k + 1] > 0.0) {
      std::vector<double> bs = xs;
      std::vector<Cell> cs = c.cells();
      bs.insert(bs.begin() + static_cast<std::ptrdiff_t>(k) + 1, 0.0);
      cs.insert(cs.begin() + static_cast<std::ptrdiff_t>(k), cs[k]);
      return Configuration(std::move(bs), std::move(cs), c.region_count());
    }
  }
  return c;
}

Configuration merge_same_label(const Configuration& c) {
  if (c.cell_count() == 0) return c;
  const auto& xs = c.breakpoints();
  std::vector<double> bs{xs.front()};
  std::vector<Cell> cs{c.cells().front()};
  for (std::size_t k = 1; k < c.cell_count(); ++k) {
    if (c.cells()[k] == cs.back() && xs[k] != 0.0) {
      continue;  // breakpoint k is interior to a merged run
    }
    bs.push_back(xs[k]);
    cs.push_back(c.cells()[k]);
  }
  bs.push_back(xs.back());
  // Leading/trailing empty cells carry no information.
  while (!cs.empty() && !cs.front()) {
    cs.erase(cs.begin());
    bs.erase(bs.begin());
  }
  while (!cs.empty() && !cs.back()) {
    cs.pop_back();
    bs.pop_back();
  }
  if (cs.empty()) bs.clear();
  return Configuration(std::move(bs), std::move(cs), c.region_count());
}

double relative_error(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), std::numeric_limits<double>::min()});
  return std::abs(a - b) / scale;
}

}  // namespace bubbles
