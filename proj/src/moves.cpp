#include "bubbles/moves.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

namespace bubbles {

namespace {

// Canonical working form: origin split out, same-label runs merged, no
// leading or trailing gaps.
Configuration normalized(const Configuration& c) { return merge_same_label(split_at_origin(c)); }

double cell_mass(const Density& d, const Configuration& c, std::size_t k) { return d.mass_between(c.lo(k), c.hi(k)); }

// Cell masses this close are treated as equal, so both cells vanish together.
bool tied(double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(std::abs(x), std::abs(y)); }

double shifted(const Density& d, double x, double mass_shift) {
  return d.inverse_cumulative(d.cumulative(x) + mass_shift);
}

MoveReport finish(const Density& d, std::string name, const Configuration& before, std::vector<double> xs,
                  std::vector<Cell> cells, bool strict) {
  for (double& x : xs)
    if (std::abs(x) < kOriginSnap) x = 0.0;
  for (std::size_t k = 0; k < cells.size();) {
    if (xs[k + 1] == xs[k]) {
      cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(k));
      xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    } else {
      ++k;
    }
  }
  if (cells.empty()) xs.clear();
  Configuration after = merge_same_label(Configuration(std::move(xs), std::move(cells), before.region_count()));
  const double delta = total_perimeter(d, after) - total_perimeter(d, before);
  return MoveReport{std::move(name), before, std::move(after), delta, strict};
}

struct PairMatch {
  PatternKind kind;
  RegionId first;   // region owning the leftmost of the four cells
  RegionId second;
  std::size_t f0, f1, s0, s1;
};

PairMatch match_pair(const Configuration& s, RegionId a, RegionId b) {
  if (a == b) throw PreconditionError("pattern: regions must differ");
  auto ca = s.cells_of(a);
  auto cb = s.cells_of(b);
  if (ca.size() != 2 || cb.size() != 2) throw PreconditionError("pattern: each region must own exactly two cells");
  if (cb[0] < ca[0]) {
    std::swap(a, b);
    std::swap(ca, cb);
  }
  PatternKind kind;
  if (ca[1] < cb[0])
    kind = PatternKind::Ordered;
  else if (ca[1] < cb[1])
    kind = PatternKind::Alternating;
  else
    kind = PatternKind::Nested;
  return PairMatch{kind, a, b, ca[0], ca[1], cb[0], cb[1]};
}

}  // namespace

std::string to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::Alternating: return "alternating";
    case PatternKind::Nested: return "nested";
    case PatternKind::Ordered: return "ordered";
  }
  return "unknown";
}

MoveReport condense(const Density& d, const Configuration& c) {
  const auto masses = region_masses(d, c);
  for (double m : masses)
    if (!(m > 0.0)) throw PreconditionError("condense: every region needs positive mass");

  const Configuration s = split_at_origin(c);
  const auto& xs = s.breakpoints();

  struct Entry {
    RegionId region;
    double mass = 0.0;
    double outer = 0.0;
  };
  // Returns outward distances of the rebuilt side and its labels.
  auto rebuild_side = [&](bool left_side, std::vector<double>& ends, std::vector<Cell>& labels) {
    std::vector<std::size_t> side;
    if (left_side) {
      for (std::size_t k = s.cell_count(); k-- > 0;)
        if (xs[k + 1] <= 0.0) side.push_back(k);
    } else {
      for (std::size_t k = 0; k < s.cell_count(); ++k)
        if (xs[k] >= 0.0) side.push_back(k);
    }
    while (!side.empty() && !s.cells()[side.back()]) side.pop_back();
    if (side.empty()) return;

    auto inner_of = [&](std::size_t k) { return left_side ? -xs[k + 1] : xs[k]; };
    auto outer_of = [&](std::size_t k) { return left_side ? -xs[k] : xs[k + 1]; };

    bool packed = inner_of(side.front()) == 0.0;
    std::vector<RegionId> seen;
    for (std::size_t k : side) {
      const Cell& cell = s.cells()[k];
      if (!cell || std::find(seen.begin(), seen.end(), *cell) != seen.end()) {
        packed = false;
        break;
      }
      seen.push_back(*cell);
    }
    if (packed) {
      for (std::size_t k : side) {
        ends.push_back(outer_of(k));
        labels.push_back(s.cells()[k]);
      }
      return;
    }

    std::map<RegionId, Entry> by_region;
    for (std::size_t k : side) {
      if (!s.cells()[k]) continue;
      Entry& e = by_region[*s.cells()[k]];
      e.region = *s.cells()[k];
      e.mass += cell_mass(d, s, k);
      e.outer = std::max(e.outer, outer_of(k));
    }
    std::vector<Entry> order;
    for (const auto& [r, e] : by_region) order.push_back(e);
    std::stable_sort(order.begin(), order.end(), [](const Entry& x, const Entry& y) { return x.outer < y.outer; });
    double prefix = 0.0;
    for (const Entry& e : order) {
      prefix += e.mass;
      ends.push_back(d.inverse_cumulative(prefix));
      labels.push_back(e.region);
    }
  };

  std::vector<double> left_ends, right_ends;
  std::vector<Cell> left_labels, right_labels;
  rebuild_side(true, left_ends, left_labels);
  rebuild_side(false, right_ends, right_labels);

  std::vector<double> out_xs;
  std::vector<Cell> out_cells;
  for (auto it = left_ends.rbegin(); it != left_ends.rend(); ++it) out_xs.push_back(-*it);
  out_cells.assign(left_labels.rbegin(), left_labels.rend());
  out_xs.push_back(0.0);
  out_xs.insert(out_xs.end(), right_ends.begin(), right_ends.end());
  out_cells.insert(out_cells.end(), right_labels.begin(), right_labels.end());

  MoveReport report = finish(d, "condense", c, std::move(out_xs), std::move(out_cells), false);
  if (report.after == normalized(c)) report.perimeter_delta = 0.0;
  return report;
}

MoveReport transpose_adjacent(const Density& d, const Configuration& c, std::size_t i) {
  const auto& xs = c.breakpoints();
  if (i == 0 || i + 1 >= xs.size()) throw PreconditionError("transpose: breakpoint must be shared by two cells");
  const Cell left = c.cells()[i - 1];
  const Cell right = c.cells()[i];
  if (!left || !right || *left == *right) throw PreconditionError("transpose: needs two cells of distinct regions");

  std::size_t inner, outer;
  double inner_edge;  // distance of the inner cell's origin-side endpoint
  bool right_side;
  if (xs[i - 1] >= 0.0) {
    inner = i - 1;
    outer = i;
    inner_edge = xs[i - 1];
    right_side = true;
  } else if (xs[i + 1] <= 0.0) {
    inner = i;
    outer = i - 1;
    inner_edge = -xs[i + 1];
    right_side = false;
  } else {
    throw PreconditionError("transpose: cells must lie on the same side of the origin");
  }
  const double m_inner = cell_mass(d, c, inner);
  const double m_outer = cell_mass(d, c, outer);
  const bool equal = tied(m_inner, m_outer);
  if (m_inner < m_outer && !equal) throw PreconditionError("transpose: inner cell is already the lighter one");

  std::vector<double> bs = xs;
  std::vector<Cell> cells = c.cells();
  std::swap(cells[i - 1], cells[i]);
  if (!equal) {
    const double shared = d.outer_endpoint(inner_edge, m_outer);
    bs[i] = right_side ? shared : -shared;
  }
  return finish(d, "transpose_adjacent", c, std::move(bs), std::move(cells), !equal);
}

namespace {

// First labelled cell on the negative side, and the single opposite cell of its region.
std::optional<std::pair<std::size_t, std::size_t>> steal_target(const Configuration& s) {
  if (s.cell_count() == 0 || s.hi(0) > 0.0 || !s.cells()[0]) return std::nullopt;
  const RegionId r = *s.cells()[0];
  std::optional<std::size_t> opposite;
  for (std::size_t k : s.cells_of(r)) {
    if (s.lo(k) >= 0.0) {
      if (opposite) return std::nullopt;
      opposite = k;
    }
  }
  if (!opposite) return std::nullopt;
  return std::make_pair(std::size_t{0}, *opposite);
}

MoveReport steal_left(const Density& d, const Configuration& original) {
  const Configuration s = normalized(original);
  const auto target = steal_target(s);
  if (!target) {
    throw PreconditionError(
        "mass_steal_outer: outermost region on that side must own exactly one cell on the other side");
  }
  const std::size_t j = target->second;
  const auto& xs = s.breakpoints();
  const double m = cell_mass(d, s, j);

  std::vector<double> bs = xs;
  std::vector<Cell> cells = s.cells();
  bs[0] = -d.outer_endpoint(-xs[0], m);
  for (std::size_t i = j + 2; i < xs.size(); ++i) bs[i] = shifted(d, xs[i], -m);
  bs[j + 1] = bs[j];
  return finish(d, "mass_steal_outer", original, std::move(bs), std::move(cells), true);
}

}  // namespace

bool can_mass_steal(const Configuration& c, Side side) {
  const Configuration s = normalized(side == Side::Left ? c : c.reflected());
  return steal_target(s).has_value();
}

MoveReport mass_steal_outer(const Density& d, const Configuration& c, Side side) {
  if (side == Side::Left) return steal_left(d, c);
  MoveReport r = steal_left(d, c.reflected());
  r.before = c;
  r.after = r.after.reflected();
  return r;
}

PatternKind detect_pattern(const Configuration& c, RegionId a, RegionId b) {
  return match_pair(normalized(c), a, b).kind;
}

MoveReport siphon_alternating(const Density& d, const Configuration& c, RegionId a, RegionId b) {
  const Configuration s = normalized(c);
  const PairMatch p = match_pair(s, a, b);
  if (p.kind != PatternKind::Alternating) throw PreconditionError("siphon: regions are not alternating");
  // Order is A- = f0, B- = s0, A+ = f1, B+ = s1.
  if (s.hi(p.s0) > 0.0 || s.lo(p.f1) < 0.0)
    throw PreconditionError("siphon: interior cells must sit on opposite sides of the origin");

  const auto& xs = s.breakpoints();
  const double drain_b = cell_mass(d, s, p.s0);
  const double drain_a = cell_mass(d, s, p.f1);
  const double transfer = std::min(drain_b, drain_a);

  std::vector<double> bs = xs;
  for (std::size_t i = p.f0 + 1; i <= p.s0; ++i) {
    if (xs[i] == 0.0) throw PreconditionError("siphon: moving endpoint at the origin");
    bs[i] = shifted(d, xs[i], transfer);
  }
  for (std::size_t i = p.f1 + 1; i <= p.s1; ++i) {
    if (xs[i] == 0.0) throw PreconditionError("siphon: moving endpoint at the origin");
    bs[i] = shifted(d, xs[i], -transfer);
  }
  const bool equal = tied(drain_a, drain_b);
  if (drain_b <= drain_a || equal) bs[p.s0] = xs[p.s0 + 1];
  if (drain_a <= drain_b || equal) bs[p.f1 + 1] = xs[p.f1];
  return finish(d, "siphon_alternating", c, std::move(bs), s.cells(), true);
}

namespace {

struct NestedMatch {
  std::size_t origin;  // breakpoint index of 0
};

std::optional<NestedMatch> nested_at_origin(const Configuration& s, RegionId outer, RegionId inner) {
  const auto o = s.origin_index();
  if (!o || *o < 2 || *o + 2 >= s.breakpoints().size()) return std::nullopt;
  const std::size_t k = *o;
  const auto& cells = s.cells();
  if (cells[k - 1] != inner || cells[k] != inner || cells[k - 2] != outer || cells[k + 1] != outer) return std::nullopt;
  if (s.cells_of(inner).size() != 2 || s.cells_of(outer).size() != 2) return std::nullopt;
  return NestedMatch{k};
}

}  // namespace

MoveReport slide_nested_origin(const Density& d, const Configuration& c, RegionId a, RegionId b) {
  const Configuration s = normalized(c);
  auto match = nested_at_origin(s, a, b);
  if (!match) {
    match = nested_at_origin(s, b, a);
    if (!match) throw PreconditionError("slide_nested_origin: need B = [-b,0] u [0,c] immediately inside A");
  }
  const std::size_t o = match->origin;
  const auto& xs = s.breakpoints();
  const double a_plus = cell_mass(d, s, o + 1);
  const double b_minus = cell_mass(d, s, o - 1);
  const double transfer = std::min(a_plus, b_minus);

  std::vector<double> bs = xs;
  bs[o - 1] = shifted(d, xs[o - 1], transfer);
  bs[o + 1] = shifted(d, xs[o + 1], transfer);
  const bool equal = tied(a_plus, b_minus);
  if (a_plus <= b_minus || equal) bs[o + 1] = xs[o + 2];
  if (b_minus <= a_plus || equal) bs[o - 1] = 0.0;
  return finish(d, "slide_nested_origin", c, std::move(bs), s.cells(), true);
}

bool origin_is_interior(const Configuration& c) {
  const Configuration s = normalized(c);
  const auto o = s.origin_index();
  if (!o || *o == 0 || *o >= s.cell_count()) return false;
  return s.cells()[*o - 1] && s.cells()[*o - 1] == s.cells()[*o];
}

MoveReport slide_origin_to_endpoint(const Density& d, const Configuration& c) {
  if (!origin_is_interior(c)) throw PreconditionError("slide_origin_to_endpoint: origin is not interior to a cell");
  const Configuration s = normalized(c);
  const std::size_t o = *s.origin_index();
  const auto& xs = s.breakpoints();

  double rate = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (i != o && s.is_boundary(i)) rate += d.log_derivative(xs[i]);
  const bool rightward = rate <= 0.0;
  const double transfer = rightward ? cell_mass(d, s, o - 1) : -cell_mass(d, s, o);

  std::vector<double> bs = xs;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (i != o) bs[i] = shifted(d, xs[i], transfer);
  if (rightward)
    bs[o - 1] = 0.0;
  else
    bs[o + 1] = 0.0;
  return finish(d, "slide_origin_to_endpoint", c, std::move(bs), s.cells(), true);
}

std::vector<MoveReport> run_strategy(const Density& d, const Configuration& start) {
  std::vector<MoveReport> history;
  Configuration cur = start;
  auto apply = [&](MoveReport r) {
    cur = r.after;
    history.push_back(std::move(r));
  };

  const int max_rounds = 8 * (start.region_count() + 2) + static_cast<int>(start.cell_count());
  for (int round = 0; round < max_rounds; ++round) {
    MoveReport packed = condense(d, cur);
    if (!(packed.after == cur)) apply(std::move(packed));

    bool progressed = false;
    for (Side side : {Side::Left, Side::Right}) {
      if (can_mass_steal(cur, side)) {
        apply(mass_steal_outer(d, cur, side));
        progressed = true;
      }
    }

    const Configuration s = normalized(cur);
    std::vector<RegionId> doubles;
    for (int r = 0; r < s.region_count(); ++r)
      if (s.cells_of(RegionId(r)).size() == 2) doubles.emplace_back(r);

    bool moved = false;
    for (std::size_t i = 0; i < doubles.size() && !moved; ++i) {
      for (std::size_t j = i + 1; j < doubles.size() && !moved; ++j) {
        const PairMatch p = match_pair(s, doubles[i], doubles[j]);
        if (p.kind == PatternKind::Alternating && s.hi(p.s0) <= 0.0 && s.lo(p.f1) >= 0.0) {
          apply(siphon_alternating(d, cur, doubles[i], doubles[j]));
          moved = true;
        } else if (nested_at_origin(s, doubles[i], doubles[j]) || nested_at_origin(s, doubles[j], doubles[i])) {
          apply(slide_nested_origin(d, cur, doubles[i], doubles[j]));
          moved = true;
        }
      }
    }
    if (!moved && origin_is_interior(cur)) {
      apply(slide_origin_to_endpoint(d, cur));
      moved = true;
    }
    if (!moved && !progressed) break;
  }
  return history;
}

}  // namespace bubbles
