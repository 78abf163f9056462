#include "bubbles/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "bubbles/golden.hpp"
#include "bubbles/solver.hpp"

namespace bubbles {

namespace {

constexpr int kGridIntervals = 512;

std::vector<RegionId> ids(const std::vector<int>& v) {
  std::vector<RegionId> out;
  out.reserve(v.size());
  for (int i : v) out.emplace_back(i);
  return out;
}

void check_masses(std::span<const double> masses) {
  if (masses.empty()) throw PreconditionError("oracle: need at least one mass");
  for (double m : masses)
    if (!(m >= 0.0) || !std::isfinite(m)) throw PreconditionError("oracle: masses must be finite and nonnegative");
  if (!std::is_sorted(masses.begin(), masses.end())) throw PreconditionError("oracle: masses must be sorted ascending");
}

// Evaluates f(i) for i in [0, count) on `workers` threads, each writing its own slots.
template <class F>
std::vector<double> parallel_values(std::size_t count, unsigned workers, F f) {
  std::vector<double> values(count);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(1, count / 64)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) values[i] = f(i);
    return values;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&, begin, end] {
      for (std::size_t i = begin; i < end; ++i) values[i] = f(i);
    });
  }
  for (auto& t : pool) t.join();
  return values;
}

}  // namespace

std::vector<Layout> enumerate_single_interval_layouts(int n, EnumerationMode mode, std::optional<Shape> shape) {
  if (shape && (shape->left < 0 || shape->right < 0 || shape->left + shape->right != n))
    throw PreconditionError("enumerate: shape does not match n");
  std::vector<Layout> out;

  if (mode == EnumerationMode::Pruned) {
    if (n < 1 || n > 12) throw PreconditionError("enumerate: pruned mode needs 1 <= n <= 12");
    // Bit r set: region r goes left. Region 0 stays right unless a shape
    // filter makes the mirror image unreachable.
    const bool pin_first = !shape || shape->left == shape->right;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      if (pin_first && (mask & 1u)) continue;
      if (shape && std::popcount(mask) != shape->left) continue;
      Layout layout;
      for (int r = 0; r < n; ++r) ((mask >> r) & 1u ? layout.left : layout.right).emplace_back(r);
      out.push_back(std::move(layout));
    }
    return out;
  }

  if (n < 1 || n > 7) throw PreconditionError("enumerate: full-permutation mode needs 1 <= n <= 7");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    for (int l = 0; l <= n; ++l) {
      if (shape && l != shape->left) continue;
      Layout layout{ids({perm.begin(), perm.begin() + l}), ids({perm.begin() + l, perm.end()}), std::nullopt};
      // Keep one of each mirror pair when the mirror is also enumerated.
      const bool mirror_listed = !shape || shape->left == shape->right;
      if (mirror_listed && layout.right < layout.left) continue;
      out.push_back(std::move(layout));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<Layout> enumerate_split_structures(int n, bool paranoid) {
  if (n < 1 || n > 6) throw PreconditionError("enumerate_split_structures: needs 1 <= n <= 6");
  std::vector<Layout> out;
  for (int r = 0; r < n; ++r) {
    std::vector<int> others;
    for (int i = 0; i < n; ++i)
      if (i != r) others.push_back(i);
    do {
      const int rest = n - 1;
      for (int l = 0; l <= rest; ++l) {
        for (int pl = 0; pl <= l; ++pl) {
          for (int pr = 0; pr <= rest - l; ++pr) {
            if (!paranoid) {
              const bool outermost = pl == l || pr == rest - l;
              const bool both_at_origin = pl == 0 && pr == 0;
              if (outermost || both_at_origin) continue;
            }
            std::vector<int> left(others.begin(), others.begin() + l);
            std::vector<int> right(others.begin() + l, others.end());
            left.insert(left.begin() + pl, r);
            right.insert(right.begin() + pr, r);
            Layout layout{ids(left), ids(right), SplitSpec{RegionId(r), 0.5}};
            if (layout.right < layout.left) continue;
            out.push_back(std::move(layout));
          }
        }
      }
    } while (std::next_permutation(others.begin(), others.end()));
  }
  return out;
}

double split_perimeter(const Density& d, std::span<const double> masses, const Layout& structure, double fraction) {
  if (!structure.split) throw PreconditionError("split_perimeter: layout has no split region");
  Layout l = structure;
  l.split->fraction = fraction;
  validate_layout(l, static_cast<int>(masses.size()));
  double total = 0.0;
  for (bool left_side : {true, false}) {
    double prefix = 0.0;
    for (double m : side_masses(l, masses, left_side)) {
      prefix += m;
      total += d.value(d.inverse_cumulative(prefix));
    }
  }
  return total;
}

SplitOptimum optimize_split_fraction(const Density& d, std::span<const double> masses, const Layout& structure) {
  auto p = [&](double t) { return split_perimeter(d, masses, structure, t); };
  int best_k = 0;
  double best_v = p(0.0);
  for (int k = 1; k <= kGridIntervals; ++k) {
    const double v = p(static_cast<double>(k) / kGridIntervals);
    if (v < best_v) {
      best_v = v;
      best_k = k;
    }
  }
  SplitOptimum best{static_cast<double>(best_k) / kGridIntervals, best_v};
  const double lo = static_cast<double>(std::max(best_k - 1, 0)) / kGridIntervals;
  const double hi = static_cast<double>(std::min(best_k + 1, kGridIntervals)) / kGridIntervals;
  const auto [t, v] = golden_section_minimize(p, lo, hi, 1e-12);
  if (v < best.perimeter) best = {t, v};
  for (double edge : {lo, hi}) {
    const double ve = p(edge);
    if (ve < best.perimeter) best = {edge, ve};
  }
  return best;
}

namespace {

OracleResult evaluate(const Density& d, std::span<const double> masses, std::vector<Layout> candidates,
                      const OracleOptions& options) {
  if (candidates.empty()) throw PreconditionError("oracle: no candidate layouts");
  std::vector<double> fractions(candidates.size(), 0.0);
  const auto values = parallel_values(candidates.size(), options.workers, [&](std::size_t i) {
    if (!candidates[i].split) return closed_form_perimeter(d, masses, candidates[i]);
    const SplitOptimum opt = optimize_split_fraction(d, masses, candidates[i]);
    fractions[i] = opt.fraction;
    return opt.perimeter;
  });
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (candidates[i].split) candidates[i].split->fraction = fractions[i];

  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] < values[best]) best = i;
  double second = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i)
    if (i != best) second = std::min(second, values[i]);

  OracleResult result;
  result.best_layout = candidates[best];
  result.best_perimeter = values[best];
  result.gap_to_second = std::isfinite(second) ? second - values[best] : 0.0;
  result.evaluated = candidates.size();
  const double cutoff = values[best] + options.tol * std::max(values[best], 1e-300);
  result.ties = static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [&](double v) { return v <= cutoff; }));
  return result;
}

}  // namespace

OracleResult brute_force_min(const Density& d, std::span<const double> masses, const OracleOptions& options) {
  check_masses(masses);
  const int n = static_cast<int>(masses.size());
  if (options.allow_split && options.shape) throw PreconditionError("oracle: shape filter and split mode are exclusive");
  std::vector<Layout> candidates = enumerate_single_interval_layouts(n, options.mode, options.shape);
  if (options.allow_split) {
    auto splits = enumerate_split_structures(n, options.paranoid);
    candidates.insert(candidates.end(), std::make_move_iterator(splits.begin()), std::make_move_iterator(splits.end()));
  }
  return evaluate(d, masses, std::move(candidates), options);
}

OracleResult best_split_candidate(const Density& d, std::span<const double> masses, const OracleOptions& options) {
  check_masses(masses);
  return evaluate(d, masses, enumerate_split_structures(static_cast<int>(masses.size()), options.paranoid), options);
}

Layout alternating_framework_layout(Shape shape) {
  if (shape.left < 0 || shape.right < 0) throw PreconditionError("framework: negative shape");
  Layout layout;
  const bool right_first = shape.right >= shape.left;
  auto& first = right_first ? layout.right : layout.left;
  auto& other = right_first ? layout.left : layout.right;
  const int first_count = right_first ? shape.right : shape.left;
  const int other_count = right_first ? shape.left : shape.right;
  for (int rank = 0; rank < shape.left + shape.right; ++rank) {
    const bool to_first = static_cast<int>(other.size()) == other_count ||
                          (rank % 2 == 0 && static_cast<int>(first.size()) < first_count);
    (to_first ? first : other).emplace_back(rank);
  }
  return layout;
}

FrameworkResult verify_framework(const Density& d, std::span<const double> masses, Shape shape, double tol) {
  const int k = static_cast<int>(masses.size());
  if (k < 4 || k > 6) throw PreconditionError("verify_framework: needs 4, 5 or 6 masses");
  if (shape.left + shape.right != k) throw PreconditionError("verify_framework: shape does not match the mass count");
  OracleOptions options;
  options.mode = EnumerationMode::FullPermutation;
  options.shape = shape;
  options.tol = tol;
  FrameworkResult r;
  r.oracle = brute_force_min(d, masses, options);
  r.alternating = alternating_framework_layout(shape);
  r.alternating_perimeter = closed_form_perimeter(d, masses, r.alternating);
  r.alternating_is_min = r.alternating_perimeter <= r.oracle.best_perimeter * (1.0 + tol);
  return r;
}

AlternatingCheck check_alternating(const Density& d, std::span<const double> masses, double tol) {
  OracleOptions options;
  options.tol = tol;
  const OracleResult best = brute_force_min(d, masses, options);
  AlternatingCheck c;
  c.best_perimeter = best.best_perimeter;
  c.alternating_perimeter = closed_form_perimeter(d, masses, alternating_layout(masses));
  c.excess = (c.alternating_perimeter - c.best_perimeter) / c.best_perimeter;
  c.counterexample = c.excess > tol;
  c.tied = best.ties > 1;
  return c;
}

ConjectureReport conjecture_scan(const Density& d, int n, int trials, std::uint64_t seed, double tol) {
  if (n < 5 || n > 12) throw PreconditionError("conjecture_scan: needs 5 <= n <= 12");
  if (trials < 0) throw PreconditionError("conjecture_scan: negative trial count");
  ConjectureReport report{n, trials, seed, {}, 0, 0.0};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    const auto masses = random_masses(n, rng);
    const AlternatingCheck c = check_alternating(d, masses, tol);
    report.max_gap = std::max(report.max_gap, c.excess);
    if (c.tied) ++report.tied_trials;
    if (c.counterexample) report.counterexamples.push_back(masses);
  }
  return report;
}

std::vector<double> random_masses(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.1, 10.0);
  std::vector<double> m(static_cast<std::size_t>(n));
  for (double& v : m) v = dist(rng);
  std::sort(m.begin(), m.end());
  return m;
}

}  // namespace bubbles
