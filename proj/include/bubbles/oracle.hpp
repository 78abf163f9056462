#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "bubbles/density.hpp"
#include "bubbles/layout.hpp"

namespace bubbles {

enum class EnumerationMode {
  Pruned,           ///< each side ascending by mass: 2^(n-1) layouts up to reflection
  FullPermutation,  ///< every ordered split of the regions into two sequences
};

/// Cell counts (left, right).
struct Shape {
  int left = 0;
  int right = 0;

  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Single-interval layouts for regions 0..n-1, where region ids are ranks
/// by mass. Mirror images are listed once.
std::vector<Layout> enumerate_single_interval_layouts(int n, EnumerationMode mode,
                                                      std::optional<Shape> shape = std::nullopt);

/// Layouts with one region split across the origin (fraction left at 0.5).
/// The default set keeps the split region off the outermost slot on both
/// sides and off the origin on at least one side; `paranoid` keeps all.
std::vector<Layout> enumerate_split_structures(int n, bool paranoid = false);

struct OracleOptions {
  EnumerationMode mode = EnumerationMode::Pruned;
  std::optional<Shape> shape;
  bool allow_split = false;
  bool paranoid = false;
  unsigned workers = 0;  ///< 0: hardware concurrency
  double tol = 1e-9;
};

struct OracleResult {
  Layout best_layout;
  double best_perimeter = 0.0;
  double gap_to_second = 0.0;
  std::size_t evaluated = 0;
  std::size_t ties = 0;  ///< candidates within tol (relative) of the best, including it
};

/// Exhaustive minimum over layouts; masses must be sorted ascending and
/// nonnegative. With `allow_split` each split structure contributes its
/// optimised split fraction.
OracleResult brute_force_min(const Density& d, std::span<const double> masses, const OracleOptions& options = {});

/// Minimum over the split structures alone; `mode` and `shape` are ignored.
OracleResult best_split_candidate(const Density& d, std::span<const double> masses, const OracleOptions& options = {});

/// Perimeter of a split structure with `fraction` of the split mass on the
/// negative side. Continuous in the fraction on [0, 1].
double split_perimeter(const Density& d, std::span<const double> masses, const Layout& structure, double fraction);

struct SplitOptimum {
  double fraction = 0.0;
  double perimeter = 0.0;
};

/// 512-interval grid followed by golden-section refinement to width 1e-12.
SplitOptimum optimize_split_fraction(const Density& d, std::span<const double> masses, const Layout& structure);

/// Rank-alternating layout for a framework shape: the longer side (the
/// right side on a tie) takes ranks 0, 2, 4, the other takes 1, 3, 5.
Layout alternating_framework_layout(Shape shape);

struct FrameworkResult {
  OracleResult oracle;
  Layout alternating;
  double alternating_perimeter = 0.0;
  bool alternating_is_min = false;
};

/// Exhausts every ordering with the given shape (k = 4, 5 or 6 masses).
FrameworkResult verify_framework(const Density& d, std::span<const double> masses, Shape shape, double tol = 1e-9);

struct AlternatingCheck {
  double best_perimeter = 0.0;
  double alternating_perimeter = 0.0;
  double excess = 0.0;  ///< (alternating - best) / best
  bool counterexample = false;
  bool tied = false;  ///< more than one layout attains the minimum
};

/// Compares the pruned-enumeration minimum with the alternating layout.
AlternatingCheck check_alternating(const Density& d, std::span<const double> masses, double tol = 1e-9);

struct ConjectureReport {
  int n = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> counterexamples;
  int tied_trials = 0;
  double max_gap = 0.0;  ///< largest relative excess of the alternating layout
};

ConjectureReport conjecture_scan(const Density& d, int n, int trials, std::uint64_t seed, double tol = 1e-9);

/// n masses uniform on [0.1, 10], sorted ascending.
std::vector<double> random_masses(int n, std::mt19937_64& rng);

}  // namespace bubbles
