#pragma once

#include <span>
#include <string>
#include <vector>

#include "bubbles/configuration.hpp"
#include "bubbles/density.hpp"
#include "bubbles/layout.hpp"

namespace bubbles {

/// Where an optimal layout comes from: a proved theorem for n <= 4, the
/// alternating conjecture beyond.
enum class Provenance { Theorem1_2, Theorem3, Theorem4, ConjecturedAlternating };

std::string to_string(Provenance p);

struct Solution {
  std::vector<double> masses;  ///< as given, indexed by region id
  Layout layout;
  Configuration config;
  double perimeter = 0.0;
  Provenance provenance = Provenance::Theorem1_2;
};

/// Regions ranked by mass (stable in the original index), then dealt
/// alternately: 1st, 3rd, 5th, ... on the positive side and 2nd, 4th, ...
/// on the negative side, each side growing outward from the origin.
Layout alternating_layout(std::span<const double> masses);

/// Optimal configuration for the given masses (any order, all positive).
Solution solve(const Density& d, std::span<const double> masses);

/// Sum over both sides of f at the point enclosing each prefix of that
/// side's masses. Zero-mass entries still contribute their endpoint.
double closed_form_perimeter(const Density& d, std::span<const double> masses, const Layout& layout);

}  // namespace bubbles
