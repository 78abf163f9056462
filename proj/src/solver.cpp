#include "bubbles/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bubbles {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Theorem1_2: return "Theorem1_2";
    case Provenance::Theorem3: return "Theorem3";
    case Provenance::Theorem4: return "Theorem4";
    case Provenance::ConjecturedAlternating: return "ConjecturedAlternating";
  }
  return "unknown";
}

Layout alternating_layout(std::span<const double> masses) {
  std::vector<int> order(masses.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return masses[static_cast<std::size_t>(a)] < masses[static_cast<std::size_t>(b)];
  });
  Layout layout;
  for (std::size_t rank = 0; rank < order.size(); ++rank)
    (rank % 2 == 0 ? layout.right : layout.left).emplace_back(order[rank]);
  return layout;
}

Solution solve(const Density& d, std::span<const double> masses) {
  if (masses.empty()) throw PreconditionError("solve: need at least one mass");
  for (double m : masses)
    if (!(m > 0.0) || !std::isfinite(m) || m > 1e12) throw PreconditionError("solve: masses must be positive and <= 1e12");

  Solution s;
  s.masses.assign(masses.begin(), masses.end());
  s.layout = alternating_layout(masses);
  s.config = realize(d, s.layout, masses);
  s.perimeter = total_perimeter(d, s.config);
  switch (masses.size()) {
    case 1:
    case 2: s.provenance = Provenance::Theorem1_2; break;
    case 3: s.provenance = Provenance::Theorem3; break;
    case 4: s.provenance = Provenance::Theorem4; break;
    default: s.provenance = Provenance::ConjecturedAlternating;
  }
  return s;
}

double closed_form_perimeter(const Density& d, std::span<const double> masses, const Layout& layout) {
  if (layout.split) throw PreconditionError("closed_form_perimeter: split layouts are handled by the oracle");
  validate_layout(layout, static_cast<int>(masses.size()));
  double total = 0.0;
  for (const auto* side : {&layout.left, &layout.right}) {
    double prefix = 0.0;
    for (RegionId r : *side) {
      prefix += masses[static_cast<std::size_t>(r.index)];
      total += d.value(d.inverse_cumulative(prefix));
    }
  }
  return total;
}

}  // namespace bubbles
