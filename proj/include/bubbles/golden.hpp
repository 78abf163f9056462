#pragma once

#include <cmath>
#include <utility>

namespace bubbles {

/// Golden-section search for a minimum of `f` on [lo, hi], stopping once the
/// bracket is narrower than `width`. Returns (argmin, value). Assumes `f`
/// is unimodal on the bracket.
template <class F>
std::pair<double, double> golden_section_minimize(F&& f, double lo, double hi, double width = 1e-12) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > width) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
    if (c >= d) break;  // bracket collapsed to rounding
  }
  const double mid = 0.5 * (lo + hi);
  const double fm = f(mid);
  return {mid, fm};
}

}  // namespace bubbles
