#include "bubbles/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include "bubbles/moves.hpp"

namespace bubbles {

namespace {

// Step cap relative to the squared distance of the closest moving endpoint
// to the origin; speeds scale like 1/|x| there.
constexpr double kStiffnessFactor = 0.005;
constexpr double kGapFactor = 0.25;
// Remaining time to the origin (relative to t) below which the last step is
// taken exactly; regular steps there would be about kStiffnessFactor times
// this and fall under the resolution of t.
constexpr double kSnapTime = 1e-12;
constexpr std::size_t kMaxSteps = 5'000'000;

Configuration normalized(const Configuration& c) { return merge_same_label(split_at_origin(c)); }

void check_not_origin(const Configuration& c, const std::vector<std::size_t>& moving) {
  for (std::size_t i : moving) {
    if (i >= c.breakpoints().size()) throw PreconditionError("flow: moving index out of range");
    if (c.breakpoints()[i] == 0.0) throw PreconditionError("flow: a moving endpoint sits at the origin");
  }
}

}  // namespace

void validate(const FlowSpec& spec) {
  const Configuration& c = spec.config;
  check_not_origin(c, spec.moving);
  if (spec.directions.size() != spec.moving.size()) throw PreconditionError("flow: one direction per moving endpoint");
  if (std::set<std::size_t>(spec.moving.begin(), spec.moving.end()).size() != spec.moving.size())
    throw PreconditionError("flow: repeated moving index");
  std::vector<int> dir(c.breakpoints().size(), 0);
  for (std::size_t j = 0; j < spec.moving.size(); ++j) {
    if (spec.directions[j] != 1 && spec.directions[j] != -1) throw PreconditionError("flow: direction must be +1 or -1");
    dir[spec.moving[j]] = spec.directions[j];
  }
  // Each moving endpoint carries unit mass flux; every region must net zero.
  std::vector<int> net(static_cast<std::size_t>(c.region_count()), 0);
  for (std::size_t k = 0; k < c.cell_count(); ++k)
    if (const Cell& cell = c.cells()[k]) net[static_cast<std::size_t>(cell->index)] += dir[k + 1] - dir[k];
  for (int v : net)
    if (v != 0) throw PreconditionError("flow: directions do not conserve every region's mass");
  if (!(spec.min_length > 0.0)) throw PreconditionError("flow: min_length must be positive");
}

double first_variation_rate(const Density& d, const Configuration& c, const std::vector<std::size_t>& moving,
                            const std::vector<int>& directions) {
  check_not_origin(c, moving);
  if (directions.size() != moving.size()) throw PreconditionError("flow: one direction per moving endpoint");
  double rate = 0.0;
  for (std::size_t j = 0; j < moving.size(); ++j) rate += directions[j] * d.log_derivative(c.breakpoints()[moving[j]]);
  return rate;
}

double first_variation_rate(const Density& d, const Configuration& c, const std::vector<std::size_t>& moving) {
  return first_variation_rate(d, c, moving, std::vector<int>(moving.size(), 1));
}

double second_variation_rate(const Configuration& c, const std::vector<std::size_t>& moving) {
  check_not_origin(c, moving);
  double rate = 0.0;
  for (std::size_t i : moving) rate -= 1.0 / std::pow(std::abs(c.breakpoints()[i]), 3);
  return rate;
}

FlowTrace integrate_flow(const Density& d, const FlowSpec& spec, double dt_max) {
  validate(spec);
  if (!(dt_max > 0.0)) throw PreconditionError("flow: dt_max must be positive");
  const Configuration& c = spec.config;
  std::vector<double> x = c.breakpoints();
  const std::size_t m = x.size();

  std::vector<int> dir(m, 0);
  for (std::size_t j = 0; j < spec.moving.size(); ++j) dir[spec.moving[j]] = spec.directions[j];

  FlowTrace trace;
  auto record = [&](double t) {
    double perimeter = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (c.is_boundary(i)) perimeter += d.value(x[i]);
    std::vector<double> masses(static_cast<std::size_t>(c.region_count()), 0.0);
    for (std::size_t k = 0; k < c.cell_count(); ++k)
      if (const Cell& cell = c.cells()[k]) masses[static_cast<std::size_t>(cell->index)] += d.mass_between(x[k], x[k + 1]);
    trace.times.push_back(t);
    trace.breakpoints.push_back(x);
    trace.perimeters.push_back(perimeter);
    trace.region_masses.push_back(std::move(masses));
  };

  double t = 0.0;
  record(t);
  if (spec.moving.empty()) {
    trace.stop = StopReason::NothingMoves;
    return trace;
  }

  auto speed = [&](std::size_t i, double xi) { return dir[i] / d.value(xi); };

  for (std::size_t step = 0;; ++step) {
    if (t >= spec.max_time) {
      trace.stop = StopReason::MaxTime;
      return trace;
    }
    if (step >= kMaxSteps) {
      trace.stop = StopReason::StepUnderflow;
      return trace;
    }
    double dt = std::min(dt_max, spec.max_time - t);
    double x_min = std::numeric_limits<double>::infinity();
    // Mass moves at unit rate, so an inbound breakpoint reaches 0 after |F(x)|.
    double arrival = std::numeric_limits<double>::infinity();
    std::size_t arriving = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (!dir[i]) continue;
      x_min = std::min(x_min, std::abs(x[i]));
      if (dir[i] * x[i] < 0.0) {
        dt = std::min(dt, kGapFactor * x[i] * x[i]);
        if (std::abs(d.cumulative(x[i])) < arrival) {
          arrival = std::abs(d.cumulative(x[i]));
          arriving = i;
        }
      }
    }
    dt = std::min(dt, kStiffnessFactor * x_min * x_min);
    for (std::size_t i = 0; i + 1 < m; ++i) {
      const double vi = dir[i] ? speed(i, x[i]) : 0.0;
      const double vj = dir[i + 1] ? speed(i + 1, x[i + 1]) : 0.0;
      if (vi > vj) dt = std::min(dt, kGapFactor * (x[i + 1] - x[i]) / (vi - vj));
    }
    // Near the origin the step caps drop below the resolution of t.
    const bool snap = arrival <= kSnapTime * std::max(1.0, t) && arrival <= spec.max_time - t;
    if (snap) dt = arrival;

    std::vector<double> next;
    for (int attempt = 0;; ++attempt) {
      const bool snapping = snap && dt == arrival;
      if (!(dt > 1e-300) || (t + dt == t && !snapping) || attempt > 60) {
        trace.stop = StopReason::StepUnderflow;
        return trace;
      }
      next = x;
      bool ok = true;
      for (std::size_t i = 0; i < m && ok; ++i) {
        if (!dir[i]) continue;
        if (snapping && i == arriving) {
          next[i] = 0.0;
          continue;
        }
        const double k1 = speed(i, x[i]);
        const double k2 = speed(i, x[i] + 0.5 * dt * k1);
        const double k3 = speed(i, x[i] + 0.5 * dt * k2);
        const double k4 = speed(i, x[i] + dt * k3);
        next[i] = x[i] + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        ok = std::isfinite(next[i]) && std::signbit(next[i]) == std::signbit(x[i]) && next[i] != 0.0;
      }
      for (std::size_t i = 0; i + 1 < m && ok; ++i)
        ok = next[i] < next[i + 1] || (snapping && next[i] == 0.0 && next[i + 1] == 0.0);
      if (ok) break;
      dt *= 0.5;
    }
    x = std::move(next);
    t += dt;
    record(t);

    for (std::size_t k = 0; k + 1 < m; ++k) {
      if ((dir[k] || dir[k + 1]) && x[k + 1] - x[k] < spec.min_length) {
        // Half of a cell split at the origin collapsing only moves the origin to its end.
        const Cell& cell = c.cells()[k];
        const bool half = cell && ((k > 0 && c.cells()[k - 1] == cell) || (k + 1 < c.cell_count() && c.cells()[k + 1] == cell));
        trace.stop = half ? StopReason::ReachedOrigin : StopReason::Vanished;
        return trace;
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (dir[i] && std::abs(x[i]) < spec.min_length) {
        trace.stop = StopReason::ReachedOrigin;
        return trace;
      }
    }
  }
}

Configuration final_configuration(const FlowSpec& spec, const FlowTrace& trace) {
  if (trace.breakpoints.empty()) return spec.config;
  std::vector<double> xs = trace.breakpoints.back();
  std::vector<Cell> cells = spec.config.cells();
  for (std::size_t k = 0; k < cells.size();) {
    if (xs[k + 1] - xs[k] < spec.min_length) {
      // Keep the endpoint sitting on the origin, if any.
      xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(xs[k + 1] == 0.0 ? k : k + 1));
      cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      ++k;
    }
  }
  if (cells.empty()) xs.clear();
  return merge_same_label(Configuration(std::move(xs), std::move(cells), spec.config.region_count()));
}

FlowSpec siphon_flow(const Density& d, const Configuration& c, RegionId a, RegionId b) {
  const Configuration s = normalized(c);
  if (detect_pattern(s, a, b) != PatternKind::Alternating) throw PreconditionError("siphon_flow: regions are not alternating");
  auto ca = s.cells_of(a);
  auto cb = s.cells_of(b);
  if (cb[0] < ca[0]) std::swap(ca, cb);
  FlowSpec spec{s, {}, {}};
  for (std::size_t i = ca[0] + 1; i <= cb[0]; ++i) {
    spec.moving.push_back(i);
    spec.directions.push_back(1);
  }
  for (std::size_t i = ca[1] + 1; i <= cb[1]; ++i) {
    spec.moving.push_back(i);
    spec.directions.push_back(-1);
  }
  const double transfer =
      std::min(d.mass_between(s.lo(cb[0]), s.hi(cb[0])), d.mass_between(s.lo(ca[1]), s.hi(ca[1])));
  spec.max_time = 2.0 * transfer;
  return spec;
}

FlowSpec nested_slide_flow(const Density& d, const Configuration& c, RegionId a, RegionId b) {
  const Configuration s = normalized(c);
  const auto o = s.origin_index();
  if (!o || *o < 2 || *o + 2 >= s.breakpoints().size()) throw PreconditionError("nested_slide_flow: bad topology");
  const std::size_t k = *o;
  const auto& cells = s.cells();
  const bool b_inside = cells[k - 1] == b && cells[k] == b && cells[k - 2] == a && cells[k + 1] == a;
  const bool a_inside = cells[k - 1] == a && cells[k] == a && cells[k - 2] == b && cells[k + 1] == b;
  if (!b_inside && !a_inside) throw PreconditionError("nested_slide_flow: bad topology");
  FlowSpec spec{s, {k - 1, k + 1}, {1, 1}};
  const double transfer = std::min(d.mass_between(s.lo(k - 1), s.hi(k - 1)), d.mass_between(s.lo(k + 1), s.hi(k + 1)));
  spec.max_time = 2.0 * transfer;
  return spec;
}

FlowSpec origin_slide_flow(const Density& d, const Configuration& c) {
  if (!origin_is_interior(c)) throw PreconditionError("origin_slide_flow: origin is not interior to a cell");
  const Configuration s = normalized(c);
  const std::size_t o = *s.origin_index();
  std::vector<std::size_t> moving;
  for (std::size_t i = 0; i < s.breakpoints().size(); ++i)
    if (i != o) moving.push_back(i);
  std::vector<std::size_t> boundary;
  for (std::size_t i : moving)
    if (s.is_boundary(i)) boundary.push_back(i);
  const bool rightward = first_variation_rate(d, s, boundary) <= 0.0;
  FlowSpec spec{s, moving, std::vector<int>(moving.size(), rightward ? 1 : -1)};
  const std::size_t vanishing = rightward ? o - 1 : o;
  spec.max_time = 2.0 * d.mass_between(s.lo(vanishing), s.hi(vanishing));
  return spec;
}

void write_trace_csv(std::ostream& os, const FlowTrace& trace, int region_count) {
  const std::size_t m = trace.breakpoints.empty() ? 0 : trace.breakpoints.front().size();
  os << "t,perimeter";
  for (std::size_t i = 0; i < m; ++i) os << ",x_" << i;
  for (int r = 0; r < region_count; ++r) os << ",mass_" << r;
  os << '\n';
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
  };
  for (std::size_t row = 0; row < trace.size(); ++row) {
    put(trace.times[row]);
    os << ',';
    put(trace.perimeters[row]);
    for (double v : trace.breakpoints[row]) {
      os << ',';
      put(v);
    }
    for (double v : trace.region_masses[row]) {
      os << ',';
      put(v);
    }
    os << '\n';
  }
}

}  // namespace bubbles
