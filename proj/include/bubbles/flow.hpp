#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

#include "bubbles/configuration.hpp"
#include "bubbles/density.hpp"

namespace bubbles {

/// Endpoints in `moving` travel at speed direction/f(x), so every endpoint
/// transports mass at unit rate. The flow stops when a cell touching a
/// moving endpoint gets shorter than `min_length`, or at `max_time`.
struct FlowSpec {
  Configuration config;
  std::vector<std::size_t> moving;
  std::vector<int> directions;  ///< +1 right, -1 left; one per moving index
  double min_length = 1e-9;
  double max_time = std::numeric_limits<double>::infinity();
};

enum class StopReason { MaxTime, Vanished, ReachedOrigin, StepUnderflow, NothingMoves };

struct FlowTrace {
  std::vector<double> times;
  std::vector<std::vector<double>> breakpoints;
  std::vector<double> perimeters;
  std::vector<std::vector<double>> region_masses;
  StopReason stop = StopReason::MaxTime;

  std::size_t size() const { return times.size(); }
};

/// Throws PreconditionError when a moving endpoint sits at the origin, an
/// index repeats, or the directions do not conserve every region's mass.
void validate(const FlowSpec& spec);

/// dP/dt = sum of direction * (log f)'(x) over the moving endpoints.
double first_variation_rate(const Density& d, const Configuration& c, const std::vector<std::size_t>& moving,
                            const std::vector<int>& directions);
double first_variation_rate(const Density& d, const Configuration& c, const std::vector<std::size_t>& moving);

/// d2P/dt2 = sum of -1/|x|^3 over the moving endpoints (independent of direction).
double second_variation_rate(const Configuration& c, const std::vector<std::size_t>& moving);

/// Classical RK4 on x' = direction/|x| with a step capped so nothing crosses
/// a neighbour or the origin. The initial state is the first row.
FlowTrace integrate_flow(const Density& d, const FlowSpec& spec, double dt_max);

/// Last trace row as a configuration, with cells shorter than min_length removed.
Configuration final_configuration(const FlowSpec& spec, const FlowTrace& trace);

// Flows whose end states are the closed-form moves of the same names.
FlowSpec siphon_flow(const Density& d, const Configuration& c, RegionId a, RegionId b);
FlowSpec nested_slide_flow(const Density& d, const Configuration& c, RegionId a, RegionId b);
FlowSpec origin_slide_flow(const Density& d, const Configuration& c);

/// Header `t,perimeter,x_0..x_m,mass_0..mass_{n-1}`, 17 significant digits.
void write_trace_csv(std::ostream& os, const FlowTrace& trace, int region_count);

}  // namespace bubbles
