#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "bubbles/flow.hpp"
#include "bubbles/moves.hpp"
#include "support/generators.hpp"

using namespace bubbles;
using bubbles::testing::Rng;

namespace {
const Density d;
const Cell A = RegionId(0);
const Cell B = RegionId(1);
const Cell C = RegionId(2);

// Compares a trace end state with a closed-form move on merged per-region intervals.
void check_matches(const FlowTrace& trace, const FlowSpec& spec, const MoveReport& closed, double tol) {
  const Configuration end = final_configuration(spec, trace);
  const auto got = testing::region_intervals(end, 1e-6);
  const auto want = testing::region_intervals(closed.after, 1e-6);
  REQUIRE(got.size() == want.size());
  for (std::size_t r = 0; r < got.size(); ++r) {
    REQUIRE(got[r].size() == want[r].size());
    for (std::size_t k = 0; k < got[r].size(); ++k) {
      CHECK(std::abs(got[r][k].first - want[r][k].first) <= tol);
      CHECK(std::abs(got[r][k].second - want[r][k].second) <= tol);
    }
  }
}
}  // namespace

TEST_CASE("first_variation_rate examples") {
  CHECK(first_variation_rate(d, Configuration({0, 1, 2}, {A, B}, 2), {1, 2}) == 1.5);
  CHECK(first_variation_rate(d, Configuration({-1, 0, 1}, {A, B}, 2), {0, 2}) == 0.0);
  CHECK(first_variation_rate(d, Configuration({-2, 0, 1}, {A, B}, 2), {0, 2}) == 0.5);
  CHECK_THROWS_AS(first_variation_rate(d, Configuration({0, 1}, {A}, 1), {0}), PreconditionError);
}

TEST_CASE("second_variation_rate examples") {
  CHECK(second_variation_rate(Configuration({0, 1, 2}, {A, B}, 2), {1}) == -1.0);
  CHECK(second_variation_rate(Configuration({0, 1, 2}, {A, B}, 2), {1, 2}) == -1.125);
  CHECK(second_variation_rate(Configuration({0, 1, 2}, {A, B}, 2), {}) == 0.0);
}

TEST_CASE("spec validation") {
  const Configuration c({0, 1, 2}, {A, B}, 2);
  CHECK_THROWS_AS(validate(FlowSpec{c, {0, 1}, {1, 1}}), PreconditionError);  // origin endpoint
  CHECK_THROWS_AS(validate(FlowSpec{c, {1}, {1}}), PreconditionError);        // A gains, B loses
  CHECK_THROWS_AS(validate(FlowSpec{c, {1, 1}, {1, 1}}), PreconditionError);
  CHECK_THROWS_AS(validate(FlowSpec{c, {1, 2}, {1, 2}}), PreconditionError);
  CHECK_NOTHROW(validate(FlowSpec{Configuration({1, 2}, {A}, 1), {0, 1}, {1, 1}}));
}

TEST_CASE("empty moving set gives a one-row trace") {
  const FlowTrace t = integrate_flow(d, FlowSpec{Configuration({0, 1}, {A}, 1), {}, {}}, 1e-3);
  CHECK(t.size() == 1);
  CHECK(t.stop == StopReason::NothingMoves);
}

TEST_CASE("single interval translated right matches the analytic solution") {
  FlowSpec spec{Configuration({1, 2}, {A}, 1), {0, 1}, {1, 1}};
  spec.max_time = 10.0;
  const FlowTrace t = integrate_flow(d, spec, 1e-2);
  CHECK(t.stop == StopReason::MaxTime);
  for (std::size_t row = 0; row < t.size(); ++row) {
    const double time = t.times[row];
    CHECK(std::abs(t.breakpoints[row][0] - std::sqrt(1 + 2 * time)) <= 1e-8);
    CHECK(std::abs(t.breakpoints[row][1] - std::sqrt(4 + 2 * time)) <= 1e-8);
    CHECK(relative_error(t.region_masses[row][0], 1.5) <= 1e-9);
  }
  CHECK(t.times.back() == doctest::Approx(10.0));
}

TEST_CASE("siphon flow ends at the closed-form siphon state") {
  Rng rng(41);
  for (int i = 0; i < 10; ++i) {
    const auto c = testing::random_alternating_input(rng);
    const FlowSpec spec = siphon_flow(d, c, RegionId(0), RegionId(1));
    const FlowTrace t = integrate_flow(d, spec, 1e-2);
    CHECK(t.stop == StopReason::Vanished);
    for (std::size_t row = 1; row < t.size(); ++row) CHECK(t.perimeters[row] <= t.perimeters[row - 1] + 1e-12);
    check_matches(t, spec, siphon_alternating(d, c, RegionId(0), RegionId(1)), 1e-6);
  }
}

TEST_CASE("origin slide with negative rate decreases perimeter strictly") {
  // Left heavy, so the rate of a rightward slide is negative.
  const Configuration c({-3, -2, -0.5, 1}, {C, B, A}, 3);
  const FlowSpec spec = origin_slide_flow(d, c);
  CHECK(first_variation_rate(d, spec.config, spec.moving, spec.directions) < 0.0);
  const FlowTrace t = integrate_flow(d, spec, 1e-2);
  CHECK(t.stop == StopReason::ReachedOrigin);
  for (std::size_t row = 1; row < t.size(); ++row) CHECK(t.perimeters[row] < t.perimeters[row - 1]);
  check_matches(t, spec, slide_origin_to_endpoint(d, c), 1e-6);
}

TEST_CASE("trace CSV layout") {
  FlowSpec spec{Configuration({1, 2}, {A}, 1), {0, 1}, {1, 1}};
  spec.max_time = 0.01;
  const FlowTrace t = integrate_flow(d, spec, 1e-2);
  std::ostringstream os;
  write_trace_csv(os, t, 1);
  CHECK(os.str().rfind("t,perimeter,x_0,x_1,mass_0\n0,3,1,2,1.5\n", 0) == 0);
}

TEST_CASE("nested slide flow ends at the closed-form state with lower perimeter") {
  Rng rng(42);
  for (int i = 0; i < 10; ++i) {
    const auto c = testing::random_nested_input(rng);
    const FlowSpec spec = nested_slide_flow(d, c, RegionId(0), RegionId(1));
    const FlowTrace t = integrate_flow(d, spec, 1e-2);
    CHECK((t.stop == StopReason::Vanished || t.stop == StopReason::ReachedOrigin));
    const MoveReport closed = slide_nested_origin(d, c, RegionId(0), RegionId(1));
    check_matches(t, spec, closed, 1e-6);
    CHECK(total_perimeter(d, final_configuration(spec, t)) < total_perimeter(d, spec.config));
  }
}

TEST_CASE("late arrival at the origin finishes with an exact last step") {
  // B- = [-2, 0] (mass 2) drains into A- while A+ = [0, 3] feeds B+; B- empties at t = 2.
  FlowSpec spec{Configuration({-3, -2, 0, 3, 5}, {A, B, A, B}, 2), {1, 3}, {1, -1}};
  spec.max_time = 10.0;
  const FlowTrace t = integrate_flow(d, spec, 1e-2);
  CHECK(t.stop == StopReason::Vanished);
  CHECK(t.breakpoints.back()[1] == 0.0);
  CHECK(t.times.back() == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(t.breakpoints.back()[3] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
  const Configuration end = final_configuration(spec, t);
  CHECK(end.cells_of(RegionId(1)).size() == 1);
  CHECK(relative_error(region_mass(d, end, RegionId(1)), 2.0 + 8.0) <= 1e-9);
}
