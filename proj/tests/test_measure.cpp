#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bubbles/configuration.hpp"
#include "bubbles/density.hpp"
#include "support/generators.hpp"

using namespace bubbles;
using bubbles::testing::Rng;
using bubbles::testing::uniform;

namespace {
const Density d;
Configuration cfg(std::vector<double> xs, std::vector<Cell> cells, int n) {
  return Configuration(std::move(xs), std::move(cells), n);
}
const Cell R0 = RegionId(0);
const Cell R1 = RegionId(1);
const Cell R2 = RegionId(2);
const Cell gap = std::nullopt;
}  // namespace

TEST_CASE("density values and antiderivative") {
  CHECK(d.value(0.0) == 0.0);
  CHECK(d.value(-3.0) == d.value(3.0));
  CHECK(d.cumulative(2.0) == 2.0);
  CHECK(d.cumulative(-2.0) == -2.0);
  CHECK(d.inverse_cumulative(d.cumulative(-1.7)) == doctest::Approx(-1.7).epsilon(1e-15));
  CHECK(d.name() == "abs");
}

TEST_CASE("interval_mass examples") {
  CHECK(interval_mass(d, {0.0, 2.0}) == 2.0);
  CHECK(interval_mass(d, {-1.0, 1.0}) == 1.0);
  // (1.8^2 - 0.8^2) / 2 by direct arithmetic.
  CHECK(interval_mass(d, {0.8, 1.8}) == doctest::Approx((1.8 * 1.8 - 0.8 * 0.8) / 2).epsilon(1e-15));
  CHECK(interval_mass(d, {0.8, 1.8}) == doctest::Approx(1.3).epsilon(1e-15));
  CHECK_THROWS_AS(Interval(2.0, 1.0), PreconditionError);
  CHECK(Interval(-1.0, 2.5).length() == 3.5);
}

TEST_CASE("outer_endpoint examples") {
  CHECK(outer_endpoint(d, 0.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(outer_endpoint(d, 1.0, 1.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(outer_endpoint(d, 3.25, 0.0) == 3.25);
  CHECK_THROWS_AS(outer_endpoint(d, 1.0, -0.1), PreconditionError);
  CHECK_THROWS_AS(outer_endpoint(d, -1.0, 0.1), PreconditionError);
}

TEST_CASE("total_perimeter examples") {
  CHECK(total_perimeter(d, cfg({0, 1, 2}, {R0, R1}, 2)) == 3.0);
  CHECK(total_perimeter(d, cfg({0, 2}, {R0}, 1)) == 2.0);
  CHECK(total_perimeter(d, cfg({-2, -1, 0, 1}, {R0, gap, R1}, 2)) == 4.0);
  // A breakpoint inside one region is not a boundary.
  CHECK(total_perimeter(d, cfg({-1, 0, 1}, {R0, R0}, 1)) == 2.0);
}

TEST_CASE("region_mass examples") {
  const auto c = cfg({-1, 0, 1, 2}, {R0, R0, R1}, 3);
  CHECK(region_mass(d, c, RegionId(0)) == 1.0);
  CHECK(region_mass(d, c, RegionId(2)) == 0.0);
  CHECK(region_mass(d, c, RegionId(1)) == 1.5);
}

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(cfg({0, 0, 1}, {R0, R1}, 2), PreconditionError);
  CHECK_THROWS_AS(cfg({0, 1}, {R0, R1}, 2), PreconditionError);
  CHECK_THROWS_AS(cfg({0, 1}, {R2}, 2), PreconditionError);
  CHECK_THROWS_AS(cfg({0, NAN}, {R0}, 1), PreconditionError);
  CHECK_NOTHROW(cfg({}, {}, 3));
}

TEST_CASE("condensed predicate") {
  CHECK(is_condensed(cfg({-1, 0, 1}, {R0, R1}, 2)));
  CHECK(is_condensed(cfg({-1, 1}, {R0}, 1)));
  CHECK_FALSE(is_condensed(cfg({-1, 0, 1, 2}, {R0, gap, R1}, 2)));
  CHECK_FALSE(is_condensed(cfg({1, 2}, {R0}, 1)));
  CHECK_FALSE(is_condensed(cfg({-1, 0, 1, 2}, {R0, R0, R0}, 1)));
}

TEST_CASE("split_at_origin and merge_same_label") {
  const auto c = cfg({-1, 1}, {R0}, 1);
  const auto s = split_at_origin(c);
  CHECK(s.breakpoints() == std::vector<double>{-1, 0, 1});
  CHECK(merge_same_label(s) == s);
  CHECK(merge_same_label(cfg({-3, -2, -1, 1, 2}, {gap, R0, R0, gap}, 1)).breakpoints() == std::vector<double>{-2, 1});
}

TEST_CASE("property: mass additivity and reflection") {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    double a = uniform(rng, -50, 50), b = uniform(rng, -50, 50);
    if (a > b) std::swap(a, b);
    const double c = uniform(rng, a, b);
    const double whole = interval_mass(d, {a, b});
    CHECK(relative_error(whole, interval_mass(d, {a, c}) + interval_mass(d, {c, b})) <= 1e-12);
    const double lo = std::abs(uniform(rng, 0, 20)), hi = lo + uniform(rng, 0, 20);
    CHECK(interval_mass(d, {-hi, -lo}) == interval_mass(d, {lo, hi}));
  }
}

TEST_CASE("property: outer_endpoint round-trips interval_mass") {
  Rng rng(12);
  for (int i = 0; i < 5000; ++i) {
    double a = std::pow(10.0, uniform(rng, -6, 6)), b = std::pow(10.0, uniform(rng, -6, 6));
    if (a > b) std::swap(a, b);
    CHECK(relative_error(outer_endpoint(d, a, interval_mass(d, {a, b})), b) <= 1e-10);
  }
}

TEST_CASE("property: length and endpoint inequalities") {
  Rng rng(13);
  for (int i = 0; i < 2000; ++i) {
    double a1 = uniform(rng, 0, 5), a2 = uniform(rng, 0, 5);
    if (a1 > a2) std::swap(a1, a2);
    if (a1 == a2) continue;
    const double m = uniform(rng, 0.01, 10);
    const double b1 = outer_endpoint(d, a1, m), b2 = outer_endpoint(d, a2, m);
    CHECK(b1 < b2);
    CHECK(b1 - a1 > b2 - a2);
    // Corollary, tested non-strictly: a heavier second interval keeps the
    // endpoint order, a lighter one keeps the length order.
    const double heavier = outer_endpoint(d, a2, m * uniform(rng, 1.0, 3.0));
    CHECK(b1 <= heavier);
    const double lighter = outer_endpoint(d, a2, m * uniform(rng, 0.0, 1.0));
    CHECK(b1 - a1 >= lighter - a2);
  }
}

TEST_CASE("property: perimeter and masses agree with independent oracles") {
  Rng rng(14);
  for (int i = 0; i < 1000; ++i) {
    const auto c = testing::random_configuration(rng, testing::uniform_int(rng, 1, 6));
    CHECK(relative_error(total_perimeter(d, c), testing::oracle_perimeter(c)) <= 1e-14);
    const auto m = region_masses(d, c);
    const auto o = testing::oracle_masses(c);
    for (std::size_t r = 0; r < m.size(); ++r) CHECK(relative_error(m[r], o[r]) <= 1e-12);
    // Splitting and merging never change measures.
    const auto s = merge_same_label(split_at_origin(c));
    CHECK(relative_error(total_perimeter(d, s), total_perimeter(d, c)) <= 1e-14);
    const auto ms = region_masses(d, s);
    for (std::size_t r = 0; r < m.size(); ++r) CHECK(relative_error(ms[r], m[r]) <= 1e-12);
  }
}
