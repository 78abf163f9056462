#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "bubbles/layout.hpp"
#include "support/generators.hpp"

using namespace bubbles;
using bubbles::testing::Rng;

namespace {
const Density d;
std::vector<RegionId> ids(std::initializer_list<int> v) {
  std::vector<RegionId> out;
  for (int i : v) out.emplace_back(i);
  return out;
}
}  // namespace

TEST_CASE("realize examples") {
  {
    const std::vector<double> m{0.5, 1.5};
    const auto c = realize(d, Layout{{}, ids({0, 1}), {}}, m);
    CHECK(c.breakpoints() == std::vector<double>{0, 1, 2});
  }
  {
    const std::vector<double> m{1.0};
    const auto c = realize(d, Layout{ids({0}), {}, {}}, m);
    REQUIRE(c.breakpoints().size() == 2);
    CHECK(c.breakpoints()[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-15));
    CHECK(c.breakpoints()[1] == 0.0);
  }
  {
    const std::vector<double> m{0.0, 2.0};
    const auto c = realize(d, Layout{{}, ids({0, 1}), {}}, m);
    CHECK(c.cell_count() == 1);
    CHECK(c.cells_of(RegionId(0)).empty());
    CHECK(c.breakpoints() == std::vector<double>{0, 2});
  }
}

TEST_CASE("realize rejects malformed layouts") {
  const std::vector<double> m{1, 2};
  CHECK_THROWS_AS(realize(d, Layout{ids({0, 0}), ids({1}), {}}, m), PreconditionError);
  CHECK_THROWS_AS(realize(d, Layout{ids({0}), ids({0, 1}), {}}, m), PreconditionError);
  CHECK_THROWS_AS(realize(d, Layout{ids({0}), ids({0, 1}), SplitSpec{RegionId(0), 1.5}}, m), PreconditionError);
  CHECK_THROWS_AS(realize(d, Layout{{}, ids({1}), {}}, m), PreconditionError);
  CHECK_THROWS_AS(realize(d, Layout{{}, ids({2}), {}}, m), PreconditionError);
}

TEST_CASE("split layouts place the fraction on the negative side") {
  const std::vector<double> m{2.0, 1.0};
  const Layout l{ids({0}), ids({1, 0}), SplitSpec{RegionId(0), 0.25}};
  const auto c = realize(d, l, m);
  CHECK(is_condensed(c));
  CHECK(c.breakpoints()[0] == doctest::Approx(-1.0).epsilon(1e-15));  // mass 0.5 on the left
  CHECK(region_mass(d, c, RegionId(0)) == doctest::Approx(2.0).epsilon(1e-14));
  const Layout back = layout_of(d, c);
  REQUIRE(back.split);
  CHECK(back.split->fraction == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(describe(back) == "M1* . M2 M1*");
}

TEST_CASE("canonicalize examples") {
  const std::vector<double> m{0.5, 1.0, 1.5};
  const auto a = realize(d, Layout{ids({1}), ids({0, 2}), {}}, m);
  const auto b = a.reflected();
  CHECK(canonicalize(d, a) == a);
  CHECK(canonicalize(d, b) == a);
  CHECK(canonicalize(d, canonicalize(d, b)) == canonicalize(d, b));

  const std::vector<double> eq{1.0, 1.0};
  const auto two = realize(d, Layout{ids({0}), ids({1}), {}}, eq);
  const auto canon = canonicalize(d, two);
  CHECK(canon.cells().back() == Cell(RegionId(0)));
  CHECK_THROWS_AS(canonicalize(d, Configuration({1, 2}, {RegionId(0)}, 1)), PreconditionError);
}

TEST_CASE("describe") {
  CHECK(describe(Layout{ids({1}), ids({0, 2}), {}}) == "M2 . M1 M3");
  CHECK(describe(Layout{ids({1, 3}), ids({0, 2}), {}}) == "M4 M2 . M1 M3");
  CHECK(describe(Layout{{}, ids({0}), {}}) == ". M1");
}

TEST_CASE("property: realize matches targets and the prefix formula") {
  Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = testing::uniform_int(rng, 1, 8);
    std::vector<double> m(static_cast<std::size_t>(n));
    for (double& x : m) x = std::pow(10.0, testing::uniform(rng, -3, 3));
    Layout l;
    for (int r = 0; r < n; ++r) (testing::coin(rng) ? l.left : l.right).emplace_back(r);
    std::shuffle(l.left.begin(), l.left.end(), rng);
    std::shuffle(l.right.begin(), l.right.end(), rng);
    const auto c = realize(d, l, m);
    CHECK(is_condensed(c));
    const auto got = region_masses(d, c);
    // A light cell outside heavy ones is a difference of large prefixes, so
    // its error scales with the total mass rather than its own.
    const double total = std::accumulate(m.begin(), m.end(), 0.0);
    for (std::size_t r = 0; r < m.size(); ++r) CHECK(std::abs(got[r] - m[r]) <= 1e-13 * total);

    double expected = 0.0;
    for (const auto* side : {&l.left, &l.right}) {
      double prefix = 0.0;
      for (RegionId r : *side) {
        prefix += m[static_cast<std::size_t>(r.index)];
        expected += std::sqrt(2.0 * prefix);
      }
    }
    CHECK(relative_error(total_perimeter(d, c), expected) <= 1e-12);

    const auto canon = canonicalize(d, c);
    CHECK(relative_error(total_perimeter(d, canon), total_perimeter(d, c)) <= 1e-14);
    CHECK(canonicalize(d, canon) == canon);
    CHECK(layout_of(d, c) == l);
  }
}
