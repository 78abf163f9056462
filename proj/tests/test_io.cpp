#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <regex>

#include "bubbles/json_io.hpp"
#include "bubbles/render.hpp"
#include "support/generators.hpp"

using namespace bubbles;
using bubbles::testing::Rng;

namespace {
const Density d;

std::vector<int> rect_regions(const std::string& svg) {
  std::vector<int> out;
  const std::regex re("data-region=\"(\\d+)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it)
    out.push_back(std::stoi((*it)[1]));
  return out;
}
}  // namespace

TEST_CASE("configuration JSON schema") {
  const Configuration c({-std::sqrt(2.0), 0, 1, 2}, {RegionId(1), RegionId(0), RegionId(2)}, 3);
  CHECK(to_json(c) ==
        "{\"density\":\"abs\",\"n\":3,\"breakpoints\":[-1.4142135623730951,0,1,2],\"cells\":[1,0,2]}");
  CHECK(to_json(Configuration({0, 1, 2, 3}, {RegionId(0), std::nullopt, RegionId(0)}, 1)) ==
        "{\"density\":\"abs\",\"n\":1,\"breakpoints\":[0,1,2,3],\"cells\":[0,null,0]}");
}

TEST_CASE("property: configuration JSON round-trips bit-exactly") {
  Rng rng(71);
  for (int i = 0; i < 300; ++i) {
    const auto c = testing::random_configuration(rng, testing::uniform_int(rng, 1, 6));
    CHECK(parse_configuration(to_json(c)) == c);
  }
}

TEST_CASE("solution JSON embeds a parseable configuration") {
  const Solution s = solve(d, std::vector<double>{0.5, 1, 1.5});
  const std::string j = to_json(s);
  CHECK(j.find("\"provenance\":\"Theorem3\"") != std::string::npos);
  CHECK(j.find("\"description\":\"M2 . M1 M3\"") != std::string::npos);
  CHECK(parse_configuration(j) == s.config);
  CHECK(to_json(s) == j);
}

TEST_CASE("move report JSON") {
  const MoveReport r = condense(d, Configuration({0, 1, 2, 3}, {RegionId(0), std::nullopt, RegionId(0)}, 1));
  const std::string j = to_json(r);
  CHECK(j.rfind("{\"move\":\"condense\",\"before\":", 0) == 0);
  CHECK(j.find("\"strict\":false") != std::string::npos);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_configuration("not json"), PreconditionError);
  CHECK_THROWS_AS(parse_configuration("{\"n\":1,\"breakpoints\":[1,0],\"cells\":[0]}"), PreconditionError);
  CHECK_THROWS_AS(parse_configuration("{\"n\":1,\"breakpoints\":[0,1],\"cells\":[\"a\"]}"), PreconditionError);
  CHECK_THROWS_AS(parse_configuration("{\"density\":\"gauss\",\"n\":1,\"breakpoints\":[0,1],\"cells\":[0]}"),
                  PreconditionError);
  CHECK_THROWS_AS(parse_configuration("{\"breakpoints\":[0,1],\"cells\":[0]}"), PreconditionError);
  CHECK(parse_double_list("0.5, 1,1.5") == std::vector<double>{0.5, 1, 1.5});
  CHECK_THROWS_AS(parse_double_list("1,,2"), PreconditionError);
  CHECK_THROWS_AS(parse_double_list("1,x"), PreconditionError);
}

TEST_CASE("render: rects follow region order and leave gaps unfilled") {
  RenderSpec spec;
  spec.config = solve(d, std::vector<double>{1, 2, 3, 4}).config;
  spec.show_density_cone = true;
  const std::string svg = render_svg(spec);
  CHECK(rect_regions(svg) == std::vector<int>{3, 1, 0, 2});
  CHECK(svg.find("class=\"density\"") != std::string::npos);
  CHECK(render_svg(spec) == svg);

  spec.config = Configuration({-2, -1, 0, 1}, {RegionId(0), std::nullopt, RegionId(1)}, 2);
  spec.show_density_cone = false;
  CHECK(rect_regions(render_svg(spec)) == std::vector<int>{0, 1});

  spec.config = solve(d, std::vector<double>{2}).config;
  const std::string one = render_svg(spec);
  CHECK(rect_regions(one) == std::vector<int>{0});
  CHECK(one.find("data-lo=\"0\" data-hi=\"2\"") != std::string::npos);

  spec.palette = {"red"};
  spec.config = Configuration({0, 1, 2}, {RegionId(0), RegionId(1)}, 2);
  CHECK_THROWS_AS(render_svg(spec), PreconditionError);
}
