#include <catch2/catch_amalgamated.hpp>

#include "cvgeom/bodyspec.hpp"
#include "cvgeom/reporting.hpp"

using namespace cvgeom;
using Catch::Approx;

TEST_CASE("relaxed json accepts bare identifiers", "[cli]") {
  CHECK(lenient_json_text("{type: ball, n: 3}") == R"({"type": "ball", "n": 3})");
  CHECK(lenient_json_text(R"({"a": true, b: null})") == R"({"a": true, "b": null})");
  CHECK(lenient_json_text("{p: 1.5e-3}") == R"({"p": 1.5e-3})");
  auto j = parse_relaxed("{type: lp_ball, n: 4, p: 1.5}");
  CHECK(j["type"] == "lp_ball");
  CHECK(j["p"] == 1.5);
}

TEST_CASE("body specs build the documented variants", "[cli]") {
  CHECK(parse_body("{type: ball, n: 3, r: 2}").radial(unit_axis(3, 0)) == Approx(2.0));
  CHECK(parse_body("{type: lp_ball, n: 4, p: 1.5}").dim() == 4);
  CHECK(parse_body("{type: lp_ball, n: 3, p: inf}").radial(unit_axis(3, 1)) == Approx(1.0));
  CHECK(parse_body("{type: cube, n: 3, half: 1}").support(unit_axis(3, 0)) == Approx(1.0));
  auto z = parse_body("{type: zonotope, n: 3, generators: [[1,0,0],[0,1,0],[0,0,1]]}");
  CHECK(z.support(normalized(Vec{1, 1, 1})) == Approx(std::sqrt(3.0)));
  auto zb = parse_body("{type: zonal_ball, n: 5, r0: 1.0, coeffs: {6: 0.09}}");
  CHECK(zb.dim() == 5);
  CHECK(zb.zonal_axis().has_value());
  auto d = parse_body("{type: dilate, beta: 2, body: {type: ball, n: 3}}");
  CHECK(d.radial(unit_axis(3, 0)) == Approx(2.0));
  auto rs = parse_body(
      "{type: radial_sum, left: {type: ball, n: 3}, right: {type: ball, n: 3, r: 0.5}}");
  CHECK(rs.radial(unit_axis(3, 2)) == Approx(1.5));
  auto poly = parse_body(
      "{type: polytope, n: 2, facets: [{normal: [1, 0], offset: 1}, {normal: [0, 1], "
      "offset: 1}]}");
  CHECK(poly.radial(normalized(Vec{1, 1})) == Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(parse_body("{type: flying_saucer, n: 3}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_body("{n: 3}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_body("{type: lp_ball, n: 3}"), std::invalid_argument);
}

TEST_CASE("density specs", "[cli]") {
  auto g = parse_density("{type: gaussian, sigma: 1}", 3);
  CHECK(g.at_radius(0.0) == Approx(1.0));
  auto s = parse_density("{type: shell, r0: 0.9, width: 0.05}", 3);
  CHECK(s.at_radius(0.9) == Approx(1.0));
  CHECK(s.radial_breakpoints().size() == 2);
  auto c = parse_density("{type: constant, c: 2}", 4);
  CHECK(c(Vec{0.1, 0.2, 0.3, 0.4}) == Approx(2.0));
  CHECK_THROWS_AS(parse_density("{type: gaussian, sigma: -1}", 3), std::domain_error);
}

TEST_CASE("number formatting is shortest round-trip", "[cli]") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  const double v = 3117.0909130880779;
  CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("slack histogram is two-column text", "[cli]") {
  std::vector<CheckReport> reps(5);
  for (int i = 0; i < 5; ++i) reps[static_cast<std::size_t>(i)].slack = i * 0.1;
  const std::string h = slack_histogram(reps, 4);
  int lines = 0;
  for (char c : h)
    if (c == '\n') ++lines;
  CHECK(lines == 4);
  // every line is "number number"
  std::istringstream is(h);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    double center;
    long count;
    CHECK((ls >> center >> count));
  }
}
