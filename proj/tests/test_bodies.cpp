#include <catch2/catch_amalgamated.hpp>

#include "cvgeom/bodies.hpp"
#include "cvgeom/functionals.hpp"
#include "oracles.hpp"

using namespace cvgeom;
using Catch::Approx;

namespace {
Vec unit3(double x, double y, double z) { return normalized(Vec{x, y, z}); }
}  // namespace

TEST_CASE("radial evaluation", "[bodies]") {
  auto b1 = make_lp_ball(3, 1.0);
  CHECK(b1.radial(unit_axis(3, 0)) == Approx(1.0));
  CHECK(b1.radial(unit3(1, 1, 1)) == Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
  auto cube = make_cube(3);
  CHECK(cube.radial(unit3(1, 1, 0)) == Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(cube.radial(unit3(-1, 1, 0)) == Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(cube.radial(Vec{1.0, 1.0, 0.0}), std::invalid_argument);  // not unit
}

TEST_CASE("support evaluation", "[bodies]") {
  auto z = make_zonotope(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(z.support(unit3(1, 1, 1)) == Approx(std::sqrt(3.0)).epsilon(1e-12));
  auto e = make_ellipsoid(3, {1.0, 2.0, 0.5});
  const Vec u = unit3(0.3, -0.4, 0.7);
  CHECK(e.support(u) ==
        Approx(std::sqrt(1.0 * u[0] * u[0] + 4.0 * u[1] * u[1] + 0.25 * u[2] * u[2])));
  CHECK(make_ball(4, 2.5).support(unit_axis(4, 2)) == Approx(2.5));
  // dual exponents
  auto bp = make_lp_ball(3, 1.5);
  double q = 3.0;  // 1.5/(1.5-1)
  double expect = std::pow(std::pow(std::abs(u[0]), q) + std::pow(std::abs(u[1]), q) +
                               std::pow(std::abs(u[2]), q),
                           1.0 / q);
  CHECK(bp.support(u) == Approx(expect).epsilon(1e-12));
  CHECK(make_lp_ball(3, 1.0).support(u) == Approx(0.7 / norm(Vec{0.3, -0.4, 0.7})));
  CHECK_THROWS_AS(make_lp_ball(3, 0.7).support(u), capability_error);
}

TEST_CASE("dilate", "[bodies]") {
  auto K = make_cube(3);
  auto K2 = dilate(K, 0.5);
  const Vec u = unit3(0.2, 0.5, 0.9);
  CHECK(K2.radial(u) == Approx(0.5 * K.radial(u)));
  CHECK(K2.support(u) == Approx(0.5 * K.support(u)));
  CHECK(dilate(K, 1.0).radial(u) == Approx(K.radial(u)));
  CHECK(*dilate(make_ball(3), 2.0).exact_volume() == Approx(8.0 * ball_volume(3)));
  CHECK_THROWS_AS(dilate(K, 0.0), std::domain_error);
  CHECK_THROWS_AS(dilate(K, -1.0), std::domain_error);
  // section of the half cube at e1 is a unit square
  CHECK(section_volume(dilate(K, 0.5), unit_axis(3, 0), QuadLevel::standard) ==
        Approx(1.0).epsilon(1e-4));
}

TEST_CASE("radial sums", "[bodies]") {
  auto sum = radial_sum(make_ball(4), make_ball(4));
  CHECK(sum.radial(unit_axis(4, 1)) == Approx(2.0));
  auto K = make_lp_ball(3, 1.2);
  auto sum2 = radial_sum(K, make_ball(3, 0.25));
  CounterRng rng(5, "dirs", 0);
  for (int i = 0; i < 10; ++i) {
    Vec u(3);
    for (double& c : u) c = rng.normal();
    u = normalized(u);
    CHECK(sum2.radial(u) == Approx(K.radial(u) + 0.25).epsilon(1e-13));
  }
  // intersection-body flag propagates through radial sums
  CHECK(radial_sum(make_lp_ball(4, 1.5), make_ellipsoid(4, {1, 2, 1, 0.5}))
            .intersection_by_construction());
  CHECK_FALSE(radial_sum(make_lp_ball(4, 3.0), make_ball(4)).intersection_by_construction());
  CHECK_THROWS_AS(radial_sum(make_ball(3), make_ball(4)), std::domain_error);
}

TEST_CASE("minkowski sums", "[bodies]") {
  auto za = make_zonotope(3, {{1, 0, 0}, {0, 1, 0}});
  auto zb = make_zonotope(3, {{0, 0, 1}});
  auto sum = minkowski_sum(za, zb);
  const Vec u = unit3(1, 1, 1);
  CHECK(sum.support(u) == Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(sum.projection_by_construction());
  // identity element
  auto zero = make_zonotope(3, std::vector<Vec>{});
  auto same = minkowski_sum(make_cube(3), zero);
  CHECK(same.support(u) == Approx(make_cube(3).support(u)));
  // lazy sum: cube + ball support adds; radial recovered by minimization
  auto lazy = minkowski_sum(make_cube(3), make_ball(3));
  CHECK(lazy.support(u) == Approx(std::sqrt(3.0) + 1.0).epsilon(1e-12));
  CHECK_THROWS_AS(lazy.surface_measure(), capability_error);
  auto two_balls = minkowski_sum(make_ball(3), make_ball(3));
  CHECK(two_balls.radial(u) == Approx(2.0).margin(1e-6));
}

TEST_CASE("radial metric", "[bodies]") {
  auto cube = make_cube(3);
  auto ball = make_ball(3);
  const SphericalRule& rule = cached_sphere_rule(3, QuadLevel::standard);
  CHECK(radial_distance(cube, cube, rule) == Approx(0.0).margin(1e-12));
  CHECK(radial_distance(ball, dilate(ball, 2.0), rule) == Approx(1.0).margin(1e-10));
  CHECK(radial_distance(cube, ball, rule) == Approx(std::sqrt(3.0) - 1.0).margin(1e-6));
}

TEST_CASE("normalized radii", "[bodies]") {
  CHECK(normalized_inradius(make_ball(3), QuadLevel::standard) ==
        Approx(0.620350490899400017).epsilon(1e-9));
  CHECK(normalized_circumradius(make_ball(3), QuadLevel::standard) ==
        Approx(0.620350490899400017).epsilon(1e-9));
  auto cube = make_cube(3);
  CHECK(normalized_inradius(cube, QuadLevel::standard) == Approx(0.5).epsilon(1e-3));
  CHECK(normalized_circumradius(cube, QuadLevel::standard) ==
        Approx(std::sqrt(3.0) / 2.0).epsilon(1e-3));
  // dilation invariance (homogeneity zero)
  auto e = make_ellipsoid(4, {1.0, 1.0, 1.0, 1.7});
  CHECK(normalized_inradius(dilate(e, 2.0), QuadLevel::standard) ==
        Approx(normalized_inradius(e, QuadLevel::standard)).epsilon(1e-9));
  CHECK(normalized_circumradius(dilate(e, 0.5), QuadLevel::standard) ==
        Approx(normalized_circumradius(e, QuadLevel::standard)).epsilon(1e-9));
}

TEST_CASE("intersection body construction", "[bodies]") {
  auto ib = intersection_body_of(make_ball(3), QuadLevel::standard);
  CHECK(ib.radial(unit3(0.1, -0.4, 0.9)) == Approx(M_PI).epsilon(1e-10));
  CHECK(ib.intersection_by_construction());
  auto ibc = intersection_body_of(make_cube(3), QuadLevel::standard);
  CHECK(ibc.radial(unit_axis(3, 0)) == Approx(4.0).epsilon(1e-4));
  // scaling: the intersection body of r B^n is the ball of radius
  // r^{n-1} |B^{n-1}|
  auto ib5 = intersection_body_of(make_ball(5, 1.3), QuadLevel::standard);
  CHECK(ib5.radial(unit_axis(5, 2)) ==
        Approx(std::pow(1.3, 4.0) * ball_volume(4)).epsilon(1e-9));
}

TEST_CASE("projection body construction", "[bodies]") {
  auto pb = projection_body_of(make_ball(3));
  CHECK(pb.support(unit3(1, 2, -1)) == Approx(M_PI).epsilon(1e-12));
  CHECK(pb.projection_by_construction());
  auto pc = projection_body_of(make_cube(3));
  const Vec u = unit3(0.3, -0.8, 0.52);
  CHECK(pc.support(u) ==
        Approx(4.0 * (std::abs(u[0]) + std::abs(u[1]) + std::abs(u[2]))).epsilon(1e-10));
  // scaling with beta^{n-1}
  auto pbig = projection_body_of(dilate(make_cube(3), 2.0));
  CHECK(pbig.support(u) == Approx(4.0 * pc.support(u)).epsilon(1e-10));
  auto pe = projection_body_of(make_ellipsoid(3, {1.0, 1.0, 2.0}));
  CHECK(pe.support(unit_axis(3, 0)) == Approx(ball_volume(2) * 2.0).epsilon(1e-12));
}

TEST_CASE("surface measures", "[bodies]") {
  SECTION("cube via zonotope facets") {
    auto m = make_cube(3).surface_measure();
    REQUIRE(m.discrete);
    REQUIRE(m.normals.size() == 6);
    for (double w : m.weights) CHECK(w == Approx(4.0).epsilon(1e-12));
    CHECK(m.discrete_total() == Approx(24.0).epsilon(1e-12));
  }
  SECTION("cube via explicit H-representation matches") {
    std::vector<Vec> normals = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    auto poly = make_polytope(3, normals, {1.0, 1.0, 1.0});
    auto m = poly.surface_measure();
    CHECK(m.discrete_total() == Approx(24.0).epsilon(1e-9));
    REQUIRE(m.normals.size() == 6);
    for (double w : m.weights) CHECK(w == Approx(4.0).epsilon(1e-9));
  }
  SECTION("ball density") {
    auto m = make_ball(3, 2.0).surface_measure();
    REQUIRE_FALSE(m.discrete);
    CHECK(m.density(unit3(1, 0, 0)) == Approx(4.0));
  }
  SECTION("normals come in +/- pairs with equal weights") {
    auto z = make_zonotope(3, {{0.3, 0.5, 0.81}, {0.9, -0.2, 0.37}, {-0.1, 0.77, 0.61}});
    auto m = z.surface_measure();
    for (std::size_t i = 0; i < m.normals.size(); ++i) {
      bool matched = false;
      for (std::size_t j = 0; j < m.normals.size(); ++j)
        if (norm(add(m.normals[i], m.normals[j])) < 1e-12 &&
            std::abs(m.weights[i] - m.weights[j]) < 1e-12)
          matched = true;
      CHECK(matched);
    }
  }
  SECTION("unsupported variants raise capability errors") {
    CHECK_THROWS_AS(make_lp_ball(3, 1.5).surface_measure(), capability_error);
  }
}

TEST_CASE("zonotope shadow identity", "[bodies][oracle]") {
  auto gens = std::vector<Vec>{{0.3, 0.5, 0.81}, {0.9, -0.2, 0.37}, {-0.1, 0.77, 0.61},
                               {0.5, 0.5, -0.1}};
  auto z = make_zonotope(3, gens);
  CounterRng rng(11, "shadow", 0);
  for (int k = 0; k < 4; ++k) {
    Vec xi(3);
    for (double& c : xi) c = rng.normal();
    xi = normalized(xi);
    // 2^{n-1} sum over (n-1)-subsets of |det(g_S, xi)|
    double det_sum = 0.0;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j)
        det_sum += std::abs(det({gens[i], gens[j], xi}));
    det_sum *= 4.0;
    const double cauchy = projection_volume(z, xi);
    CHECK(cauchy == Approx(det_sum).epsilon(1e-10));
    const double hofpb = projection_body_of(z).support(xi);
    CHECK(hofpb == Approx(det_sum).epsilon(1e-10));
  }
  const Vec xi = unit3(0.2, 0.4, 0.89);
  const double mc = oracles::mc_shadow(z, xi, 3.2, 300000, 23);
  CHECK(mc == Approx(projection_volume(z, xi)).epsilon(1e-2));
}

TEST_CASE("polytope vertices and support", "[bodies]") {
  auto cube = make_polytope(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {1, 1, 1});
  const auto& impl = dynamic_cast<const PolytopeImpl&>(cube.impl());
  CHECK(impl.vertices().size() == 8);
  CHECK(cube.support(unit3(1, 1, 1)) == Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(cube.radial(unit3(1, 1, 1)) == Approx(std::sqrt(3.0)).epsilon(1e-12));
  CHECK(*cube.exact_volume() == Approx(8.0).epsilon(1e-9));
  // octahedron from facets matches the l1 ball
  const double s = 1.0 / std::sqrt(3.0);
  std::vector<Vec> oct_normals = {{s, s, s}, {s, s, -s}, {s, -s, s}, {s, -s, -s}};
  auto oct = make_polytope(3, oct_normals, {s, s, s, s});
  auto b1 = make_lp_ball(3, 1.0);
  CounterRng rng(9, "oct", 0);
  for (int i = 0; i < 8; ++i) {
    Vec u(3);
    for (double& c : u) c = rng.normal();
    u = normalized(u);
    CHECK(oct.radial(u) == Approx(b1.radial(u)).epsilon(1e-10));
    CHECK(oct.support(u) == Approx(b1.support(u)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(make_polytope(3, {{1, 0, 0}, {0, 1, 0}}, {1, 1}), std::domain_error);
}

TEST_CASE("zonal perturbed balls", "[bodies]") {
  auto zb = make_zonal_ball(5, 1.0, {{6, 0.09}});
  const auto& impl = dynamic_cast<const ZonalBallImpl&>(zb.impl());
  CHECK(impl.convexity_checked());
  CHECK(zb.is_convex());
  CHECK(zb.zonal_axis().has_value());
  // profile reproduces through the radial interface
  const Vec u = normalized(Vec{0.3, 0.1, -0.2, 0.5, 0.78});
  CHECK(zb.radial(u) == Approx(impl.profile(u[4])).epsilon(1e-14));
  // strong high-degree perturbations fail the meridian test
  auto wiggly = make_zonal_ball(3, 1.0, {{6, 0.2}});
  CHECK_FALSE(wiggly.is_convex());
  CHECK_THROWS_AS(wiggly.support(u), capability_error);
  // support of a convex zonal ball: between inscribed and circumscribed balls
  auto mild = make_zonal_ball(3, 1.0, {{2, 0.05}});
  CHECK(mild.is_convex());
  const double h = mild.support(unit3(0.3, 0.2, 0.93));
  CHECK(h >= 0.94);
  CHECK(h <= 1.06);
  CHECK_THROWS_AS(make_zonal_ball(3, 1.0, {{3, 0.1}}), std::domain_error);  // odd degree
  CHECK_THROWS_AS(make_zonal_ball(3, 1.0, {{2, -2.0}}), std::domain_error);  // rho <= 0
}

TEST_CASE("sampled bodies interpolate", "[bodies]") {
  const SphericalRule& r = cached_sphere_rule(3, QuadLevel::low);
  std::vector<Vec> dirs = r.nodes;
  std::vector<double> vals(dirs.size(), 1.7);
  auto s = make_sampled(3, dirs, vals);
  CHECK(s.radial(dirs[5]) == Approx(1.7));
  CHECK(s.radial(unit3(0.4, -0.3, 0.85)) == Approx(1.7).epsilon(1e-12));
  CHECK(s.radial(negated(dirs[5])) == Approx(1.7));  // evenness by mirroring
}

TEST_CASE("evenness of bodies", "[bodies][property]") {
  CounterRng rng(31, "even", 0);
  std::vector<StarBody> bodies = {make_lp_ball(4, 1.3), make_cube(4),
                                  make_ellipsoid(4, {1, 2, 0.5, 1.4}),
                                  make_zonal_ball(4, 1.0, {{2, 0.05}, {4, 0.02}}),
                                  radial_sum(make_ball(4), make_lp_ball(4, 0.8))};
  for (const auto& B : bodies) {
    for (int i = 0; i < 16; ++i) {
      Vec u(4);
      for (double& c : u) c = rng.normal();
      u = normalized(u);
      CHECK(B.radial(u) == Approx(B.radial(negated(u))).epsilon(1e-12));
      if (B.has_support()) CHECK(B.support(u) == Approx(B.support(negated(u))).epsilon(1e-12));
    }
  }
}

TEST_CASE("radial below support for convex bodies", "[bodies][property]") {
  CounterRng rng(37, "rh", 0);
  std::vector<StarBody> bodies = {make_cube(3), make_lp_ball(3, 1.5),
                                  make_ellipsoid(3, {0.7, 1.1, 1.9}),
                                  make_zonotope(3, {{1, 0.2, 0}, {0, 1, 0.4}, {0.3, 0, 1}})};
  for (const auto& B : bodies) {
    for (int i = 0; i < 24; ++i) {
      Vec u(3);
      for (double& c : u) c = rng.normal();
      u = normalized(u);
      CHECK(B.radial(u) <= B.support(u) + 1e-12);
    }
  }
  // equality everywhere only for the ball
  auto ball = make_ball(3, 1.3);
  CHECK(ball.radial(unit3(1, 2, 3)) == Approx(ball.support(unit3(1, 2, 3))));
}

TEST_CASE("scaling laws under dilation", "[bodies][property]") {
  auto z = make_zonotope(3, {{0.8, 0.1, 0}, {0.1, 0.9, 0.2}, {0, 0.2, 1.1}, {0.5, -0.5, 0.2}});
  const SphericalRule& rule = cached_sphere_rule(3, QuadLevel::standard);
  const Vec xi = unit3(0.3, 0.5, 0.81);
  for (double beta : {0.5, 2.0}) {
    auto zb = dilate(z, beta);
    CHECK(volume(zb, rule) == Approx(std::pow(beta, 3) * volume(z, rule)).epsilon(1e-12));
    CHECK(section_volume(zb, xi, QuadLevel::standard) ==
          Approx(beta * beta * section_volume(z, xi, QuadLevel::standard)).epsilon(1e-12));
    CHECK(projection_volume(zb, xi) ==
          Approx(beta * beta * projection_volume(z, xi)).epsilon(1e-12));
    CHECK(avg_section(zb, QuadLevel::standard) ==
          Approx(beta * beta * avg_section(z, QuadLevel::standard)).epsilon(1e-12));
    CHECK(avg_projection(zb, QuadLevel::standard) ==
          Approx(beta * beta * avg_projection(z, QuadLevel::standard)).epsilon(1e-12));
    CHECK(mixed_volume_v1(zb, zb, QuadLevel::standard) ==
          Approx(std::pow(beta, 3) * mixed_volume_v1(z, z, QuadLevel::standard))
              .epsilon(1e-12));
  }
}
