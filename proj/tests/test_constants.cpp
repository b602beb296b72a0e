#include <catch2/catch_amalgamated.hpp>

#include <thread>

#include "cvgeom/constants.hpp"
#include "oracles.hpp"

using namespace cvgeom;
using Catch::Approx;

TEST_CASE("ball volumes match closed forms", "[constants]") {
  CHECK(ball_volume(1) == Approx(2.0).epsilon(1e-14));
  CHECK(ball_volume(2) == Approx(M_PI).epsilon(1e-14));
  CHECK(ball_volume(3) == Approx(4.0 * M_PI / 3.0).epsilon(1e-14));
  CHECK(ball_volume(5) == Approx(5.26378901391432460).epsilon(1e-14));  // 8 pi^2 / 15
  CHECK_THROWS_AS(ball_volume(0), std::domain_error);
  CHECK_THROWS_AS(ball_volume(-2), std::domain_error);
}

TEST_CASE("ball volume cross-checked by Monte Carlo", "[constants][oracle]") {
  const double mc = oracles::mc_volume(make_ball(5), 1.0, 400000, 17);
  CHECK(mc == Approx(ball_volume(5)).epsilon(1e-2));
}

TEST_CASE("sphere area and the n |B| relation", "[constants]") {
  CHECK(sphere_area(2) == Approx(2.0 * M_PI).epsilon(1e-14));
  CHECK(sphere_area(3) == Approx(4.0 * M_PI).epsilon(1e-14));
  for (int n = 2; n <= 20; ++n)
    CHECK(sphere_area(n) == Approx(n * ball_volume(n)).epsilon(1e-12));
  CHECK_THROWS_AS(sphere_area(1), std::domain_error);
}

TEST_CASE("c_n definition identity and bounds", "[constants]") {
  for (int n = 2; n <= 20; ++n) {
    const double cn = cn_constant(n);
    CHECK(cn * ball_volume(n - 1) ==
          Approx(std::pow(ball_volume(n), (n - 1.0) / n)).epsilon(1e-12));
    CHECK(cn > 1.0 / std::sqrt(std::exp(1.0)));
    CHECK(cn < 1.0);
  }
  CHECK(cn_constant(3) == Approx(0.827133987865866689).epsilon(1e-12));
  CHECK(cn_constant(4) == Approx(0.790430523941554432).epsilon(1e-12));
  CHECK_THROWS_AS(cn_constant(1), std::domain_error);
}

TEST_CASE("named constants", "[constants]") {
  SECTION("thm3 reduces to c_n at alpha = 0, n = 4") {
    CHECK(named_constant("thm3", 4, 0.0) == Approx(cn_constant(4)).epsilon(1e-10));
  }
  SECTION("thm3 general value") {
    CHECK(named_constant("thm3", 5, 1.0) == Approx(0.600978465268913767).epsilon(1e-10));
  }
  SECTION("alpha windows enforced") {
    CHECK_THROWS_AS(named_constant("thm3", 5, 5.0), std::domain_error);
    CHECK_THROWS_AS(named_constant("thm3", 5, 0.5), std::domain_error);
    CHECK_THROWS_AS(named_constant("thm7-factor", 3, 2.0), std::domain_error);
    CHECK_THROWS_AS(named_constant("thm4-factor", 4, 3.5), std::domain_error);
  }
  SECTION("separation and stability factors") {
    CHECK(named_constant("thm2-factor", 3) == Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-14));
    CHECK(named_constant("thm6-factor", 4) == Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-14));
    CHECK(named_constant("thm4-factor", 5, 1.0) == Approx(0.837758040957278197).epsilon(1e-10));
    CHECK(named_constant("thm7-factor", 3, 3.5) == Approx(0.106384608107048714).epsilon(1e-10));
  }
  SECTION("average-section and measure factors") {
    CHECK(named_constant("cor2", 3) == Approx(0.974444272430188490).epsilon(1e-10));
    CHECK(named_constant("cor2", 5) == Approx(0.845125966784409985).epsilon(1e-10));
    CHECK(named_constant("meas-factor", 3) == Approx(1.5 * cn_constant(3)).epsilon(1e-14));
  }
  SECTION("unknown names rejected") {
    CHECK_THROWS_AS(named_constant("thm9", 3), std::domain_error);
    CHECK_THROWS_AS(named_constant("thm3", 4), std::domain_error);  // missing alpha
  }
}

TEST_CASE("constant cache is safe under concurrent access", "[constants]") {
  std::vector<std::thread> pool;
  std::atomic<bool> ok{true};
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&] {
      for (int i = 0; i < 200; ++i) {
        const double v = named_constant("thm3", 5, 1.0 + (i % 28) * 0.1);
        if (!(v > 0.0)) ok = false;
      }
    });
  for (auto& th : pool) th.join();
  CHECK(ok);
}

TEST_CASE("dim constants bundle", "[constants]") {
  const DimConstants dc = dim_constants(4);
  CHECK(dc.n == 4);
  CHECK(dc.sphere_area == Approx(4 * dc.ball_volume).epsilon(1e-13));
  CHECK(dc.c_n == Approx(cn_constant(4)));
}
