#include <catch2/catch_amalgamated.hpp>

#include "cvgeom/spectral.hpp"
#include "cvgeom/verify.hpp"
#include "oracles.hpp"

using namespace cvgeom;
using Catch::Approx;

TEST_CASE("multiplier base case", "[spectral]") {
  for (int n : {3, 4, 5}) {
    const double expect = 2.0 * std::pow(M_PI, 0.5 * (n + 1)) / std::tgamma(0.5 * (n - 1));
    CHECK(fourier_multiplier(0, n - 1.0, n) == Approx(expect).epsilon(1e-12));
  }
  CHECK(fourier_multiplier(0, 2.0, 3) == Approx(2 * M_PI * M_PI).epsilon(1e-13));
}

TEST_CASE("multiplier inversion identity", "[spectral]") {
  for (int n : {3, 5})
    for (int m : {0, 2, 4})
      for (double p : {1.0, 1.7, 2.4}) {
        const double prod = fourier_multiplier(m, p, n) * fourier_multiplier(m, n - p, n);
        CHECK(prod == Approx(std::pow(2 * M_PI, n)).epsilon(1e-8));
      }
}

TEST_CASE("multipliers agree with the Bessel-integral oracle", "[spectral][oracle]") {
  struct Probe {
    int m;
    double p;
    int n;
  };
  for (Probe pr : {Probe{0, 2.0, 3}, Probe{2, 1.0, 3}, Probe{2, 2.0, 5}, Probe{4, 2.0, 5},
                   Probe{0, 1.3, 4}, Probe{2, 3.1, 4}}) {
    const double oracle = oracles::multiplier_bessel(pr.m, pr.p, pr.n);
    CHECK(fourier_multiplier(pr.m, pr.p, pr.n) == Approx(oracle).epsilon(5e-5));
  }
}

TEST_CASE("continued exponents", "[spectral]") {
  // transform of the curvature function of the ball: -pi |B^{n-1}|
  for (int n : {3, 4, 5})
    CHECK(fourier_multiplier(0, n + 1.0, n) ==
          Approx(-M_PI * ball_volume(n - 1)).epsilon(1e-12));
  CHECK(fourier_multiplier(0, -1.0, 3) == Approx(-8 * M_PI).epsilon(1e-13));
  CHECK(multiplier_continued(-1.0, 3));
  CHECK(multiplier_continued(4.0, 3));
  CHECK_FALSE(multiplier_continued(1.5, 3));
  CHECK_THROWS_AS(fourier_multiplier(0, 0.0, 3), std::domain_error);   // Gamma pole
  CHECK_THROWS_AS(fourier_multiplier(0, 3.0, 3), std::domain_error);   // Gamma pole
  CHECK_THROWS_AS(fourier_multiplier(0, -1.5, 3), std::domain_error);  // outside range
  CHECK_THROWS_AS(fourier_multiplier(0, 4.5, 3), std::domain_error);
  CHECK_THROWS_AS(fourier_multiplier(1, 1.0, 3), std::domain_error);  // odd degree
}

TEST_CASE("multiplier tables", "[spectral]") {
  const MultiplierTable t = multiplier_table(1.0, 5, 12);
  const MultiplierTable inv = multiplier_table(4.0, 5, 12);
  for (int m = 0; m <= 12; m += 2) {
    CHECK(t.at(m) == fourier_multiplier(m, 1.0, 5));
    CHECK(t.at(m) * inv.at(m) == Approx(std::pow(2 * M_PI, 5)).epsilon(1e-10));
  }
}

TEST_CASE("zonal expansion basics", "[spectral]") {
  // constants expand to the degree-0 coefficient only
  auto e = expand_zonal_profile([](double) { return 2.0; }, 4, unit_axis(4, 3), 20, 1.0);
  CHECK(e.zonal_coef[0] == Approx(2.0 * std::sqrt(sphere_area(4))).epsilon(1e-12));
  for (int d = 1; d <= 20; ++d) CHECK(std::abs(e.zonal_coef[d]) < 1e-12);
  CHECK(e.residual < 1e-6);
  // t^2 has degrees 0 and 2 only
  auto e2 = expand_zonal_profile([](double t) { return t * t; }, 3, unit_axis(3, 2), 12, 0.0);
  CHECK(std::abs(e2.zonal_coef[0]) > 1e-3);
  CHECK(std::abs(e2.zonal_coef[2]) > 1e-3);
  for (int d = 4; d <= 12; d += 2) CHECK(std::abs(e2.zonal_coef[d]) < 1e-12);
  CHECK(e2.residual < 1e-6);
  // evaluation reproduces the profile
  for (double t : {-0.9, -0.3, 0.0, 0.4, 1.0})
    CHECK(e2.evaluate_zonal_t(t) == Approx(t * t).margin(1e-11));
}

TEST_CASE("generic expand guards zonality", "[spectral]") {
  auto zonal_fn = [](const Vec& u) { return 1.0 + 0.2 * u[2] * u[2]; };
  auto e = expand(zonal_fn, 3, HarmonicBasis::zonal_gegenbauer, 8, unit_axis(3, 2));
  CHECK(e.evaluate_zonal_t(0.5) == Approx(1.05).margin(1e-10));
  auto skew_fn = [](const Vec& u) { return 1.0 + 0.2 * u[0] * u[0]; };
  CHECK_THROWS_AS(expand(skew_fn, 3, HarmonicBasis::zonal_gegenbauer, 8, unit_axis(3, 2)),
                  std::invalid_argument);
  auto e3 = expand(skew_fn, 3, HarmonicBasis::full_sh_n3, 8);
  CounterRng rng(3, "sh", 0);
  for (int i = 0; i < 6; ++i) {
    Vec u(3);
    for (double& c : u) c = rng.normal();
    u = normalized(u);
    CHECK(e3.evaluate(u) == Approx(skew_fn(u)).margin(1e-9));
  }
}

TEST_CASE("full-SH expansion roundtrip within residual", "[spectral]") {
  auto body = make_ellipsoid(3, {1.0, 1.4, 0.8});
  auto e = expand_radial_power(body, 1.0, 16);
  const SphericalRule& rule = cached_sphere_rule(3, QuadLevel::low);
  double rms = 0.0;
  for (const Vec& u : rule.nodes) {
    const double d = e.evaluate(u) - body.radial(u);
    rms += d * d * sphere_area(3) / rule.nodes.size();
  }
  rms = std::sqrt(rms);
  CHECK(rms <= e.residual + 1e-6);
}

TEST_CASE("homogeneous transform", "[spectral]") {
  // ball: rho^{n-1} = 1 transforms to the base-case constant
  for (int n : {3, 5}) {
    auto e = expand_radial_power(make_ball(n), n - 1.0, 16);
    auto hat = homogeneous_fourier(e);
    const double expect = 2.0 * std::pow(M_PI, 0.5 * (n + 1)) / std::tgamma(0.5 * (n - 1));
    CHECK(hat.evaluate_zonal_t(0.3) == Approx(expect).epsilon(1e-10));
    CHECK(hat.homogeneity_q == Approx(1.0));
  }
  // applying the transform twice multiplies by (2 pi)^n
  auto K = make_ellipsoid(4, {1.0, 1.0, 1.0, 1.5});
  auto e = expand_radial_power(K, 1.5, 24);
  auto twice = homogeneous_fourier(homogeneous_fourier(e));
  for (double t : {-0.7, 0.0, 0.5})
    CHECK(twice.evaluate_zonal_t(t) ==
          Approx(std::pow(2 * M_PI, 4) * e.evaluate_zonal_t(t)).epsilon(1e-9));
  // pure harmonics stay pure
  auto pure = expand_zonal_profile([](double t) { return gegenbauer(4, 1.0, t); }, 4,
                                   unit_axis(4, 3), 12, 1.0);
  auto hat = homogeneous_fourier(pure);
  for (int d = 0; d <= 12; d += 2)
    if (d != 4) CHECK(std::abs(hat.zonal_coef[d]) < 1e-10);
}

TEST_CASE("spectral section function", "[spectral]") {
  auto sf = section_function_spectral(make_ball(3), 16);
  CHECK(sf.evaluate(unit_axis(3, 0)) == Approx(M_PI).epsilon(1e-10));
  for (int n : {3, 5}) {
    Vec axes(static_cast<std::size_t>(n), 1.1);
    axes[static_cast<std::size_t>(n - 1)] = 0.7;
    auto E = make_ellipsoid(n, axes);
    auto sfe = section_function_spectral(E, 40);
    CounterRng rng(7, "sec", 0);
    for (int i = 0; i < 6; ++i) {
      Vec xi(static_cast<std::size_t>(n));
      for (double& c : xi) c = rng.normal();
      xi = normalized(xi);
      CHECK(sfe.evaluate(xi) ==
            Approx(section_volume(E, xi, QuadLevel::standard)).epsilon(1e-3));
    }
    // dilation scales the section function by beta^{n-1}
    auto sfd = section_function_spectral(dilate(E, 1.3), 40);
    CHECK(sfd.evaluate_zonal_t(0.4) ==
          Approx(std::pow(1.3, n - 1.0) * sfe.evaluate_zonal_t(0.4)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(section_function_spectral(make_lp_ball(4, 1.5), 16), scope_error);
}

TEST_CASE("fractional laplacian", "[spectral]") {
  auto E = make_ellipsoid(5, {1.0, 1.0, 1.0, 1.0, 1.4});
  auto S = section_function_spectral(E, 32);  // homogeneity q = 1
  SECTION("alpha = 0 is the identity") {
    auto id = fractional_laplacian(S, 0.0);
    for (double t : {-0.5, 0.2, 0.9})
      CHECK(id.evaluate_zonal_t(t) == S.evaluate_zonal_t(t));
  }
  SECTION("ball composition matches the multiplier product") {
    auto Sball = section_function_spectral(make_ball(5), 16);
    const double alpha = 2.3;
    auto out = fractional_laplacian(Sball, alpha);
    const double expect = ball_volume(4) * fourier_multiplier(0, 1.0, 5) *
                          fourier_multiplier(0, 5.0 - 1.0 - alpha, 5) /
                          std::pow(2 * M_PI, 5);
    CHECK(out.evaluate_zonal_t(0.6) == Approx(expect).epsilon(1e-10));
  }
  SECTION("window enforcement names the theorem window") {
    CHECK_THROWS_AS(fractional_laplacian(S, 0.5), std::domain_error);  // [1, 4) for n = 5
    CHECK_THROWS_AS(fractional_laplacian(S, 4.0), std::domain_error);
    CHECK_NOTHROW(fractional_laplacian(S, 1.0));
    CHECK_NOTHROW(fractional_laplacian(S, 3.9));
  }
}

TEST_CASE("intersection-body certificates", "[spectral]") {
  CHECK(is_intersection_body(make_ball(5)).verdict == CertVerdict::certified_positive);
  // convex zonal bodies in n = 3 are intersection bodies; never negative
  for (const auto& B :
       {make_ellipsoid(3, {1.0, 1.0, 1.5}), StarBody(make_zonal_ball(3, 1.0, {{2, 0.05}})),
        make_ball(3, 1.3)}) {
    auto c = is_intersection_body(B);
    CHECK(c.verdict == CertVerdict::certified_positive);
  }
  // the perturbed ball in n = 5 with a degree-6 coefficient beyond the
  // threshold is certified negative, in line with the multiplier sign
  auto zb = make_zonal_ball(5, 1.0, {{6, 0.09}});
  REQUIRE(zb.is_convex());
  auto c = is_intersection_body(zb);
  CHECK(c.verdict == CertVerdict::certified_negative);
  auto c2 = is_intersection_body(zb, 80);
  CHECK(c2.verdict == CertVerdict::certified_negative);  // persists at doubled cutoff
  CHECK_THROWS_AS(is_intersection_body(make_lp_ball(4, 1.5)), scope_error);
}

TEST_CASE("projection-body certificates", "[spectral]") {
  CHECK(is_projection_body(make_ball(3)).verdict == CertVerdict::certified_positive);
  CHECK(is_projection_body(make_ellipsoid(3, {1.0, 1.0, 1.6})).verdict ==
        CertVerdict::certified_positive);
  // the cross-polytope is certified non-member at both cutoffs
  auto b1 = make_lp_ball(3, 1.0);
  CHECK(is_projection_body(b1, 24).verdict == CertVerdict::certified_negative);
  CHECK(is_projection_body(b1, 48).verdict == CertVerdict::certified_negative);
  // zonotopes never certify negative
  CounterRng rng(13, "zono", 0);
  for (int k = 0; k < 4; ++k) {
    std::vector<Vec> gens;
    for (int j = 0; j < 5; ++j) {
      Vec g(3);
      for (double& c : g) c = rng.normal();
      gens.push_back(normalized(g));
    }
    auto cert = is_projection_body(make_zonotope(3, gens), 24);
    CHECK(cert.verdict != CertVerdict::certified_negative);
  }
}

TEST_CASE("parseval identity", "[spectral]") {
  auto [sp, direct] = parseval_check(make_ball(3), make_ball(3), 1.0);
  CHECK(sp == Approx(std::pow(2 * M_PI, 3) * 4 * M_PI).epsilon(1e-6));
  CHECK(direct == Approx(std::pow(2 * M_PI, 3) * 4 * M_PI).epsilon(1e-6));
  // the same body both ways
  auto E = make_ellipsoid(3, {1.0, 1.0, 1.5});
  auto [sp2, d2] = parseval_check(E, E, 1.4);
  CHECK(sp2 == Approx(d2).epsilon(1e-4));
  // mixed pair in n = 3
  auto [sp3, d3] = parseval_check(make_ball(3), E, 1.0);
  CHECK(sp3 == Approx(d3).epsilon(1e-3));
  // random zonal pairs across dimensions
  CounterRng rng(17, "pars", 0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + (trial % 3);
    Vec axes(static_cast<std::size_t>(n), rng.log_uniform(0.8, 1.3));
    axes[static_cast<std::size_t>(n - 1)] = rng.log_uniform(0.7, 1.5);
    auto A = make_ellipsoid(n, axes);
    auto B = make_zonal_ball(n, rng.uniform(0.9, 1.1), {{2, rng.uniform(-0.05, 0.05)}});
    const double p = rng.uniform(0.5, n - 0.5);
    auto [l, r] = parseval_check(A, B, p, 48);
    CHECK(l == Approx(r).epsilon(1e-3));
  }
  CHECK_THROWS_AS(parseval_check(make_ball(3), make_ball(3), 3.5), std::domain_error);
  CHECK_THROWS_AS(parseval_check(make_lp_ball(4, 1.2), make_ball(4), 1.0), scope_error);
}

TEST_CASE("flag soundness: constructed members are never certified out",
          "[spectral][property]") {
  for (int n : {3, 5}) {
    for (const StarBody& B : standard_zoo(n)) {
      if (!B.intersection_by_construction() || !in_spectral_scope(B)) continue;
      auto c = is_intersection_body(B, 40);
      INFO(B.describe());
      CHECK(c.verdict != CertVerdict::certified_negative);
    }
  }
}

TEST_CASE("certificate monotonicity over the zoo", "[spectral][property]") {
  for (int n : {3, 5}) {
    for (const auto& B : {StarBody(make_ellipsoid(n, Vec(n, 1.0))),
                          StarBody(make_zonal_ball(n, 1.0, {{4, 0.04}}))}) {
      auto c1 = is_intersection_body(B, 40);
      auto c2 = is_intersection_body(B, 80);
      if (c1.verdict != CertVerdict::inconclusive) CHECK(c1.verdict == c2.verdict);
    }
  }
}
