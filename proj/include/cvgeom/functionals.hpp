// Geometric functionals: volume, section and projection volumes, averages,
// surface area, the mixed volume V_1, and measures with even continuous
// densities. Bodies of revolution get mathematically equivalent 1-D meridian
// evaluations, which the verification suites rely on in higher dimensions.
#ifndef CVGEOM_FUNCTIONALS_HPP
#define CVGEOM_FUNCTIONALS_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cvgeom/bodies.hpp"
#include "cvgeom/density.hpp"
#include "cvgeom/errors.hpp"
#include "cvgeom/quadrature.hpp"

namespace cvgeom {

namespace detail {

inline int meridian_nodes(QuadLevel level) {
  return level == QuadLevel::low ? 128 : level == QuadLevel::standard ? 256 : 512;
}

// rho of a body of revolution as a function of the cosine to its axis
struct ZonalProfile {
  const StarBody* body;
  Vec axis;
  Vec perp;  // fixed unit vector orthogonal to axis
  double operator()(double t) const {
    t = std::clamp(t, -1.0, 1.0);
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    Vec u = scaled(axis, t);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += s * perp[i];
    return body->radial(normalized(u));
  }
};

inline ZonalProfile zonal_profile(const StarBody& K, const Vec& axis) {
  return ZonalProfile{&K, axis, householder_complement(axis)[0]};
}

// int over S^{n-1} of G(<theta, axis>) via the meridian angle
template <class G>
double sphere_integral_zonal(G&& g, int n, QuadLevel level) {
  const Quad1D gl = gauss_legendre(meridian_nodes(level), 0.0, M_PI);  // cached base
  std::vector<double> terms(gl.x.size());
  for (std::size_t i = 0; i < gl.x.size(); ++i) {
    const double phi = gl.x[i];
    terms[i] = gl.w[i] * g(std::cos(phi)) * std::pow(std::sin(phi), n - 2.0);
  }
  return cvgeom::detail::sphere_area_ext(n - 1) * tree_sum(terms);
}

// int over S^{n-1} cap xi^perp of G(<y, axis>) where t = <axis, xi>; the
// in-plane component of the axis has length sqrt(1 - t^2).
template <class G>
double subsphere_integral_zonal(G&& g, int n, double t, QuadLevel level) {
  const double c = std::sqrt(std::max(0.0, 1.0 - t * t));
  if (n == 3) {
    // S^1: uniform angle integral
    const int m = meridian_nodes(level);
    std::vector<double> terms(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      const double psi = (i + 0.5) * 2.0 * M_PI / m;
      terms[static_cast<std::size_t>(i)] = 2.0 * M_PI / m * g(c * std::cos(psi));
    }
    return tree_sum(terms);
  }
  const Quad1D gl = gauss_legendre(meridian_nodes(level), 0.0, M_PI);
  std::vector<double> terms(gl.x.size());
  for (std::size_t i = 0; i < gl.x.size(); ++i) {
    const double psi = gl.x[i];
    terms[i] = gl.w[i] * g(c * std::cos(psi)) * std::pow(std::sin(psi), n - 3.0);
  }
  return cvgeom::detail::sphere_area_ext(n - 2) * tree_sum(terms);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// volume

// |K| = (1/n) int_{S^{n-1}} rho_K^n
inline double volume(const StarBody& K, const SphericalRule& rule) {
  if (K.dim() != rule.n) throw std::invalid_argument("volume: rule dimension mismatch");
  const int n = K.dim();
  return integrate_even([&](const Vec& u) { return std::pow(K.radial(u), n); }, rule) / n;
}

// meridian path for bodies of revolution, rule path otherwise
inline double volume_auto(const StarBody& K, QuadLevel level) {
  const int n = K.dim();
  if (auto axis = K.zonal_axis()) {
    auto prof = detail::zonal_profile(K, *axis);
    return detail::sphere_integral_zonal(
               [&](double t) { return std::pow(prof(t), n); }, n, level) / n;
  }
  return volume(K, cached_sphere_rule(n, level));
}

// ---------------------------------------------------------------------------
// sections

// |K cap xi^perp| = (1/(n-1)) int over the subsphere of rho^{n-1}, evaluated
// on an explicit subsphere rule
inline double section_volume_subsphere(const StarBody& K, const Vec& xi, QuadLevel level) {
  check_unit(xi, 1e-9);
  const int n = K.dim();
  if (n < 2) throw std::domain_error("section_volume: need n >= 2");
  const SubsphereRule sub = build_subsphere_rule(xi, level);
  return integrate_even([&](const Vec& u) { return std::pow(K.radial(u), n - 1.0); }, sub) /
         (n - 1.0);
}

inline double section_volume(const StarBody& K, const Vec& xi, QuadLevel level) {
  const int n = K.dim();
  if (n == 2) return section_volume_subsphere(K, xi, level);
  if (auto axis = K.zonal_axis()) {
    auto prof = detail::zonal_profile(K, *axis);
    const double t = dot(*axis, xi);
    return detail::subsphere_integral_zonal(
               [&](double s) { return std::pow(prof(s), n - 1.0); }, n, t, level) /
           (n - 1.0);
  }
  return section_volume_subsphere(K, xi, level);
}

// ---------------------------------------------------------------------------
// projections

// P_K(xi) = |K|xi^perp|, via closed forms or the Cauchy formula
// (1/2) int |<xi,u>| dS_K(u)
inline double projection_volume(const ConvexBody& K, const Vec& xi) {
  check_unit(xi, 1e-9);
  const int n = K.dim();
  if (const auto* ball = dynamic_cast<const BallImpl*>(&K.impl()))
    return ball_volume(n - 1) * std::pow(ball->radius(), n - 1.0);
  if (const auto* ell = dynamic_cast<const EllipsoidImpl*>(&K.impl())) {
    const Vec& a = ell->axes();
    double prod = 1.0, s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      prod *= a[i];
      s += xi[i] * xi[i] / (a[i] * a[i]);
    }
    return ball_volume(n - 1) * prod * std::sqrt(s);
  }
  if (const auto* dil = dynamic_cast<const DilateImpl*>(&K.impl()))
    return std::pow(dil->beta(), n - 1.0) * projection_volume(dil->base(), xi);
  if (!K.has_surface_measure())
    throw capability_error("projection volume needs a surface measure or closed form: " +
                           K.describe());
  const SurfaceMeasure m = K.surface_measure();
  if (!m.discrete)
    throw capability_error("projection volume for density measures is not implemented: " +
                           K.describe());
  double s = 0.0;
  for (std::size_t i = 0; i < m.normals.size(); ++i)
    s += m.weights[i] * std::abs(dot(xi, m.normals[i]));
  return 0.5 * s;
}

// ---------------------------------------------------------------------------
// averages and surface area

// as(K) = |S^{n-2}| / ((n-1)|S^{n-1}|) int rho^{n-1}; single-sphere formula
inline double avg_section(const StarBody& K, QuadLevel level) {
  const int n = K.dim();
  if (n < 2) throw std::domain_error("avg_section: need n >= 2");
  double integral;
  if (auto axis = K.zonal_axis()) {
    auto prof = detail::zonal_profile(K, *axis);
    integral = detail::sphere_integral_zonal(
        [&](double t) { return std::pow(prof(t), n - 1.0); }, n, level);
  } else {
    integral = integrate_even(
        [&](const Vec& u) { return std::pow(K.radial(u), n - 1.0); },
        cached_sphere_rule(n, level));
  }
  return cvgeom::detail::sphere_area_ext(n - 1) / ((n - 1.0) * sphere_area(n)) * integral;
}

// ap(L) = (1/|S^{n-1}|) int P_L
inline double avg_projection(const ConvexBody& L, QuadLevel level) {
  const int n = L.dim();
  const double integral = integrate_even(
      [&](const Vec& u) { return projection_volume(L, u); }, cached_sphere_rule(n, level));
  return integral / sphere_area(n);
}

// surface area; prefers the discrete facet sum, else integrates the
// curvature function
inline double surface_area(const ConvexBody& L, QuadLevel level) {
  if (L.has_surface_measure()) {
    const SurfaceMeasure m = L.surface_measure();
    if (m.discrete) return m.discrete_total();
    if (auto axis = L.zonal_axis()) {
      auto prof_density = [&](double t) {
        const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
        Vec u = scaled(*axis, t);
        const Mat basis = householder_complement(*axis);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] += s * basis[0][i];
        return m.density(normalized(u));
      };
      return detail::sphere_integral_zonal(prof_density, L.dim(), level);
    }
    return integrate_even(m.density, cached_sphere_rule(L.dim(), level));
  }
  // Cauchy projection formula fallback
  return avg_projection(L, level) * sphere_area(L.dim()) / ball_volume(L.dim() - 1);
}

// Cauchy route kept separate so the two paths can be compared
inline double surface_area_cauchy(const ConvexBody& L, QuadLevel level) {
  return avg_projection(L, level) * sphere_area(L.dim()) / ball_volume(L.dim() - 1);
}

// V_1(K, L) = (1/n) int h_L dS_K
inline double mixed_volume_v1(const ConvexBody& K, const ConvexBody& L, QuadLevel level) {
  if (K.dim() != L.dim()) throw std::invalid_argument("V1: dimension mismatch");
  if (!K.has_surface_measure())
    throw capability_error("V1 needs the surface measure of the first body: " + K.describe());
  const int n = K.dim();
  const SurfaceMeasure m = K.surface_measure();
  if (m.discrete) {
    std::vector<double> terms(m.normals.size());
    for (std::size_t i = 0; i < m.normals.size(); ++i)
      terms[i] = m.weights[i] * L.support(m.normals[i]);
    return tree_sum(terms) / n;
  }
  return integrate_even([&](const Vec& u) { return L.support(u) * m.density(u); },
                        cached_sphere_rule(n, level)) / n;
}

// ---------------------------------------------------------------------------
// measures with even continuous density

namespace detail {

// int_0^upper f(r) r^pow dr with fixed-order Gauss-Legendre panels split at
// the density's published breakpoints (narrow shells stay resolvable)
inline double radial_integral(const Density& mu, double upper, double pow_r, int order = 64) {
  const Quad1D& base = cached_gauss_legendre(order);
  double cuts[4];
  int ncuts = 0;
  cuts[ncuts++] = 0.0;
  for (double b : mu.radial_breakpoints())
    if (b > 1e-12 && b < upper) cuts[ncuts++] = b;
  cuts[ncuts++] = upper;
  std::sort(cuts, cuts + ncuts);
  double total = 0.0;
  for (int k = 0; k + 1 < ncuts; ++k) {
    const double mid = 0.5 * (cuts[k] + cuts[k + 1]);
    const double rad = 0.5 * (cuts[k + 1] - cuts[k]);
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < base.x.size(); ++i) {
      const double r = mid + rad * base.x[i];
      const double term = rad * base.w[i] * mu.at_radius(r) * std::pow(r, pow_r);
      const double t = s + term;  // Neumaier
      if (std::abs(s) >= std::abs(term)) c += (s - t) + term;
      else c += (term - t) + s;
      s = t;
    }
    total += s + c;
  }
  return total;
}

inline int radial_order(QuadLevel level) {
  return level == QuadLevel::low ? 16 : level == QuadLevel::standard ? 64 : 96;
}

}  // namespace detail

// mu(K) = int over directions of int_0^rho f(r theta) r^{n-1} dr
inline double measure_volume(const StarBody& K, const Density& mu, QuadLevel level) {
  if (K.dim() != mu.dim()) throw std::invalid_argument("measure_volume: dimension mismatch");
  const int n = K.dim();
  const int ord = detail::radial_order(level);
  auto shellfn = [&](double rho) { return detail::radial_integral(mu, rho, n - 1.0, ord); };
  if (auto axis = K.zonal_axis()) {
    auto prof = detail::zonal_profile(K, *axis);
    return detail::sphere_integral_zonal([&](double t) { return shellfn(prof(t)); }, n, level);
  }
  return integrate_even([&](const Vec& u) { return shellfn(K.radial(u)); },
                        cached_sphere_rule(n, level));
}

// mu(K cap xi^perp), radial weight r^{n-2} over the subsphere
inline double measure_section(const StarBody& K, const Density& mu, const Vec& xi,
                              QuadLevel level) {
  check_unit(xi, 1e-9);
  if (K.dim() != mu.dim()) throw std::invalid_argument("measure_section: dimension mismatch");
  const int n = K.dim();
  const int ord = detail::radial_order(level);
  auto shellfn = [&](double rho) { return detail::radial_integral(mu, rho, n - 2.0, ord); };
  if (n >= 3) {
    if (auto axis = K.zonal_axis()) {
      auto prof = detail::zonal_profile(K, *axis);
      const double t = dot(*axis, xi);
      return detail::subsphere_integral_zonal([&](double s) { return shellfn(prof(s)); }, n, t,
                                              level);
    }
  }
  const SubsphereRule sub = build_subsphere_rule(xi, level);
  return integrate_even([&](const Vec& u) { return shellfn(K.radial(u)); }, sub);
}

// ---------------------------------------------------------------------------
// normalized radii

// r(K) = min_xi rho_K / |K|^{1/n}
inline double normalized_inradius(const StarBody& K, QuadLevel level, ExtremizeBudget budget = {}) {
  const int n = K.dim();
  double mn;
  if (auto axis = K.zonal_axis()) {
    auto prof = detail::zonal_profile(K, *axis);
    mn = extremize_zonal_profile([&](double t) { return prof(t); }, ExtremeMode::min).value;
  } else {
    mn = extremize([&](const Vec& u) { return K.radial(u); }, cached_sphere_rule(n, level),
                   ExtremeMode::min, budget).value;
  }
  const double vol = volume_auto(K, level);
  if (!(vol > 0.0) || !(mn > 0.0)) throw numerical_failure("degenerate body in normalized_inradius");
  return mn / std::pow(vol, 1.0 / n);
}

// R(L) = max_xi rho_L / |L|^{1/n}
inline double normalized_circumradius(const StarBody& L, QuadLevel level,
                                      ExtremizeBudget budget = {}) {
  const int n = L.dim();
  double mx;
  if (auto axis = L.zonal_axis()) {
    auto prof = detail::zonal_profile(L, *axis);
    mx = extremize_zonal_profile([&](double t) { return prof(t); }, ExtremeMode::max).value;
  } else {
    mx = extremize([&](const Vec& u) { return L.radial(u); }, cached_sphere_rule(n, level),
                   ExtremeMode::max, budget).value;
  }
  const double vol = volume_auto(L, level);
  if (!(vol > 0.0)) throw numerical_failure("degenerate body in normalized_circumradius");
  return mx / std::pow(vol, 1.0 / n);
}

// ---------------------------------------------------------------------------
// derived bodies

// star body whose radius in each direction is the section volume of L there
inline StarBody intersection_body_of(const StarBody& L, QuadLevel level) {
  if (L.dim() < 2) throw std::domain_error("intersection body: need n >= 2");
  StarBody copy = L;
  auto rho = [copy, level](const Vec& xi) { return section_volume(copy, xi, level); };
  return StarBody(std::make_shared<LazyRadialImpl>(
      L.dim(), rho, "intersection_body_of(" + L.describe() + ")", /*flag_intersection=*/true,
      L.zonal_axis()));
}

// convex body whose support function is the projection volume of K
inline ConvexBody projection_body_of(const ConvexBody& K) {
  const int n = K.dim();
  if (const auto* ball = dynamic_cast<const BallImpl*>(&K.impl()))
    return make_ball(n, ball_volume(n - 1) * std::pow(ball->radius(), n - 1.0));
  if (const auto* ell = dynamic_cast<const EllipsoidImpl*>(&K.impl())) {
    const Vec& a = ell->axes();
    double prod = 1.0;
    for (double x : a) prod *= x;
    Vec axes(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) axes[i] = ball_volume(n - 1) * prod / a[i];
    return make_ellipsoid(n, std::move(axes));
  }
  if (!K.has_surface_measure())
    throw capability_error("projection body needs a surface measure: " + K.describe());
  const SurfaceMeasure m = K.surface_measure();
  if (!m.discrete)
    throw capability_error("projection body of smooth non-ellipsoids is not implemented: " +
                           K.describe());
  // h(theta) = (1/2) sum s_i |<u_i, theta>| is the zonotope with generators
  // s_i u_i, one per antipodal facet pair
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < m.normals.size(); ++i) {
    bool seen = false;
    for (const Vec& g : gens) {
      Vec gu = normalized(g);
      if (std::abs(dot(gu, m.normals[i])) > 1.0 - 1e-10) {
        seen = true;
        break;
      }
    }
    if (!seen) gens.push_back(scaled(m.normals[i], m.weights[i]));
  }
  return make_zonotope(n, std::move(gens));
}

// orthogonal shadow of a zonotope on xi^perp, as a zonotope of one lower
// dimension in the frame coordinates of xi^perp
inline ConvexBody projected_zonotope(const ConvexBody& Z, const Vec& xi) {
  const auto* zi = dynamic_cast<const ZonotopeImpl*>(&Z.impl());
  if (!zi) throw capability_error("projected body implemented for zonotopes only");
  check_unit(xi, 1e-9);
  const Mat frame = householder_complement(xi);
  std::vector<Vec> gens;
  for (const Vec& g : zi->generators()) {
    Vec pg(frame.size());
    for (std::size_t k = 0; k < frame.size(); ++k) pg[k] = dot(g, frame[k]);
    if (norm(pg) > 1e-14) gens.push_back(std::move(pg));
  }
  return make_zonotope(Z.dim() - 1, std::move(gens));
}

// Circumscribed tangent-plane polytope of a smooth convex body, built on a
// deterministic well-spread direction set. The result over-covers the body,
// so its shadows and volume sit ~3e-2 above the smooth values at the
// default size (the angular facet gap scales like 1/sqrt(pairs)); n <= 3
// carries the full facet-area machinery.
inline ConvexBody polytopal_support_approximation(const ConvexBody& K, int facet_pairs = 96) {
  if (!K.is_convex() || !K.has_support())
    throw capability_error("tangent-plane discretization needs a convex body with support: " +
                           K.describe());
  const int n = K.dim();
  std::vector<Vec> normals = detail::kronecker_directions(n, facet_pairs);
  std::vector<double> offsets;
  offsets.reserve(normals.size());
  for (const Vec& u : normals) offsets.push_back(K.support(u));
  return make_polytope(n, std::move(normals), std::move(offsets));
}

// central section K cap xi^perp as a star body of one lower dimension
inline StarBody section_body(const StarBody& K, const Vec& xi) {
  check_unit(xi, 1e-9);
  const Mat frame = householder_complement(xi);
  StarBody copy = K;
  const int n = K.dim();
  auto rho = [copy, frame](const Vec& y) {
    Vec u(copy.dim(), 0.0);
    for (std::size_t k = 0; k < frame.size(); ++k)
      for (std::size_t i = 0; i < u.size(); ++i) u[i] += y[k] * frame[k][i];
    return copy.radial(normalized(u));
  };
  return StarBody(std::make_shared<LazyRadialImpl>(
      n - 1, rho, "section(" + K.describe() + ")", /*flag_intersection=*/false));
}

}  // namespace cvgeom

#endif
