// Quadrature on S^{n-1} and on great subspheres, plus derivative-free
// extremization of even sphere functions.
//
// Rules store one hemisphere; every stored node represents an antipodal pair
// and its weight covers both points. integrate() evaluates both points of a
// pair so odd parts cancel exactly; integrate_even() evaluates one.
#ifndef CVGEOM_QUADRATURE_HPP
#define CVGEOM_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cvgeom/constants.hpp"
#include "cvgeom/la.hpp"
#include "cvgeom/specfun.hpp"

namespace cvgeom {

enum class QuadLevel { low, standard, high };

inline QuadLevel parse_quad_level(const std::string& s) {
  if (s == "low") return QuadLevel::low;
  if (s == "standard") return QuadLevel::standard;
  if (s == "high") return QuadLevel::high;
  throw std::invalid_argument("unknown quadrature level '" + s + "'");
}

inline std::string to_string(QuadLevel l) {
  switch (l) {
    case QuadLevel::low: return "low";
    case QuadLevel::standard: return "standard";
    default: return "high";
  }
}

using SphereFn = std::function<double(const Vec&)>;

struct SphericalRule {
  int n = 0;
  QuadLevel level = QuadLevel::standard;
  bool designed = false;     // polynomial exactness below is meaningful
  int exact_degree = 0;      // designed rules only
  std::vector<Vec> nodes;    // one node per antipodal pair
  std::vector<double> weights;  // covers the pair; sums to |S^{n-1}|

  std::size_t pair_count() const { return nodes.size(); }

  // Full symmetric node set (both members of each pair, half weight each).
  void full_nodes(std::vector<Vec>& out_nodes, std::vector<double>& out_weights) const {
    out_nodes.clear();
    out_weights.clear();
    out_nodes.reserve(2 * nodes.size());
    out_weights.reserve(2 * nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      out_nodes.push_back(nodes[i]);
      out_weights.push_back(0.5 * weights[i]);
      out_nodes.push_back(negated(nodes[i]));
      out_weights.push_back(0.5 * weights[i]);
    }
  }
};

namespace detail {

// inverse standard normal CDF: Acklam's rational approximation plus one
// Halley refinement through erfc; ample for point-set generation.
inline double inv_norm_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inv_norm_cdf: p in (0,1) required");
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1 - plow;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= phigh) {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const double q = std::sqrt(-2 * std::log(1 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = e * std::sqrt(2 * M_PI) * std::exp(x * x / 2);
  return x - u / (1 + x * u / 2);
}

// Kronecker (R_d) low-discrepancy sequence in [0,1)^d.
inline std::vector<double> rd_alphas(int d) {
  double phi = 1.5;
  for (int it = 0; it < 64; ++it)
    phi = std::pow(1.0 + phi, 1.0 / (d + 1.0));
  std::vector<double> a(static_cast<std::size_t>(d));
  double g = 1.0;
  for (int j = 0; j < d; ++j) {
    g /= phi;
    a[static_cast<std::size_t>(j)] = g;
  }
  return a;
}

inline int stochastic_pairs(QuadLevel level) {
  switch (level) {
    case QuadLevel::low: return 1 << 11;
    case QuadLevel::standard: return 1 << 13;
    default: return 1 << 15;
  }
}

// deterministic well-spread direction set (one per antipodal pair)
inline std::vector<Vec> kronecker_directions(int n, int count) {
  const std::vector<double> alphas = rd_alphas(n);
  std::vector<Vec> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Vec x(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      double u = 0.5 + alphas[static_cast<std::size_t>(j)] * (k + 1);
      u -= std::floor(u);
      u = std::min(std::max(u, 1e-15), 1.0 - 1e-16);
      x[static_cast<std::size_t>(j)] = inv_norm_cdf(u);
    }
    const double r = norm(x);
    dirs.push_back(r < 1e-12 ? unit_axis(n, 0) : scaled(x, 1.0 / r));
  }
  return dirs;
}

}  // namespace detail

// S^1: uniform midpoint-offset grid (trapezoid rule on the circle).
// S^2: Gauss-Legendre in cos(theta) x uniform in phi; polynomial exactness
//      min(2*Nt - 1, Nphi - 1).
// n >= 4: Kronecker sequence -> componentwise inverse normal CDF ->
//      normalize, folded to one hemisphere (antithetic pairing).
inline SphericalRule build_sphere_rule(int n, QuadLevel level) {
  if (n < 2) throw std::domain_error("build_sphere_rule: need n >= 2");
  SphericalRule rule;
  rule.n = n;
  rule.level = level;
  if (n == 2) {
    int m = level == QuadLevel::low ? 128 : level == QuadLevel::standard ? 512 : 2048;
    rule.designed = true;
    rule.exact_degree = m - 1;
    const int half = m / 2;
    rule.nodes.reserve(static_cast<std::size_t>(half));
    for (int j = 0; j < half; ++j) {
      const double phi = (j + 0.5) * 2.0 * M_PI / m;
      rule.nodes.push_back({std::cos(phi), std::sin(phi)});
      rule.weights.push_back(2.0 * 2.0 * M_PI / m);
    }
    return rule;
  }
  if (n == 3) {
    // sized for the kinked-integrand tolerance tiers, not just polynomial
    // exactness (which is 2*nt - 1 >= 35 from the standard tier up)
    int nt = level == QuadLevel::low ? 24 : level == QuadLevel::standard ? 64 : 128;
    int nphi = 2 * nt;
    rule.designed = true;
    rule.exact_degree = std::min(2 * nt - 1, nphi - 1);
    Quad1D gl = gauss_legendre(nt);
    for (int i = 0; i < nt; ++i) {
      const double t = gl.x[static_cast<std::size_t>(i)];
      if (t <= 0.0) continue;  // keep the t > 0 hemisphere
      const double s = std::sqrt(1.0 - t * t);
      for (int j = 0; j < nphi; ++j) {
        const double phi = (j + 0.5) * 2.0 * M_PI / nphi;
        rule.nodes.push_back({s * std::cos(phi), s * std::sin(phi), t});
        rule.weights.push_back(2.0 * gl.w[static_cast<std::size_t>(i)] * 2.0 * M_PI / nphi);
      }
    }
    return rule;
  }
  const int pairs = detail::stochastic_pairs(level);
  rule.designed = false;
  rule.exact_degree = 0;
  const std::vector<double> alphas = detail::rd_alphas(n);
  const double w = sphere_area(n) / pairs;
  rule.nodes.reserve(static_cast<std::size_t>(pairs));
  for (int k = 0; k < pairs; ++k) {
    Vec x(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      double u = 0.5 + alphas[static_cast<std::size_t>(j)] * (k + 1);
      u -= std::floor(u);
      if (u <= 1e-15) u = 1e-15;
      if (u >= 1.0 - 1e-16) u = 1.0 - 1e-16;
      x[static_cast<std::size_t>(j)] = detail::inv_norm_cdf(u);
    }
    double r = norm(x);
    if (r < 1e-12) {  // essentially impossible with the offset sequence
      x[0] = 1.0;
      r = 1.0;
    }
    Vec u = scaled(x, 1.0 / r);
    // canonical hemisphere representative: last nonzero coordinate positive
    for (std::size_t j = u.size(); j-- > 0;) {
      if (u[j] != 0.0) {
        if (u[j] < 0.0) u = negated(u);
        break;
      }
    }
    rule.nodes.push_back(std::move(u));
    rule.weights.push_back(w);
  }
  return rule;
}

// Shared immutable rules, built once per (n, level).
inline const SphericalRule& cached_sphere_rule(int n, QuadLevel level) {
  static std::map<std::pair<int, int>, std::unique_ptr<SphericalRule>> cache;
  static std::mutex mu;
  const std::pair<int, int> key{n, static_cast<int>(level)};
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<SphericalRule>(build_sphere_rule(n, level))).first;
  return *it->second;
}

struct SubsphereRule {
  Vec axis;            // xi
  Mat frame;           // orthonormal basis of xi^perp (n-1 vectors)
  SphericalRule inner; // rule on S^{n-2} in frame coordinates
  std::vector<Vec> nodes;      // mapped hemisphere nodes, orthogonal to axis
  std::vector<double> weights; // pair weights, sum to |S^{n-2}|
};

// Frame completed deterministically by the Householder reflection e_n -> xi.
inline SubsphereRule build_subsphere_rule(const Vec& xi, QuadLevel level) {
  check_unit(xi, 1e-9);
  const int n = static_cast<int>(xi.size());
  if (n < 2) throw std::domain_error("build_subsphere_rule: need n >= 2");
  SubsphereRule sub;
  sub.axis = xi;
  sub.frame = householder_complement(xi);
  if (n == 2) {
    // S^0 in the line xi^perp: a single antipodal pair, |S^0| = 2.
    sub.inner.n = 1;
    sub.nodes.push_back(sub.frame[0]);
    sub.weights.push_back(2.0);
    return sub;
  }
  sub.inner = cached_sphere_rule(n - 1, level);
  sub.nodes.reserve(sub.inner.nodes.size());
  for (const Vec& y : sub.inner.nodes) {
    Vec p(static_cast<std::size_t>(n), 0.0);
    for (std::size_t k = 0; k < sub.frame.size(); ++k)
      for (std::size_t i = 0; i < p.size(); ++i) p[i] += y[k] * sub.frame[k][i];
    sub.nodes.push_back(std::move(p));
  }
  sub.weights = sub.inner.weights;
  return sub;
}

namespace detail {

inline void check_finite(double v, std::size_t idx) {
  if (!std::isfinite(v))
    throw std::runtime_error("non-finite integrand value at node " + std::to_string(idx));
}

template <class F>
double integrate_pairs(F&& f, const std::vector<Vec>& nodes, const std::vector<double>& weights,
                       bool even_only) {
  std::vector<double> terms(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double v;
    if (even_only) {
      v = f(nodes[i]);
    } else {
      const double vp = f(nodes[i]);
      const double vm = f(negated(nodes[i]));
      v = 0.5 * (vp + vm);
    }
    check_finite(v, i);
    terms[i] = weights[i] * v;
  }
  return tree_sum(terms);
}

}  // namespace detail

// General integral; evaluates both members of each antipodal pair so that odd
// components cancel exactly.
template <class F>
double integrate(F&& f, const SphericalRule& rule) {
  return detail::integrate_pairs(std::forward<F>(f), rule.nodes, rule.weights, false);
}

// Integral of a function known to be even; one evaluation per pair.
template <class F>
double integrate_even(F&& f, const SphericalRule& rule) {
  return detail::integrate_pairs(std::forward<F>(f), rule.nodes, rule.weights, true);
}

template <class F>
double integrate(F&& f, const SubsphereRule& rule) {
  return detail::integrate_pairs(std::forward<F>(f), rule.nodes, rule.weights, false);
}

template <class F>
double integrate_even(F&& f, const SubsphereRule& rule) {
  return detail::integrate_pairs(std::forward<F>(f), rule.nodes, rule.weights, true);
}

enum class ExtremeMode { max, min };

struct ExtremumResult {
  Vec direction;
  double value = 0.0;
  ExtremeMode mode = ExtremeMode::max;
  int iterations = 0;
  double uncertainty = 0.0;
  bool refined = true;
};

struct ExtremizeBudget {
  int scan_points = -1;     // -1: all hemisphere nodes of the scan rule
  int polish_evals = 600;   // per Nelder-Mead start
  int polish_starts = 2;    // angularly separated scan candidates to polish
};

namespace detail {

struct NmOutcome {
  Vec direction;
  double value = 0.0;  // minimized objective value
  int iterations = 0;
  bool converged = false;
  double spread = 0.0;
};

// Nelder-Mead on a tangent chart at theta0, reprojected to the sphere;
// minimizes g.
template <class G>
NmOutcome nelder_mead_sphere(G&& g, const Vec& theta0, double g0, double h0, int max_evals) {
  const int d = static_cast<int>(theta0.size()) - 1;
  const Mat basis = householder_complement(theta0);
  auto lift = [&](const std::vector<double>& u) {
    Vec p(theta0);
    for (int k = 0; k < d; ++k)
      for (std::size_t i = 0; i < p.size(); ++i)
        p[i] += u[static_cast<std::size_t>(k)] * basis[static_cast<std::size_t>(k)][i];
    return normalized(p);
  };
  auto gu = [&](const std::vector<double>& u) { return g(lift(u)); };

  struct Pt {
    std::vector<double> u;
    double v;
  };
  std::vector<Pt> simplex;
  simplex.push_back({std::vector<double>(static_cast<std::size_t>(d), 0.0), g0});
  int evals = 0;
  for (int k = 0; k < d; ++k) {
    std::vector<double> u(static_cast<std::size_t>(d), 0.0);
    u[static_cast<std::size_t>(k)] = h0;
    simplex.push_back({u, gu(u)});
    ++evals;
  }
  auto order = [&]() {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Pt& a, const Pt& b) { return a.v < b.v; });
  };
  order();
  NmOutcome out;
  while (evals < max_evals) {
    ++out.iterations;
    std::vector<double> c(static_cast<std::size_t>(d), 0.0);
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k)
        c[static_cast<std::size_t>(k)] +=
            simplex[static_cast<std::size_t>(i)].u[static_cast<std::size_t>(k)] / d;
    const Pt& worst = simplex.back();
    auto combine = [&](double coef) {
      std::vector<double> u(static_cast<std::size_t>(d));
      for (int k = 0; k < d; ++k)
        u[static_cast<std::size_t>(k)] =
            c[static_cast<std::size_t>(k)] +
            coef * (c[static_cast<std::size_t>(k)] - worst.u[static_cast<std::size_t>(k)]);
      return u;
    };
    std::vector<double> ur = combine(1.0);
    double vr = gu(ur);
    ++evals;
    if (vr < simplex.front().v) {
      std::vector<double> ue = combine(2.0);
      double ve = gu(ue);
      ++evals;
      simplex.back() = (ve < vr) ? Pt{ue, ve} : Pt{ur, vr};
    } else if (vr < simplex[static_cast<std::size_t>(d - 1)].v) {
      simplex.back() = Pt{ur, vr};
    } else {
      std::vector<double> uc = combine(-0.5);
      double vc = gu(uc);
      ++evals;
      if (vc < worst.v) {
        simplex.back() = Pt{uc, vc};
      } else {
        for (int i = 1; i <= d; ++i) {
          for (int k = 0; k < d; ++k)
            simplex[static_cast<std::size_t>(i)].u[static_cast<std::size_t>(k)] =
                0.5 * (simplex[static_cast<std::size_t>(i)].u[static_cast<std::size_t>(k)] +
                       simplex[0].u[static_cast<std::size_t>(k)]);
          simplex[static_cast<std::size_t>(i)].v = gu(simplex[static_cast<std::size_t>(i)].u);
          ++evals;
        }
      }
    }
    order();
    double spread = 0.0;
    for (int k = 0; k < d; ++k)
      spread = std::max(spread, std::abs(simplex.back().u[static_cast<std::size_t>(k)] -
                                         simplex.front().u[static_cast<std::size_t>(k)]));
    out.spread = simplex.back().v - simplex.front().v;
    if (spread < 1e-10 &&
        out.spread < 1e-13 * (1.0 + std::abs(simplex.front().v))) {
      out.converged = true;
      break;
    }
  }
  out.direction = lift(simplex.front().u);
  out.value = simplex.front().v;
  return out;
}

}  // namespace detail

// Coarse scan over the rule's hemisphere nodes followed by Nelder-Mead polish
// from a few angularly separated candidates. The objective must be even; the
// result is best-found (a lower bound for max, upper bound for min).
template <class F>
ExtremumResult extremize(F&& f, const SphericalRule& scan_rule, ExtremeMode mode,
                         ExtremizeBudget budget = {}) {
  const double sgn = (mode == ExtremeMode::max) ? -1.0 : 1.0;  // minimize sgn*f
  auto g = [&](const Vec& u) { return sgn * f(u); };

  std::size_t count = scan_rule.nodes.size();
  if (budget.scan_points > 0)
    count = std::min<std::size_t>(count, static_cast<std::size_t>(budget.scan_points));
  if (count == 0) throw std::invalid_argument("extremize: empty scan rule");

  std::vector<double> vals(count);
  for (std::size_t i = 0; i < count; ++i) vals[i] = g(scan_rule.nodes[i]);

  // candidate starts: best nodes pairwise separated by a minimum angle
  std::vector<std::size_t> order_idx(count);
  for (std::size_t i = 0; i < count; ++i) order_idx[i] = i;
  std::stable_sort(order_idx.begin(), order_idx.end(),
                   [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
  const int want = std::max(1, budget.polish_starts);
  std::vector<std::size_t> starts;
  for (std::size_t idx : order_idx) {
    bool too_close = false;
    for (std::size_t s : starts)
      if (std::abs(dot(scan_rule.nodes[idx], scan_rule.nodes[s])) > 0.95) {
        too_close = true;
        break;
      }
    if (!too_close) starts.push_back(idx);
    if (static_cast<int>(starts.size()) >= want) break;
  }

  double h0 = 0.25;
  const int d = scan_rule.n - 1;
  if (scan_rule.designed && scan_rule.exact_degree > 0) h0 = 2.0 / scan_rule.exact_degree;
  else if (!scan_rule.designed) h0 = 1.5 * std::pow(1.0 / static_cast<double>(count), 1.0 / d);

  detail::NmOutcome best_out;
  bool have = false;
  int total_iters = 0;
  for (std::size_t s : starts) {
    auto out = detail::nelder_mead_sphere(g, scan_rule.nodes[s], vals[s], h0, budget.polish_evals);
    total_iters += out.iterations;
    if (!have || out.value < best_out.value) {
      best_out = out;
      have = true;
    }
  }

  ExtremumResult res;
  res.mode = mode;
  res.iterations = total_iters;
  res.refined = best_out.converged;
  res.direction = best_out.direction;
  res.value = f(res.direction);  // re-evaluate exactly at the reported direction
  res.uncertainty = std::abs(best_out.spread) + 1e-12 * (1.0 + std::abs(best_out.value));
  // never worse than the raw grid optimum
  const std::size_t best_grid = order_idx.front();
  const double grid_val = -sgn * vals[best_grid];
  if ((mode == ExtremeMode::max && grid_val > res.value) ||
      (mode == ExtremeMode::min && grid_val < res.value)) {
    res.direction = scan_rule.nodes[best_grid];
    res.value = f(res.direction);
  }
  return res;
}

// 1-D extremization of an even zonal profile F(t) over t in [0,1]:
// dense deterministic grid, then golden-section refinement.
struct ZonalExtremum {
  double t = 0.0;
  double value = 0.0;
};

template <class F>
ZonalExtremum extremize_zonal_profile(F&& f, ExtremeMode mode, int grid = 2049) {
  const double sgn = (mode == ExtremeMode::max) ? -1.0 : 1.0;
  auto g = [&](double t) { return sgn * f(t); };
  double best_t = 0.0, best_v = g(0.0);
  for (int i = 1; i < grid; ++i) {
    const double t = static_cast<double>(i) / (grid - 1);
    const double v = g(t);
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
  }
  double lo = std::max(0.0, best_t - 1.0 / (grid - 1));
  double hi = std::min(1.0, best_t + 1.0 / (grid - 1));
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = g(x1), f2 = g(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - gr * (hi - lo); f1 = g(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + gr * (hi - lo); f2 = g(x2);
    }
  }
  const double tm = 0.5 * (lo + hi);
  ZonalExtremum ze;
  ze.t = (g(tm) < best_v) ? tm : best_t;
  ze.value = f(ze.t);
  return ze;
}

}  // namespace cvgeom

#endif
