// Special functions used across the library: log-gamma with sign, Gauss-
// Legendre nodes, Gegenbauer and normalized associated Legendre recurrences.
#ifndef CVGEOM_SPECFUN_HPP
#define CVGEOM_SPECFUN_HPP

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cvgeom {

// Gamma(x) for real non-pole x, including negative half-integers.
// std::lgamma carries 13+ significant digits on this range.
inline double gamma_signed(double x) {
  if (x > 0.0) return std::exp(std::lgamma(x));
  if (x == std::floor(x)) throw std::domain_error("gamma pole at non-positive integer");
  const double mag = std::exp(std::lgamma(x));
  const long k = static_cast<long>(std::floor(x));
  return (k % 2 == 0) ? mag : -mag;  // sign of Gamma alternates per unit interval below 0
}

// exp(lgamma(a) - lgamma(b)) with signs, valid when neither hits a pole.
inline double gamma_ratio(double a, double b) {
  auto sign_of = [](double x) -> int {
    if (x > 0.0) return 1;
    const long k = static_cast<long>(std::floor(x));
    return (k % 2 == 0) ? 1 : -1;
  };
  if ((a <= 0.0 && a == std::floor(a)) || (b <= 0.0 && b == std::floor(b)))
    throw std::domain_error("gamma pole in ratio");
  const double r = std::exp(std::lgamma(a) - std::lgamma(b));
  return sign_of(a) * sign_of(b) * r;
}

struct Quad1D {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_m.
inline Quad1D gauss_legendre(int m) {
  if (m < 1) throw std::domain_error("gauss_legendre: need m >= 1");
  Quad1D q;
  q.x.resize(static_cast<std::size_t>(m));
  q.w.resize(static_cast<std::size_t>(m));
  const int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    q.x[static_cast<std::size_t>(i)] = -x;
    q.w[static_cast<std::size_t>(i)] = w;
    q.x[static_cast<std::size_t>(m - 1 - i)] = x;
    q.w[static_cast<std::size_t>(m - 1 - i)] = w;
  }
  return q;
}

// Shared immutable node tables; the Newton solve runs once per order.
inline const Quad1D& cached_gauss_legendre(int m) {
  static std::map<int, std::unique_ptr<Quad1D>> cache;
  static std::shared_mutex mu;
  {
    std::shared_lock<std::shared_mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return *it->second;
  }
  std::unique_lock<std::shared_mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end())
    it = cache.emplace(m, std::make_unique<Quad1D>(gauss_legendre(m))).first;
  return *it->second;
}

// Gauss-Legendre mapped to [a,b].
inline Quad1D gauss_legendre(int m, double a, double b) {
  const Quad1D& base = cached_gauss_legendre(m);
  Quad1D q;
  q.x.resize(base.x.size());
  q.w.resize(base.w.size());
  const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
  for (std::size_t i = 0; i < base.x.size(); ++i) {
    q.x[i] = mid + rad * base.x[i];
    q.w[i] = base.w[i] * rad;
  }
  return q;
}

// Gegenbauer C_m^lambda(t) for lambda > 0; lambda == 0 degenerates and the
// zonal basis for n = 2 uses Chebyshev T_m instead.
inline double gegenbauer(int m, double lambda, double t) {
  if (m == 0) return 1.0;
  if (lambda == 0.0) {  // Chebyshev T_m
    double p0 = 1.0, p1 = t;
    for (int k = 2; k <= m; ++k) {
      const double p2 = 2.0 * t * p1 - p0;
      p0 = p1;
      p1 = p2;
    }
    return p1;
  }
  double p0 = 1.0, p1 = 2.0 * lambda * t;
  for (int k = 2; k <= m; ++k) {
    const double p2 = (2.0 * (k + lambda - 1.0) * t * p1 - (k + 2.0 * lambda - 2.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

// Value at t = 1: C_m^lambda(1) = binom(m + 2*lambda - 1, m).
inline double gegenbauer_at_one(int m, double lambda) {
  if (m == 0) return 1.0;
  if (lambda == 0.0) return 1.0;  // T_m(1) = 1
  return gamma_ratio(m + 2.0 * lambda, 2.0 * lambda) / std::exp(std::lgamma(m + 1.0));
}

// Fully normalized associated Legendre \bar P_l^m(x) for real spherical
// harmonics on S^2: Y_{l,0} = K \bar P_l^0, Y_{l,|m|} split into cos/sin.
// Normalization: int_{-1}^{1} (\bar P_l^m)^2 dx = (2 - delta_{m0}) ... we use
// the geodesy-style convention below and assemble orthonormal harmonics in
// spectral.hpp where the 1/sqrt(2pi) factors are attached.
inline void normalized_assoc_legendre(int lmax, double x, std::vector<std::vector<double>>& P) {
  // P[l][m] = sqrt((2l+1)/2 * (l-m)!/(l+m)!) P_l^m(x), stable forward recurrence.
  P.assign(static_cast<std::size_t>(lmax + 1), {});
  for (int l = 0; l <= lmax; ++l) P[static_cast<std::size_t>(l)].assign(static_cast<std::size_t>(l + 1), 0.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  P[0][0] = std::sqrt(0.5);
  if (lmax == 0) return;
  // diagonal: \bar P_m^m
  for (int m = 1; m <= lmax; ++m)
    P[static_cast<std::size_t>(m)][static_cast<std::size_t>(m)] =
        P[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(m - 1)] * s *
        std::sqrt((2.0 * m + 1.0) / (2.0 * m));
  // off-diagonal
  for (int m = 0; m < lmax; ++m) {
    P[static_cast<std::size_t>(m + 1)][static_cast<std::size_t>(m)] =
        P[static_cast<std::size_t>(m)][static_cast<std::size_t>(m)] * x * std::sqrt(2.0 * m + 3.0);
    for (int l = m + 2; l <= lmax; ++l) {
      const double a = std::sqrt((2.0 * l + 1.0) * (2.0 * l - 1.0) /
                                 (static_cast<double>(l - m) * (l + m)));
      const double b = std::sqrt((2.0 * l + 1.0) * (l - m - 1.0) * (l + m - 1.0) /
                                 (static_cast<double>(l - m) * (l + m) * (2.0 * l - 3.0)));
      P[static_cast<std::size_t>(l)][static_cast<std::size_t>(m)] =
          a * x * P[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(m)] -
          b * P[static_cast<std::size_t>(l - 2)][static_cast<std::size_t>(m)];
    }
  }
}

}  // namespace cvgeom

#endif
