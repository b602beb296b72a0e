// Dimensional constants and the explicit constants of the inequality
// statements, all evaluated through log-gamma to comfortably exceed the
// accuracy of any quadrature in the library.
#ifndef CVGEOM_CONSTANTS_HPP
#define CVGEOM_CONSTANTS_HPP

#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>

#include "cvgeom/specfun.hpp"

namespace cvgeom {

// Volume of the unit Euclidean ball B_2^n = pi^{n/2} / Gamma(n/2 + 1).
inline double ball_volume(int n) {
  if (n <= 0) throw std::domain_error("ball_volume: dimension must be positive");
  return std::exp(0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n + 1.0));
}

namespace detail {
// valid down to n = 1 (|S^0| = 2); the public operation keeps its n >= 2
// contract but interior formulas need the extension
inline double sphere_area_ext(int n) {
  if (n < 1) throw std::domain_error("sphere_area: need n >= 1");
  return std::exp(std::log(2.0) + 0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n));
}
}  // namespace detail

// Surface area |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2) = n |B_2^n|.
inline double sphere_area(int n) {
  if (n < 2) throw std::domain_error("sphere_area: need n >= 2");
  return detail::sphere_area_ext(n);
}

// c_n = |B_2^n|^{(n-1)/n} / |B_2^{n-1}|, strictly between 1/sqrt(e) and 1.
inline double cn_constant(int n) {
  if (n < 2) throw std::domain_error("cn_constant: need n >= 2");
  const double ln_bn = 0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n + 1.0);
  const double ln_bn1 = 0.5 * (n - 1) * std::log(M_PI) - std::lgamma(0.5 * (n - 1) + 1.0);
  return std::exp((n - 1.0) / n * ln_bn - ln_bn1);
}

struct DimConstants {
  int n = 0;
  double ball_volume = 0.0;
  double sphere_area = 0.0;
  double c_n = 0.0;
};

inline DimConstants dim_constants(int n) {
  return DimConstants{n, ball_volume(n), sphere_area(n), cn_constant(n)};
}

namespace detail {

inline void require_alpha_window(double alpha, double lo, double hi, const std::string& who) {
  if (!(alpha >= lo && alpha < hi))
    throw std::domain_error(who + ": alpha must lie in [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + ")");
}

inline double named_constant_impl(const std::string& name, int n, std::optional<double> alpha) {
  auto need_alpha = [&]() -> double {
    if (!alpha) throw std::domain_error("constant '" + name + "' requires alpha");
    return *alpha;
  };
  if (name == "thm3") {
    if (n < 2) throw std::domain_error("thm3: need n >= 2");
    const double a = need_alpha();
    require_alpha_window(a, n - 4.0, n - 1.0, "thm3");
    const double num = std::sqrt(M_PI) * (n - 1.0) * gamma_signed(0.5 * (n - a - 1.0));
    const double den = std::pow(2.0, a + 1.0 / n) * std::pow(static_cast<double>(n), (n - 1.0) / n) *
                       gamma_signed(0.5 * (a + 1.0)) *
                       std::pow(gamma_signed(0.5 * n), (n - 1.0) / n);
    return num / den;
  }
  if (name == "thm4-factor") {
    if (n < 2) throw std::domain_error("thm4-factor: need n >= 2");
    const double a = need_alpha();
    require_alpha_window(a, n - 4.0, n - 1.0, "thm4-factor");
    const double num = M_PI * (n - 1.0) * gamma_signed(0.5 * (n - a - 1.0));
    const double den = n * std::pow(2.0, a) * gamma_signed(0.5 * (a + 1.0)) * gamma_signed(0.5 * n);
    return num / den;
  }
  if (name == "thm2-factor") {
    if (n < 2) throw std::domain_error("thm2-factor: need n >= 2");
    return std::sqrt(2.0 * M_PI / (n + 1.0));
  }
  if (name == "thm6-factor") {
    if (n < 2) throw std::domain_error("thm6-factor: need n >= 2");
    return std::sqrt(2.0 * M_PI / n);
  }
  if (name == "thm7-factor") {
    if (n < 3) throw std::domain_error("thm7-factor: need n >= 3");
    const double a = need_alpha();
    require_alpha_window(a, static_cast<double>(n), n + 1.0, "thm7-factor");
    const double num = gamma_signed(0.5 * (n - a + 1.0)) * sphere_area(n);
    const double den = std::pow(2.0, a + 1.0) * std::pow(M_PI, 0.5 * n) *
                       gamma_signed(0.5 * (a + 1.0)) * n;
    return num / den;
  }
  if (name == "cor2") {
    if (n < 3) throw std::domain_error("cor2: need n >= 3");
    return ball_volume(n - 1) / (ball_volume(n - 2) * std::pow(ball_volume(n), 1.0 / n));
  }
  if (name == "meas-factor") {
    if (n < 2) throw std::domain_error("meas-factor: need n >= 2");
    return n / (n - 1.0) * cn_constant(n);
  }
  throw std::domain_error("unknown constant name '" + name + "'");
}

}  // namespace detail

// Registry lookup with a concurrent-safe cache; alpha participates in the key
// at full double precision.
inline double named_constant(const std::string& name, int n, std::optional<double> alpha = {}) {
  using Key = std::tuple<std::string, int, double>;
  static std::map<Key, double> cache;
  static std::mutex mu;
  const Key key{name, n, alpha.value_or(-1e308)};  // sentinel keeps map ordering strict
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const double v = detail::named_constant_impl(name, n, alpha);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, v);
  return v;
}

}  // namespace cvgeom

#endif
