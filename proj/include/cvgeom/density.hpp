// Even continuous densities on R^n for the measure-comparison functionals.
#ifndef CVGEOM_DENSITY_HPP
#define CVGEOM_DENSITY_HPP

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cvgeom/la.hpp"

namespace cvgeom {

// All stock variants are radial, so evaluation is driven by |x|; evenness
// comes for free and is also what the measure functionals exploit.
class Density {
 public:
  static Density constant(int n, double c) {
    if (c < 0.0) throw std::domain_error("constant density must be nonnegative");
    Density d(n, "constant(c=" + fmt(c) + ")");
    d.radial_ = [c](double) { return c; };
    return d;
  }
  static Density gaussian(int n, double sigma) {
    if (sigma <= 0.0) throw std::domain_error("gaussian sigma must be positive");
    Density d(n, "gaussian(sigma=" + fmt(sigma) + ")");
    const double s2 = 2.0 * sigma * sigma;
    d.radial_ = [s2](double r) { return std::exp(-r * r / s2); };
    return d;
  }
  static Density radial_power(int n, double s) {
    if (s <= -n) throw std::domain_error("radial power requires s > -n");
    Density d(n, "radial_power(s=" + fmt(s) + ")");
    d.radial_ = [s](double r) { return r == 0.0 && s < 0.0 ? 0.0 : std::pow(r, s); };
    return d;
  }
  // smooth bump concentrated near |x| = r0
  static Density shell(int n, double r0, double width) {
    if (r0 <= 0.0 || width <= 0.0) throw std::domain_error("shell needs positive r0 and width");
    Density d(n, "shell(r0=" + fmt(r0) + ", w=" + fmt(width) + ")");
    d.radial_ = [r0, width](double r) {
      const double z = (r - r0) / width;
      return std::exp(-0.5 * z * z);
    };
    // radial quadrature cannot resolve a narrow bump on a single panel;
    // publish breakpoints so the integrator can split there
    d.breakpoints_ = {r0 - 6.0 * width, r0 + 6.0 * width};
    return d;
  }

  int dim() const { return n_; }
  double operator()(const Vec& x) const { return radial_(norm(x)); }
  double at_radius(double r) const { return radial_(r); }
  const std::vector<double>& radial_breakpoints() const { return breakpoints_; }
  const std::string& describe() const { return label_; }

 private:
  Density(int n, std::string label) : n_(n), label_(std::move(label)) {
    if (n < 2) throw std::domain_error("density dimension must be >= 2");
  }
  static std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  }

  int n_;
  std::string label_;
  std::function<double(double)> radial_;
  std::vector<double> breakpoints_;
};

}  // namespace cvgeom

#endif
