// Origin-symmetric star and convex bodies: radial/support evaluation,
// constructive operators, and surface-area measures.
//
// StarBody is a value handle over an immutable implementation; every
// evaluation is pure and safe to share across threads. Convexity is a
// runtime property of the variant (ConvexBody is an alias; operations that
// need support functions check and throw capability_error otherwise).
#ifndef CVGEOM_BODIES_HPP
#define CVGEOM_BODIES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cvgeom/constants.hpp"
#include "cvgeom/errors.hpp"
#include "cvgeom/la.hpp"
#include "cvgeom/quadrature.hpp"
#include "cvgeom/specfun.hpp"

namespace cvgeom {

struct SurfaceMeasure {
  bool discrete = true;
  std::vector<Vec> normals;     // full +/- list
  std::vector<double> weights;  // per listed normal
  std::function<double(const Vec&)> density;  // curvature function when !discrete

  double discrete_total() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }
};

namespace detail {

// Support function of a body of revolution: the maximizer lies in the plane
// spanned by the axis and the query direction, so this is a 1-D problem in
// the polar angle.
template <class Profile>
double zonal_support(Profile&& rho_of_t, double cos_psi) {
  const double sin_psi = std::sqrt(std::max(0.0, 1.0 - cos_psi * cos_psi));
  auto val = [&](double t) {
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    return rho_of_t(t) * (t * cos_psi + s * sin_psi);
  };
  double best_t = -1.0, best = val(-1.0);
  const int grid = 1024;
  for (int i = 1; i <= grid; ++i) {
    const double t = -1.0 + 2.0 * i / grid;
    const double v = val(t);
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  double lo = std::max(-1.0, best_t - 2.0 / grid), hi = std::min(1.0, best_t + 2.0 / grid);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = val(x1), f2 = val(x2);
  for (int it = 0; it < 60 && hi - lo > 1e-13; ++it) {
    if (f1 > f2) {
      hi = x2; x2 = x1; f2 = f1; x1 = hi - gr * (hi - lo); f1 = val(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2; x2 = lo + gr * (hi - lo); f2 = val(x2);
    }
  }
  return std::max(best, val(0.5 * (lo + hi)));
}

}  // namespace detail

class BodyImpl {
 public:
  explicit BodyImpl(int n) : n_(n) {}
  virtual ~BodyImpl() = default;

  int dim() const { return n_; }
  virtual double radial(const Vec& u) const = 0;
  virtual bool convex() const = 0;
  virtual bool has_support() const { return convex(); }
  virtual double support(const Vec& u) const {
    throw capability_error("support function unavailable for " + describe());
  }
  virtual bool has_surface_measure() const { return false; }
  virtual SurfaceMeasure surface_measure() const {
    throw capability_error("surface measure unavailable for " + describe());
  }
  virtual std::optional<Vec> zonal_axis() const { return std::nullopt; }
  virtual std::optional<double> exact_volume() const { return std::nullopt; }
  virtual std::string describe() const = 0;

  bool intersection_flag = false;  // intersection body by construction
  bool projection_flag = false;    // projection body by construction

 private:
  int n_;
};

class StarBody {
 public:
  StarBody() = default;
  explicit StarBody(std::shared_ptr<const BodyImpl> impl) : impl_(std::move(impl)) {}

  bool valid() const { return impl_ != nullptr; }
  int dim() const { return impl_->dim(); }

  double radial(const Vec& u) const {
    check_unit(u, 1e-9);
    return impl_->radial(u);
  }
  // homogeneous degree-1 extension of ||.||_K; reciprocal of radial on S^{n-1}
  double minkowski_functional(const Vec& x) const {
    const double r = norm(x);
    if (r == 0.0) return 0.0;
    return r / impl_->radial(scaled(x, 1.0 / r));
  }
  bool is_convex() const { return impl_->convex(); }
  bool has_support() const { return impl_->has_support(); }
  double support(const Vec& u) const {
    check_unit(u, 1e-9);
    return impl_->support(u);
  }
  bool has_surface_measure() const { return impl_->has_surface_measure(); }
  SurfaceMeasure surface_measure() const { return impl_->surface_measure(); }
  std::optional<Vec> zonal_axis() const { return impl_->zonal_axis(); }
  std::optional<double> exact_volume() const { return impl_->exact_volume(); }
  std::string describe() const { return impl_->describe(); }
  bool intersection_by_construction() const { return impl_->intersection_flag; }
  bool projection_by_construction() const { return impl_->projection_flag; }

  const BodyImpl& impl() const { return *impl_; }
  std::shared_ptr<const BodyImpl> impl_ptr() const { return impl_; }

 private:
  std::shared_ptr<const BodyImpl> impl_;
};

using ConvexBody = StarBody;

// ---------------------------------------------------------------------------
// variants

class BallImpl final : public BodyImpl {
 public:
  BallImpl(int n, double r) : BodyImpl(n), r_(r) {
    if (r <= 0.0) throw std::domain_error("ball radius must be positive");
    intersection_flag = true;
    projection_flag = true;
  }
  double radial(const Vec&) const override { return r_; }
  bool convex() const override { return true; }
  double support(const Vec&) const override { return r_; }
  bool has_surface_measure() const override { return true; }
  SurfaceMeasure surface_measure() const override {
    SurfaceMeasure m;
    m.discrete = false;
    const double d = std::pow(r_, dim() - 1.0);
    m.density = [d](const Vec&) { return d; };
    return m;
  }
  std::optional<Vec> zonal_axis() const override { return unit_axis(dim(), dim() - 1); }
  std::optional<double> exact_volume() const override {
    return ball_volume(dim()) * std::pow(r_, dim());
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "ball(n=" << dim() << ", r=" << r_ << ")";
    return os.str();
  }
  double radius() const { return r_; }

 private:
  double r_;
};

class LpBallImpl final : public BodyImpl {
 public:
  LpBallImpl(int n, double p) : BodyImpl(n), p_(p) {
    if (!(p > 0.0)) throw std::domain_error("lp ball requires p > 0");
    intersection_flag = (p <= 2.0);  // unit balls of subspaces of L_p, p <= 2
    projection_flag = (p == 2.0);
  }
  double radial(const Vec& u) const override {
    if (std::isinf(p_)) {
      double m = 0.0;
      for (double x : u) m = std::max(m, std::abs(x));
      return 1.0 / m;
    }
    double s = 0.0;
    for (double x : u) s += std::pow(std::abs(x), p_);
    return std::pow(s, -1.0 / p_);
  }
  bool convex() const override { return p_ >= 1.0; }
  double support(const Vec& u) const override {
    if (!convex()) throw capability_error("support undefined for p < 1");
    if (std::isinf(p_)) {  // dual exponent 1
      double s = 0.0;
      for (double x : u) s += std::abs(x);
      return s;
    }
    if (p_ == 1.0) {  // dual exponent infinity
      double m = 0.0;
      for (double x : u) m = std::max(m, std::abs(x));
      return m;
    }
    const double q = p_ / (p_ - 1.0);
    double s = 0.0;
    for (double x : u) s += std::pow(std::abs(x), q);
    return std::pow(s, 1.0 / q);
  }
  std::optional<Vec> zonal_axis() const override {
    if (p_ == 2.0) return unit_axis(dim(), dim() - 1);
    return std::nullopt;
  }
  std::optional<double> exact_volume() const override {
    if (std::isinf(p_)) return std::pow(2.0, dim());
    const int n = dim();
    return std::exp(n * (std::log(2.0) + std::lgamma(1.0 + 1.0 / p_)) -
                    std::lgamma(1.0 + n / p_));
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "lp_ball(n=" << dim() << ", p=" << p_ << ")";
    return os.str();
  }
  double p() const { return p_; }

 private:
  double p_;
};

class EllipsoidImpl final : public BodyImpl {
 public:
  EllipsoidImpl(int n, Vec axes) : BodyImpl(n), a_(std::move(axes)) {
    if (static_cast<int>(a_.size()) != n) throw std::domain_error("ellipsoid needs n semi-axes");
    for (double a : a_)
      if (a <= 0.0) throw std::domain_error("semi-axes must be positive");
    intersection_flag = true;  // linear image of the Euclidean ball
    projection_flag = true;    // projection body of another ellipsoid
  }
  double radial(const Vec& u) const override {
    double s = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) s += u[i] * u[i] / (a_[i] * a_[i]);
    return 1.0 / std::sqrt(s);
  }
  bool convex() const override { return true; }
  double support(const Vec& u) const override {
    double s = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i) s += a_[i] * a_[i] * u[i] * u[i];
    return std::sqrt(s);
  }
  bool has_surface_measure() const override { return true; }
  SurfaceMeasure surface_measure() const override {
    SurfaceMeasure m;
    m.discrete = false;
    double prod2 = 1.0;
    for (double a : a_) prod2 *= a * a;
    Vec a = a_;
    const int n = dim();
    m.density = [prod2, a, n](const Vec& u) {
      double h2 = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) h2 += a[i] * a[i] * u[i] * u[i];
      return prod2 * std::pow(h2, -0.5 * (n + 1.0));
    };
    return m;
  }
  std::optional<Vec> zonal_axis() const override {
    // a body of revolution: all but one semi-axis equal. Scanned from the
    // last axis down so round ellipsoids agree with the ball's convention.
    const std::size_t n = a_.size();
    for (std::size_t k = n; k-- > 0;) {
      bool ok = true;
      double ref = -1.0;
      for (std::size_t i = 0; i < n && ok; ++i) {
        if (i == k) continue;
        if (ref < 0.0) ref = a_[i];
        else if (std::abs(a_[i] - ref) > 1e-12 * ref) ok = false;
      }
      if (ok) return unit_axis(dim(), static_cast<int>(k));
    }
    return std::nullopt;
  }
  std::optional<double> exact_volume() const override {
    double p = ball_volume(dim());
    for (double a : a_) p *= a;
    return p;
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "ellipsoid(n=" << dim() << ", axes=[";
    for (std::size_t i = 0; i < a_.size(); ++i) os << (i ? "," : "") << a_[i];
    os << "])";
    return os.str();
  }
  const Vec& axes() const { return a_; }

 private:
  Vec a_;
};

// Origin-symmetric H-representation polytope. Vertices are enumerated at
// construction (n <= 5) so support evaluation is a max over vertices.
class PolytopeImpl final : public BodyImpl {
 public:
  PolytopeImpl(int n, std::vector<Vec> normals, std::vector<double> offsets)
      : BodyImpl(n) {
    if (normals.size() != offsets.size()) throw std::domain_error("facet list mismatch");
    for (std::size_t i = 0; i < normals.size(); ++i) {
      const double len = norm(normals[i]);
      if (len <= 0.0 || offsets[i] <= 0.0)
        throw std::domain_error("facets need nonzero normals and positive offsets");
      push_facet(scaled(normals[i], 1.0 / len), offsets[i] / len);
    }
    symmetrize();
    enumerate_vertices();
  }
  double radial(const Vec& u) const override {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < normals_.size(); ++i) {
      const double d = dot(normals_[i], u);
      if (d > 1e-14) best = std::min(best, offsets_[i] / d);
    }
    if (!std::isfinite(best)) throw numerical_failure("polytope unbounded in direction");
    return best;
  }
  bool convex() const override { return true; }
  double support(const Vec& u) const override {
    double best = 0.0;
    for (const Vec& v : vertices_) best = std::max(best, std::abs(dot(v, u)));
    return best;
  }
  bool has_surface_measure() const override { return dim() <= 3; }
  SurfaceMeasure surface_measure() const override;
  std::optional<double> exact_volume() const override {
    if (dim() > 3) return std::nullopt;
    // divergence theorem: |K| = (1/n) sum b_i area_i
    SurfaceMeasure m = surface_measure();
    double s = 0.0;
    for (std::size_t i = 0; i < m.normals.size(); ++i) {
      // match offset of this facet
      for (std::size_t k = 0; k < normals_.size(); ++k)
        if (dot(m.normals[i], normals_[k]) > 1.0 - 1e-9) {
          s += offsets_[k] * m.weights[i];
          break;
        }
    }
    return s / dim();
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "polytope(n=" << dim() << ", facets=" << normals_.size() << ")";
    return os.str();
  }
  const std::vector<Vec>& facet_normals() const { return normals_; }
  const std::vector<double>& facet_offsets() const { return offsets_; }
  const std::vector<Vec>& vertices() const { return vertices_; }

 private:
  void push_facet(Vec u, double b) {
    for (std::size_t i = 0; i < normals_.size(); ++i)
      if (dot(normals_[i], u) > 1.0 - 1e-12) return;  // duplicate
    normals_.push_back(std::move(u));
    offsets_.push_back(b);
  }
  void symmetrize() {
    const std::size_t m = normals_.size();
    for (std::size_t i = 0; i < m; ++i) push_facet(negated(normals_[i]), offsets_[i]);
  }
  void enumerate_vertices();

  std::vector<Vec> normals_;
  std::vector<double> offsets_;
  std::vector<Vec> vertices_;
};

// Zonotope: Minkowski sum of segments [-g_j, g_j]. Facets are derived from
// (n-1)-subsets of generators via the generalized cross product; parallel
// facets merge.
class ZonotopeImpl final : public BodyImpl {
 public:
  ZonotopeImpl(int n, std::vector<Vec> generators)
      : BodyImpl(n), gens_(std::move(generators)) {
    for (const Vec& g : gens_)
      if (static_cast<int>(g.size()) != n) throw std::domain_error("generator dimension mismatch");
    projection_flag = true;
    // fewer than n-1 generators gives a lower-dimensional zonotope (the
    // empty list is the origin); those remain valid Minkowski summands but
    // have no radial function of their own
    if (static_cast<int>(gens_.size()) >= n - 1) build_facets();
  }
  double radial(const Vec& u) const override {
    if (facet_normals_.empty())
      throw numerical_failure("zonotope is lower-dimensional: no radial function");
    // facet list holds one normal per antipodal pair
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < facet_normals_.size(); ++i) {
      const double d = std::abs(dot(facet_normals_[i], u));
      if (d > 1e-14) best = std::min(best, facet_offsets_[i] / d);
    }
    if (!std::isfinite(best)) throw numerical_failure("zonotope degenerate in direction");
    return best;
  }
  bool convex() const override { return true; }
  double support(const Vec& u) const override {
    double s = 0.0;
    for (const Vec& g : gens_) s += std::abs(dot(g, u));
    return s;
  }
  bool has_surface_measure() const override { return true; }
  SurfaceMeasure surface_measure() const override {
    SurfaceMeasure m;
    m.discrete = true;
    for (std::size_t i = 0; i < facet_normals_.size(); ++i) {
      m.normals.push_back(facet_normals_[i]);
      m.weights.push_back(facet_areas_[i]);
      m.normals.push_back(negated(facet_normals_[i]));
      m.weights.push_back(facet_areas_[i]);
    }
    return m;
  }
  std::optional<double> exact_volume() const override {
    // 2^n sum over n-subsets of |det|
    const int n = dim();
    const int k = static_cast<int>(gens_.size());
    if (k < n) return 0.0;
    double s = 0.0;
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
      Mat mm;
      for (int i = 0; i < n; ++i) mm.push_back(gens_[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
      s += std::abs(det_destructive(mm));
      int pos = n - 1;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == k - n + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < n; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
    return std::pow(2.0, n) * s;
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "zonotope(n=" << dim() << ", k=" << gens_.size() << ")";
    return os.str();
  }
  const std::vector<Vec>& generators() const { return gens_; }

 private:
  void build_facets();

  std::vector<Vec> gens_;
  std::vector<Vec> facet_normals_;   // one per +/- pair
  std::vector<double> facet_offsets_;
  std::vector<double> facet_areas_;  // per single facet
};

// Ball with an even zonal radial perturbation in the Gegenbauer basis
// (profiles normalized to 1 at the pole). A sampled meridian convexity test
// (necessary condition only) runs at construction and is recorded.
class ZonalBallImpl final : public BodyImpl {
 public:
  ZonalBallImpl(int n, double r0, std::map<int, double> coeffs)
      : BodyImpl(n), r0_(r0), coeffs_(std::move(coeffs)) {
    if (r0 <= 0.0) throw std::domain_error("zonal ball base radius must be positive");
    for (const auto& [m, t] : coeffs_) {
      (void)t;
      if (m < 2 || m % 2 != 0) throw std::domain_error("zonal degrees must be even and >= 2");
    }
    const double lambda = 0.5 * (n - 2.0);
    for (const auto& [m, t] : coeffs_)
      norms_.emplace(m, gegenbauer_at_one(m, lambda));
    double mn = 1e300;
    for (int i = 0; i <= 4096; ++i) {
      const double t = -1.0 + 2.0 * i / 4096.0;
      mn = std::min(mn, profile(t));
    }
    if (mn <= 0.0) throw std::domain_error("zonal perturbation destroys star-shapedness");
    convex_ = meridian_convexity_test();
  }
  double profile(double t) const {
    const double lambda = 0.5 * (dim() - 2.0);
    double v = r0_;
    for (const auto& [m, c] : coeffs_)
      v += c * gegenbauer(m, lambda, t) / norms_.at(m);
    return v;
  }
  double radial(const Vec& u) const override { return profile(u[u.size() - 1]); }
  bool convex() const override { return convex_; }
  double support(const Vec& u) const override {
    if (!convex_) throw capability_error("support undefined: meridian convexity test failed");
    return detail::zonal_support([this](double t) { return profile(t); }, u[u.size() - 1]);
  }
  std::optional<Vec> zonal_axis() const override { return unit_axis(dim(), dim() - 1); }
  std::optional<double> exact_volume() const override {
    // 1-D polar integral in the meridian angle
    const int n = dim();
    Quad1D gl = gauss_legendre(512, 0.0, M_PI);
    double s = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      const double phi = gl.x[i];
      s += gl.w[i] * std::pow(profile(std::cos(phi)), n) * std::pow(std::sin(phi), n - 2.0);
    }
    return detail::sphere_area_ext(n - 1) / n * s;
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "zonal_ball(n=" << dim() << ", r0=" << r0_ << ", coeffs={";
    bool first = true;
    for (const auto& [m, c] : coeffs_) {
      os << (first ? "" : ",") << m << ":" << c;
      first = false;
    }
    os << "})";
    return os.str();
  }
  bool convexity_checked() const { return convex_; }
  const std::map<int, double>& coefficients() const { return coeffs_; }
  double base_radius() const { return r0_; }

 private:
  bool meridian_convexity_test() const {
    // rho^2 + 2 rho'^2 - rho rho'' >= 0 along great circles through the pole
    const int grid = 4096;
    const double h = M_PI / grid;
    for (int i = 0; i <= grid; ++i) {
      const double phi = i * h;
      const double r = profile(std::cos(phi));
      const double rp = (profile(std::cos(phi + h)) - profile(std::cos(phi - h))) / (2 * h);
      const double rpp =
          (profile(std::cos(phi + h)) - 2 * r + profile(std::cos(phi - h))) / (h * h);
      if (r * r + 2 * rp * rp - r * rpp < -1e-7 * r * r) return false;
    }
    return true;
  }

  double r0_;
  std::map<int, double> coeffs_;
  std::map<int, double> norms_;
  bool convex_ = false;
};

class DilateImpl final : public BodyImpl {
 public:
  DilateImpl(StarBody base, double beta) : BodyImpl(base.dim()), base_(std::move(base)), beta_(beta) {
    if (beta <= 0.0) throw std::domain_error("dilation factor must be positive");
    intersection_flag = base_.intersection_by_construction();
    projection_flag = base_.projection_by_construction();
  }
  double radial(const Vec& u) const override { return beta_ * base_.radial(u); }
  bool convex() const override { return base_.is_convex(); }
  bool has_support() const override { return base_.has_support(); }
  double support(const Vec& u) const override { return beta_ * base_.support(u); }
  bool has_surface_measure() const override { return base_.has_surface_measure(); }
  SurfaceMeasure surface_measure() const override {
    SurfaceMeasure m = base_.surface_measure();
    const double f = std::pow(beta_, dim() - 1.0);
    if (m.discrete) {
      for (double& w : m.weights) w *= f;
    } else {
      auto d = m.density;
      m.density = [d, f](const Vec& u) { return f * d(u); };
    }
    return m;
  }
  std::optional<Vec> zonal_axis() const override { return base_.zonal_axis(); }
  std::optional<double> exact_volume() const override {
    if (auto v = base_.exact_volume()) return *v * std::pow(beta_, dim());
    return std::nullopt;
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "dilate(" << base_.describe() << ", beta=" << beta_ << ")";
    return os.str();
  }
  const StarBody& base() const { return base_; }
  double beta() const { return beta_; }

 private:
  StarBody base_;
  double beta_;
};

class RadialSumImpl final : public BodyImpl {
 public:
  RadialSumImpl(StarBody a, StarBody b) : BodyImpl(a.dim()), a_(std::move(a)), b_(std::move(b)) {
    if (a_.dim() != b_.dim()) throw std::domain_error("radial sum: dimension mismatch");
    // radial sums of intersection bodies are intersection bodies
    intersection_flag = a_.intersection_by_construction() && b_.intersection_by_construction();
  }
  double radial(const Vec& u) const override { return a_.radial(u) + b_.radial(u); }
  bool convex() const override { return false; }  // not preserved in general
  std::optional<Vec> zonal_axis() const override {
    auto za = a_.zonal_axis(), zb = b_.zonal_axis();
    if (za && zb && std::abs(std::abs(dot(*za, *zb)) - 1.0) < 1e-12) return za;
    return std::nullopt;
  }
  std::string describe() const override {
    return "radial_sum(" + a_.describe() + ", " + b_.describe() + ")";
  }
  const StarBody& left() const { return a_; }
  const StarBody& right() const { return b_; }

 private:
  StarBody a_, b_;
};

// Lazy Minkowski sum: support functions add. The radial function is
// recovered from the support by a meridian-free local minimization of
// h(phi)/<phi,theta>; surface measures are unsupported.
class MinkowskiSumImpl final : public BodyImpl {
 public:
  MinkowskiSumImpl(ConvexBody a, ConvexBody b) : BodyImpl(a.dim()), a_(std::move(a)), b_(std::move(b)) {
    if (a_.dim() != b_.dim()) throw std::domain_error("minkowski sum: dimension mismatch");
    if (!a_.has_support() || !b_.has_support())
      throw capability_error("minkowski sum requires support functions");
    projection_flag = a_.projection_by_construction() && b_.projection_by_construction();
  }
  double radial(const Vec& u) const override {
    // gauge of a convex body from its support: ||u||_K = max over phi of
    // <u,phi>/h(phi); equivalently rho(u) = min h(phi)/<phi,u>.
    auto h = [&](const Vec& p) { return a_.support(p) + b_.support(p); };
    const Mat basis = householder_complement(u);
    const int d = dim() - 1;
    auto objective = [&](const std::vector<double>& w) {
      Vec p(u);
      for (int k = 0; k < d; ++k)
        for (std::size_t i = 0; i < p.size(); ++i)
          p[i] += w[static_cast<std::size_t>(k)] * basis[static_cast<std::size_t>(k)][i];
      p = normalized(p);
      const double c = dot(p, u);
      if (c <= 1e-9) return 1e300;
      return h(p) / c;
    };
    // coordinate descent with shrinking step; adequate for smooth sums
    std::vector<double> w(static_cast<std::size_t>(d), 0.0);
    double best = objective(w);
    double step = 0.5;
    for (int round = 0; round < 40; ++round) {
      bool improved = false;
      for (int k = 0; k < d; ++k) {
        for (double s : {step, -step}) {
          std::vector<double> w2 = w;
          w2[static_cast<std::size_t>(k)] += s;
          const double v = objective(w2);
          if (v < best - 1e-15) {
            best = v;
            w = w2;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
      if (step < 1e-9) break;
    }
    return best;
  }
  bool convex() const override { return true; }
  double support(const Vec& u) const override { return a_.support(u) + b_.support(u); }
  std::optional<Vec> zonal_axis() const override {
    auto za = a_.zonal_axis(), zb = b_.zonal_axis();
    if (za && zb && std::abs(std::abs(dot(*za, *zb)) - 1.0) < 1e-12) return za;
    return std::nullopt;
  }
  std::string describe() const override {
    return "minkowski_sum(" + a_.describe() + ", " + b_.describe() + ")";
  }
  const StarBody& left() const { return a_; }
  const StarBody& right() const { return b_; }

 private:
  ConvexBody a_, b_;
};

// Radial values sampled on a fixed symmetric direction set; evaluation
// interpolates by normalized spherical inverse squared distance.
class SampledImpl final : public BodyImpl {
 public:
  SampledImpl(int n, std::vector<Vec> dirs, std::vector<double> values, bool flag_intersection = false)
      : BodyImpl(n) {
    if (dirs.size() != values.size() || dirs.empty())
      throw std::domain_error("sampled body: direction/value mismatch");
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      if (values[i] <= 0.0) throw std::domain_error("sampled radial values must be positive");
      dirs_.push_back(normalized(dirs[i]));
      vals_.push_back(values[i]);
      dirs_.push_back(negated(dirs_.back()));
      vals_.push_back(values[i]);  // evenness enforced by mirroring
    }
    intersection_flag = flag_intersection;
  }
  double radial(const Vec& u) const override {
    double wsum = 0.0, vsum = 0.0;
    for (std::size_t i = 0; i < dirs_.size(); ++i) {
      const double c = std::clamp(dot(u, dirs_[i]), -1.0, 1.0);
      const double ang = std::acos(c);
      if (ang < 1e-12) return vals_[i];
      const double w = 1.0 / (ang * ang);
      wsum += w;
      vsum += w * vals_[i];
    }
    return vsum / wsum;
  }
  bool convex() const override { return false; }
  std::string describe() const override {
    std::ostringstream os;
    os << "sampled(n=" << dim() << ", m=" << dirs_.size() / 2 << ")";
    return os.str();
  }

 private:
  std::vector<Vec> dirs_;
  std::vector<double> vals_;
};

// Star body defined by an arbitrary positive even radial callback; used for
// lazily-evaluated constructions (intersection bodies, section bodies).
class LazyRadialImpl final : public BodyImpl {
 public:
  LazyRadialImpl(int n, std::function<double(const Vec&)> rho, std::string label,
                 bool flag_intersection, std::optional<Vec> axis = std::nullopt)
      : BodyImpl(n), rho_(std::move(rho)), label_(std::move(label)), axis_(std::move(axis)) {
    intersection_flag = flag_intersection;
  }
  double radial(const Vec& u) const override { return rho_(u); }
  bool convex() const override { return false; }
  std::optional<Vec> zonal_axis() const override { return axis_; }
  std::string describe() const override { return label_; }

 private:
  std::function<double(const Vec&)> rho_;
  std::string label_;
  std::optional<Vec> axis_;
};

// ---------------------------------------------------------------------------
// out-of-line constructions

inline void PolytopeImpl::enumerate_vertices() {
  const int n = dim();
  const int m = static_cast<int>(normals_.size());
  if (m < n) throw std::domain_error("polytope needs at least n facet pairs");
  // all n-subsets of facets
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  double comb = 1.0;
  for (int i = 0; i < n; ++i) comb = comb * (m - i) / (i + 1);
  if (comb > 2e6) throw capability_error("polytope facet count too large for vertex enumeration");
  while (true) {
    Mat A;
    Vec b;
    for (int i = 0; i < n; ++i) {
      A.push_back(normals_[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
      b.push_back(offsets_[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
    }
    Vec x;
    if (solve(A, b, x)) {
      bool feasible = true;
      for (int k = 0; k < m && feasible; ++k)
        if (dot(normals_[static_cast<std::size_t>(k)], x) >
            offsets_[static_cast<std::size_t>(k)] + 1e-9 * (1.0 + std::abs(offsets_[static_cast<std::size_t>(k)])))
          feasible = false;
      if (feasible && std::isfinite(norm(x)) && norm(x) < 1e12) {
        bool dup = false;
        for (const Vec& v : vertices_)
          if (norm(sub(v, x)) < 1e-8 * (1.0 + norm(x))) {
            dup = true;
            break;
          }
        if (!dup) vertices_.push_back(x);
      }
    }
    int pos = n - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - n + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < n; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
  if (vertices_.empty()) throw std::domain_error("polytope vertex enumeration found nothing: unbounded or empty");
}

inline SurfaceMeasure PolytopeImpl::surface_measure() const {
  if (dim() > 3) throw capability_error("polytope surface measure implemented for n <= 3");
  SurfaceMeasure m;
  m.discrete = true;
  for (std::size_t i = 0; i < normals_.size(); ++i) {
    // vertices on this facet
    std::vector<Vec> on;
    for (const Vec& v : vertices_)
      if (std::abs(dot(normals_[i], v) - offsets_[i]) < 1e-8 * (1.0 + offsets_[i])) on.push_back(v);
    double area = 0.0;
    if (dim() == 2) {
      if (on.size() >= 2) {
        for (std::size_t a = 0; a < on.size(); ++a)
          for (std::size_t b = a + 1; b < on.size(); ++b)
            area = std::max(area, norm(sub(on[a], on[b])));
      }
    } else {  // n == 3: polygon area via angular ordering in the facet plane
      if (on.size() >= 3) {
        Mat frame = householder_complement(normals_[i]);
        Vec c(static_cast<std::size_t>(dim()), 0.0);
        for (const Vec& v : on) c = add(c, scaled(v, 1.0 / on.size()));
        std::vector<std::pair<double, std::pair<double, double>>> pts;
        for (const Vec& v : on) {
          const Vec d = sub(v, c);
          const double x = dot(d, frame[0]), y = dot(d, frame[1]);
          pts.push_back({std::atan2(y, x), {x, y}});
        }
        std::sort(pts.begin(), pts.end());
        for (std::size_t a = 0; a < pts.size(); ++a) {
          const auto& p = pts[a].second;
          const auto& q = pts[(a + 1) % pts.size()].second;
          area += 0.5 * (p.first * q.second - q.first * p.second);
        }
        area = std::abs(area);
      }
    }
    if (area > 0.0) {
      m.normals.push_back(normals_[i]);
      m.weights.push_back(area);
    }
  }
  return m;
}

inline void ZonotopeImpl::build_facets() {
  const int n = dim();
  const int k = static_cast<int>(gens_.size());
  std::vector<int> idx(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n - 1; ++i) idx[static_cast<std::size_t>(i)] = i;
  auto add_facet = [&](const Vec& unit, double area) {
    for (std::size_t i = 0; i < facet_normals_.size(); ++i) {
      const double c = dot(facet_normals_[i], unit);
      if (c > 1.0 - 1e-10) {
        facet_areas_[i] += area;
        return;
      }
      if (c < -1.0 + 1e-10) {
        facet_areas_[i] += area;
        return;
      }
    }
    facet_normals_.push_back(unit);
    facet_areas_.push_back(area);
    facet_offsets_.push_back(0.0);  // filled below
  };
  if (n == 2) {
    // each generator contributes an edge pair with normal perpendicular to it
    for (const Vec& g : gens_) {
      const double len = norm(g);
      if (len < 1e-15) continue;
      Vec u = {g[1] / len, -g[0] / len};
      add_facet(u, 2.0 * len);
    }
  } else {
    while (true) {
      Mat rows;
      for (int i = 0; i < n - 1; ++i) rows.push_back(gens_[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
      Vec w = wedge_normal(rows);
      const double wedge = norm(w);
      if (wedge > 1e-13) {
        // canonical orientation for dedup
        Vec u = scaled(w, 1.0 / wedge);
        for (std::size_t j = u.size(); j-- > 0;) {
          if (std::abs(u[j]) > 1e-14) {
            if (u[j] < 0.0) u = negated(u);
            break;
          }
        }
        add_facet(u, std::pow(2.0, n - 1.0) * wedge);
      }
      int pos = n - 2;
      while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == k - (n - 1) + pos) --pos;
      if (pos < 0) break;
      ++idx[static_cast<std::size_t>(pos)];
      for (int i = pos + 1; i < n - 1; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  if (facet_normals_.empty()) throw std::domain_error("zonotope generators do not span");
  for (std::size_t i = 0; i < facet_normals_.size(); ++i)
    facet_offsets_[i] = support(facet_normals_[i]);
}

// ---------------------------------------------------------------------------
// factories and operators

inline StarBody make_ball(int n, double r = 1.0) {
  return StarBody(std::make_shared<BallImpl>(n, r));
}
inline StarBody make_lp_ball(int n, double p) {
  return StarBody(std::make_shared<LpBallImpl>(n, p));
}
inline StarBody make_ellipsoid(int n, Vec axes) {
  return StarBody(std::make_shared<EllipsoidImpl>(n, std::move(axes)));
}
inline StarBody make_polytope(int n, std::vector<Vec> normals, std::vector<double> offsets) {
  return StarBody(std::make_shared<PolytopeImpl>(n, std::move(normals), std::move(offsets)));
}
inline StarBody make_zonotope(int n, std::vector<Vec> generators) {
  return StarBody(std::make_shared<ZonotopeImpl>(n, std::move(generators)));
}
// cube [-h, h]^n, represented exactly as the zonotope of the scaled axes
inline StarBody make_cube(int n, double half = 1.0) {
  std::vector<Vec> gens;
  for (int i = 0; i < n; ++i) gens.push_back(scaled(unit_axis(n, i), half));
  return make_zonotope(n, std::move(gens));
}
inline StarBody make_zonal_ball(int n, double r0, std::map<int, double> coeffs) {
  return StarBody(std::make_shared<ZonalBallImpl>(n, r0, std::move(coeffs)));
}
inline StarBody make_sampled(int n, std::vector<Vec> dirs, std::vector<double> values) {
  return StarBody(std::make_shared<SampledImpl>(n, std::move(dirs), std::move(values)));
}

inline StarBody dilate(const StarBody& K, double beta) {
  return StarBody(std::make_shared<DilateImpl>(K, beta));
}

inline StarBody radial_sum(const StarBody& K, const StarBody& L) {
  return StarBody(std::make_shared<RadialSumImpl>(K, L));
}

inline ConvexBody minkowski_sum(const ConvexBody& K, const ConvexBody& L) {
  if (K.dim() != L.dim()) throw std::domain_error("minkowski sum: dimension mismatch");
  // zonotope + zonotope stays an exact zonotope with concatenated generators
  const auto* zk = dynamic_cast<const ZonotopeImpl*>(&K.impl());
  const auto* zl = dynamic_cast<const ZonotopeImpl*>(&L.impl());
  if (zk && zl) {
    std::vector<Vec> gens = zk->generators();
    const auto& more = zl->generators();
    gens.insert(gens.end(), more.begin(), more.end());
    return make_zonotope(K.dim(), std::move(gens));
  }
  if (zk && zk->generators().empty()) return L;
  if (zl && zl->generators().empty()) return K;
  return ConvexBody(std::make_shared<MinkowskiSumImpl>(K, L));
}

// max_xi |rho_K - rho_L| over the sphere (radial metric)
inline double radial_distance(const StarBody& K, const StarBody& L, const SphericalRule& rule,
                              ExtremizeBudget budget = {}) {
  if (K.dim() != L.dim()) throw std::domain_error("radial distance: dimension mismatch");
  auto f = [&](const Vec& u) { return std::abs(K.radial(u) - L.radial(u)); };
  return extremize(f, rule, ExtremeMode::max, budget).value;
}

}  // namespace cvgeom

#endif
