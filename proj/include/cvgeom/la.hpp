// Small dense linear algebra for low-dimensional geometry (n <= ~8).
// Vectors are std::vector<double>; matrices are row-major vectors of rows.
#ifndef CVGEOM_LA_HPP
#define CVGEOM_LA_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cvgeom {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;  // rows

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline Vec scaled(const Vec& a, double c) {
  Vec r(a);
  for (double& x : r) x *= c;
  return r;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

inline Vec negated(const Vec& a) { return scaled(a, -1.0); }

inline Vec normalized(const Vec& a) {
  double n = norm(a);
  if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
  return scaled(a, 1.0 / n);
}

inline Vec unit_axis(int n, int i) {
  Vec e(static_cast<std::size_t>(n), 0.0);
  e[static_cast<std::size_t>(i)] = 1.0;
  return e;
}

inline void check_unit(const Vec& u, double tol = 1e-10) {
  if (std::abs(norm(u) - 1.0) > tol)
    throw std::invalid_argument("direction must be a unit vector");
}

// Orthonormal basis of u^perp via the Householder reflection mapping e_n to u.
// Columns j = 0..n-2 of H restricted away from e_n, i.e. H e_j.
inline Mat householder_complement(const Vec& u) {
  const std::size_t n = u.size();
  Vec v(u);
  v[n - 1] += (u[n - 1] >= 0.0 ? 1.0 : -1.0);
  const double vv = dot(v, v);
  const double sgn = (u[n - 1] >= 0.0 ? 1.0 : -1.0);
  Mat basis;
  basis.reserve(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    Vec e(n, 0.0);
    e[j] = 1.0;
    const double c = 2.0 * v[j] / vv;
    for (std::size_t i = 0; i < n; ++i) e[i] -= c * v[i];
    // H maps e_n to -sgn*u; flip so the frame pairs with +u deterministically.
    basis.push_back(sgn < 0.0 ? e : negated(e));
  }
  return basis;
}

// In-place LU determinant with partial pivoting; destroys m.
inline double det_destructive(Mat& m) {
  const std::size_t n = m.size();
  double d = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      d = -d;
    }
    if (m[k][k] == 0.0) return 0.0;
    d *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return d;
}

inline double det(Mat m) { return det_destructive(m); }

// Solves m x = b by Gaussian elimination with partial pivoting.
// Returns false if m is singular to working precision.
inline bool solve(Mat m, Vec b, Vec& x) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
    if (std::abs(m[piv][k]) < 1e-13) return false;
    std::swap(m[piv], m[k]);
    std::swap(b[piv], b[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
      b[i] -= f * b[k];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= m[k][j] * x[j];
    x[k] = s / m[k][k];
  }
  return true;
}

// Generalized cross product: the vector orthogonal to n-1 rows, with
// |result| equal to the (n-1)-volume of the spanned parallelepiped.
// Components are signed cofactors along an appended row.
inline Vec wedge_normal(const Mat& rows) {
  const std::size_t n = rows.empty() ? 0 : rows[0].size();
  if (rows.size() + 1 != n) throw std::invalid_argument("wedge_normal needs n-1 rows");
  Vec out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    Mat minor;
    minor.reserve(n - 1);
    for (const Vec& r : rows) {
      Vec mr;
      mr.reserve(n - 1);
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) mr.push_back(r[c]);
      minor.push_back(std::move(mr));
    }
    const double cof = det_destructive(minor);
    out[j] = ((n - 1 + j) % 2 == 0) ? cof : -cof;
  }
  return out;
}

// Deterministic pairwise (tree) summation with Neumaier compensation at the
// leaves; independent of chunking as long as the index order is fixed.
inline double tree_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  const std::size_t len = hi - lo;
  if (len <= 8) {
    double s = 0.0, c = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double t = s + v[i];
      if (std::abs(s) >= std::abs(v[i]))
        c += (s - t) + v[i];
      else
        c += (v[i] - t) + s;
      s = t;
    }
    return s + c;
  }
  const std::size_t mid = lo + len / 2;
  return tree_sum(v, lo, mid) + tree_sum(v, mid, hi);
}

inline double tree_sum(const std::vector<double>& v) { return tree_sum(v, 0, v.size()); }

}  // namespace cvgeom

#endif
