#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "chromatic/error.hpp"

namespace chromatic {

// Fixed-capacity vector for dimensions 1..4. Value semantics, no heap.
struct Vec {
  std::array<double, kMaxDim> a{};
  int n = 0;

  Vec() = default;
  explicit Vec(int dim) : n(dim) {}
  Vec(std::initializer_list<double> xs) {
    n = static_cast<int>(xs.size());
    int i = 0;
    for (double x : xs) a[i++] = x;
  }
  static Vec zero(int dim) { return Vec(dim); }
  static Vec from(const std::vector<double>& xs) {
    require(xs.size() >= 1 && xs.size() <= kMaxDim, Errc::InvalidInput, "vector dimension must be 1..4");
    Vec v(static_cast<int>(xs.size()));
    for (int i = 0; i < v.n; ++i) v.a[i] = xs[i];
    return v;
  }

  double& operator[](int i) { return a[i]; }
  double operator[](int i) const { return a[i]; }
  int dim() const { return n; }

  Vec operator+(const Vec& o) const {
    Vec r(n);
    for (int i = 0; i < n; ++i) r.a[i] = a[i] + o.a[i];
    return r;
  }
  Vec operator-(const Vec& o) const {
    Vec r(n);
    for (int i = 0; i < n; ++i) r.a[i] = a[i] - o.a[i];
    return r;
  }
  Vec operator*(double s) const {
    Vec r(n);
    for (int i = 0; i < n; ++i) r.a[i] = a[i] * s;
    return r;
  }
  Vec operator-() const { return *this * -1.0; }
  Vec& operator+=(const Vec& o) {
    for (int i = 0; i < n; ++i) a[i] += o.a[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (int i = 0; i < n; ++i) a[i] -= o.a[i];
    return *this;
  }

  friend double dot(const Vec& x, const Vec& y) {
    double s = 0;
    for (int i = 0; i < x.n; ++i) s += x.a[i] * y.a[i];
    return s;
  }
  double norm() const { return std::sqrt(dot(*this, *this)); }

  std::vector<double> to_std() const { return std::vector<double>(a.begin(), a.begin() + n); }

  // Exact lexicographic comparison, used for deterministic tie-breaking.
  friend bool lex_less(const Vec& x, const Vec& y) {
    for (int i = 0; i < x.n; ++i) {
      if (x.a[i] < y.a[i]) return true;
      if (x.a[i] > y.a[i]) return false;
    }
    return false;
  }
};

inline Vec operator*(double s, const Vec& v) { return v * s; }

inline bool close(const Vec& x, const Vec& y, double tol = kGeomEps) {
  for (int i = 0; i < x.n; ++i)
    if (std::abs(x.a[i] - y.a[i]) > tol) return false;
  return true;
}

// Small dense square matrix (n <= 4), column-major access helpers.
// Columns are the semantic unit: a lattice basis stores its generators as columns.
struct Mat {
  std::array<double, kMaxDim * kMaxDim> a{};  // row-major storage
  int n = 0;

  Mat() = default;
  explicit Mat(int dim) : n(dim) {}
  static Mat identity(int dim) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
  }
  static Mat from_columns(const std::vector<Vec>& cols) {
    Mat m(static_cast<int>(cols.size()));
    for (int j = 0; j < m.n; ++j)
      for (int i = 0; i < m.n; ++i) m.at(i, j) = cols[j][i];
    return m;
  }

  double& at(int i, int j) { return a[i * kMaxDim + j]; }
  double at(int i, int j) const { return a[i * kMaxDim + j]; }

  Vec col(int j) const {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = at(i, j);
    return v;
  }

  Vec mul(const Vec& x) const {
    Vec r(n);
    for (int i = 0; i < n; ++i) {
      double s = 0;
      for (int j = 0; j < n; ++j) s += at(i, j) * x[j];
      r[i] = s;
    }
    return r;
  }

  Mat scaled(double s) const {
    Mat m = *this;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) *= s;
    return m;
  }

  double det() const;
  // Gaussian elimination with partial pivoting; false if singular.
  bool solve(const Vec& b, Vec* out) const;
  bool inverse(Mat* out) const;
};

// Solves A x = b for small systems given as rows; shared by the polytope code.
bool solve_linear(int n, const std::array<std::array<double, kMaxDim>, kMaxDim>& rows,
                  const std::array<double, kMaxDim>& rhs, Vec* out);

// Gram-Schmidt norms of the columns (no normalization). Used for certified
// enumeration radii: any integer combination with a coefficient of magnitude
// > c has Euclidean norm >= (c+1) * min_i ||b*_i||.
std::array<double, kMaxDim> gram_schmidt_norms(const Mat& basis);

}  // namespace chromatic
