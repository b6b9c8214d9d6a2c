#include "chromatic/vec.hpp"

#include <cmath>

namespace chromatic {

namespace {

constexpr double kPivotTol = 1e-13;

}  // namespace

bool solve_linear(int n, const std::array<std::array<double, kMaxDim>, kMaxDim>& rows,
                  const std::array<double, kMaxDim>& rhs, Vec* out) {
  double m[kMaxDim][kMaxDim + 1];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m[i][j] = rows[i][j];
    m[i][n] = rhs[i];
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (std::abs(m[piv][c]) < kPivotTol) return false;
    if (piv != c)
      for (int j = c; j <= n; ++j) std::swap(m[piv][j], m[c][j]);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      double f = m[r][c] / m[c][c];
      if (f == 0.0) continue;
      for (int j = c; j <= n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
  *out = x;
  return true;
}

double Mat::det() const {
  double m[kMaxDim][kMaxDim];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = at(i, j);
  double d = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (std::abs(m[piv][c]) < kPivotTol) return 0.0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(m[piv][j], m[c][j]);
      d = -d;
    }
    d *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      double f = m[r][c] / m[c][c];
      for (int j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return d;
}

bool Mat::solve(const Vec& b, Vec* out) const {
  std::array<std::array<double, kMaxDim>, kMaxDim> rows{};
  std::array<double, kMaxDim> rhs{};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) rows[i][j] = at(i, j);
    rhs[i] = b[i];
  }
  return solve_linear(n, rows, rhs, out);
}

bool Mat::inverse(Mat* out) const {
  Mat inv(n);
  for (int j = 0; j < n; ++j) {
    Vec e(n);
    e[j] = 1.0;
    Vec x(n);
    if (!solve(e, &x)) return false;
    for (int i = 0; i < n; ++i) inv.at(i, j) = x[i];
  }
  *out = inv;
  return true;
}

std::array<double, kMaxDim> gram_schmidt_norms(const Mat& basis) {
  std::array<double, kMaxDim> norms{};
  Vec star[kMaxDim];
  for (int j = 0; j < basis.n; ++j) {
    Vec v = basis.col(j);
    for (int i = 0; i < j; ++i) {
      double denom = dot(star[i], star[i]);
      if (denom > 0) v -= star[i] * (dot(basis.col(j), star[i]) / denom);
    }
    star[j] = v;
    norms[j] = v.norm();
  }
  return norms;
}

}  // namespace chromatic
