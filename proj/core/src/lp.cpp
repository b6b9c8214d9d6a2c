#include "chromatic/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace chromatic::geom {

namespace {

constexpr double kPivTol = 1e-10;   // smallest acceptable pivot element
constexpr double kCostTol = 1e-10;  // reduced-cost optimality threshold
constexpr int kPivotLimit = 200000; // hard stop; a hang is worse than an error

// Dense simplex tableau over the standard form
//   min c.x   s.t.  A x = b,  x >= 0,  b >= 0.
// Columns: structural vars, then slack/surplus, then artificials.
struct Tableau {
  int m = 0, ncols = 0;
  std::vector<double> t;       // (m+1) x (ncols+1); last row = reduced costs, last col = rhs
  std::vector<int> basis;      // basic variable per row
  std::vector<int> id_col;     // columns that started as the identity (one per row)

  double& at(int i, int j) { return t[static_cast<size_t>(i) * (ncols + 1) + j]; }
  double at(int i, int j) const { return t[static_cast<size_t>(i) * (ncols + 1) + j]; }
  double& rhs(int i) { return at(i, ncols); }
  double& cost(int j) { return at(m, j); }

  void pivot(int pr, int pc) {
    const double pv = at(pr, pc);
    const double inv = 1.0 / pv;
    double* prow = &t[static_cast<size_t>(pr) * (ncols + 1)];
    for (int j = 0; j <= ncols; ++j) prow[j] *= inv;
    prow[pc] = 1.0;
    for (int i = 0; i <= m; ++i) {
      if (i == pr) continue;
      double* row = &t[static_cast<size_t>(i) * (ncols + 1)];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (int j = 0; j <= ncols; ++j) row[j] -= f * prow[j];
      row[pc] = 0.0;
    }
    basis[pr] = pc;
  }

  // Dantzig entering rule with a two-pass ratio test: first find the minimum
  // ratio, then among rows within a tiny band of it pick the largest pivot
  // element (ties by lowest row index). Choosing the largest eligible pivot
  // keeps the elimination numerically stable; a pivot barely above kPivTol
  // would amplify roundoff by ~1/kPivTol and wreck the tableau.
  // Returns true if an optimum was reached, false if unbounded.
  bool iterate(int limit_cols) {
    for (int iter = 0;; ++iter) {
      require(iter < kPivotLimit, Errc::Internal, "lp: simplex iteration limit exceeded");
      int pc = -1;
      double best = -kCostTol;
      for (int j = 0; j < limit_cols; ++j)
        if (cost(j) < best) { best = cost(j); pc = j; }
      if (pc < 0) return true;  // optimal

      double theta = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double a = at(i, pc);
        if (a > kPivTol) theta = std::min(theta, std::max(rhs(i), 0.0) / a);
      }
      if (theta == std::numeric_limits<double>::infinity()) return false;  // unbounded
      const double band = theta + 1e-9 * (1.0 + theta);
      int pr = -1;
      for (int i = 0; i < m; ++i) {
        const double a = at(i, pc);
        if (a > kPivTol && std::max(rhs(i), 0.0) / a <= band && (pr < 0 || a > at(pr, pc)))
          pr = i;
      }
      pivot(pr, pc);
    }
  }
};

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
  const int m = static_cast<int>(p.rows.size());
  require(static_cast<int>(p.c.size()) == p.num_vars, Errc::InvalidInput, "lp: objective size mismatch");
  for (const auto& r : p.rows)
    require(static_cast<int>(r.size()) == p.num_vars, Errc::InvalidInput, "lp: row size mismatch");

  // Map original variables onto nonnegative columns (free vars are split).
  std::vector<int> pos_col(p.num_vars), neg_col(p.num_vars, -1);
  int nstruct = 0;
  for (int j = 0; j < p.num_vars; ++j) {
    pos_col[j] = nstruct++;
    if (!p.free_var.empty() && p.free_var[j]) neg_col[j] = nstruct++;
  }

  int nslack = 0;
  for (Sense s : p.senses)
    if (s != Sense::Eq) ++nslack;

  Tableau tb;
  tb.m = m;
  tb.ncols = nstruct + nslack + m;  // artificials for every row (unused ones stay zero-cost)
  tb.t.assign(static_cast<size_t>(m + 1) * (tb.ncols + 1), 0.0);
  tb.basis.assign(m, -1);

  const int art0 = nstruct + nslack;
  int slack_at = nstruct;
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  std::vector<double> row_sign(m, 1.0);

  for (int i = 0; i < m; ++i) {
    double sign = p.rhs[i] < 0 ? -1.0 : 1.0;
    row_sign[i] = sign;
    for (int j = 0; j < p.num_vars; ++j) {
      double a = sign * p.rows[i][j];
      tb.at(i, pos_col[j]) = a;
      if (neg_col[j] >= 0) tb.at(i, neg_col[j]) = -a;
    }
    tb.rhs(i) = sign * p.rhs[i];
    Sense s = p.senses[i];
    if (s != Sense::Eq) {
      double sv = (s == Sense::Le) ? 1.0 : -1.0;
      tb.at(i, slack_at) = sign * sv;
      slack_col[i] = slack_at;
      ++slack_at;
    }
    // Basic column: reuse the slack if it enters with +1, else an artificial.
    if (slack_col[i] >= 0 && tb.at(i, slack_col[i]) > 0.5) {
      tb.basis[i] = slack_col[i];
    } else {
      art_col[i] = art0 + i;
      tb.at(i, art_col[i]) = 1.0;
      tb.basis[i] = art_col[i];
    }
  }

  tb.id_col = tb.basis;  // these columns are the identity right now

  LpSolution sol;

  // ---- Phase 1: minimize the sum of artificials ----
  bool any_art = false;
  for (int i = 0; i < m; ++i)
    if (art_col[i] >= 0) any_art = true;
  if (any_art) {
    // Cost +1 on every artificial column, then zero the reduced costs of the
    // basic (artificial) columns by subtracting their rows. Without the +1
    // the artificials would carry reduced cost -1 and re-pivoting them would
    // silently cancel the infeasibility measure in the objective cell.
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0) tb.at(m, art_col[i]) = 1.0;
    for (int i = 0; i < m; ++i)
      if (tb.basis[i] >= art0) {
        for (int j = 0; j <= tb.ncols; ++j) tb.at(m, j) -= tb.at(i, j);
      }
    // Entering columns are structural/slack only. Every artificial starts
    // basic, so restricting the pricing loop cannot miss a feasible point:
    // once an artificial leaves it is simply dropped from the problem.
    if (!tb.iterate(art0)) fail(Errc::Internal, "lp: phase 1 unbounded");
    double art_sum = -tb.at(m, tb.ncols);
    if (art_sum > kLpEps) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Drive remaining artificials out of the basis where possible. A basic
    // artificial's value at a feasible phase-1 optimum is zero, so pin its
    // rhs to exactly zero (shedding accumulated roundoff) and pivot only on a
    // well-scaled element — the largest available, since a near-zero pivot
    // with leftover rhs noise would blast the noise across the tableau. Rows
    // with no usable element are dependent; their artificial stays basic at
    // value zero and never re-enters the objective.
    for (int i = 0; i < m; ++i) {
      if (tb.basis[i] < art0) continue;
      tb.rhs(i) = 0.0;
      int pc = -1;
      double bestp = 1e-7;
      for (int j = 0; j < art0; ++j) {
        const double a = std::abs(tb.at(i, j));
        if (a > bestp) { bestp = a; pc = j; }
      }
      if (pc >= 0) tb.pivot(i, pc);
    }
    // Reset cost row for phase 2.
    for (int j = 0; j <= tb.ncols; ++j) tb.at(m, j) = 0.0;
  }

  // ---- Phase 2 ----
  for (int j = 0; j < p.num_vars; ++j) {
    tb.cost(pos_col[j]) = p.c[j];
    if (neg_col[j] >= 0) tb.cost(neg_col[j]) = -p.c[j];
  }
  for (int i = 0; i < m; ++i) {
    int bj = tb.basis[i];
    double cb = tb.at(m, bj);
    if (cb != 0.0)
      for (int j = 0; j <= tb.ncols; ++j) tb.at(m, j) -= cb * tb.at(i, j);
  }
  if (!tb.iterate(art0)) {  // artificials are not eligible to re-enter
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  // ---- Recompute basic values and duals from a fresh factorization ----
  // Thousands of dense eliminations leave noticeable drift in the tableau,
  // so solve B x_B = b and B^T y = c_B directly from the ORIGINAL data: build
  // the final basis matrix, LU-factorize with partial pivoting (the basis is
  // nonsingular), and back-substitute. One O(m^3) factorization makes the
  // reported solution as accurate as the data allows, independent of how
  // many pivots the simplex took to get here.
  std::vector<int> col_var(art0, -1);
  std::vector<double> col_vsign(art0, 0.0);
  for (int j = 0; j < p.num_vars; ++j) {
    col_var[pos_col[j]] = j;
    col_vsign[pos_col[j]] = 1.0;
    if (neg_col[j] >= 0) {
      col_var[neg_col[j]] = j;
      col_vsign[neg_col[j]] = -1.0;
    }
  }
  std::vector<int> slack_row(tb.ncols, -1);
  for (int i = 0; i < m; ++i)
    if (slack_col[i] >= 0) slack_row[slack_col[i]] = i;

  const auto idx = [&](int i, int j) { return static_cast<size_t>(i) * m + j; };
  std::vector<double> bm(static_cast<size_t>(m) * m, 0.0);  // row-major basis matrix
  std::vector<double> cb(m, 0.0);                           // basis objective coefficients
  for (int r = 0; r < m; ++r) {
    const int c = tb.basis[r];
    if (c >= art0) {
      bm[idx(c - art0, r)] = 1.0;
    } else if (c >= nstruct) {
      const int sr = slack_row[c];
      bm[idx(sr, r)] = row_sign[sr] * (p.senses[sr] == Sense::Le ? 1.0 : -1.0);
    } else {
      const int j = col_var[c];
      for (int i = 0; i < m; ++i) bm[idx(i, r)] = col_vsign[c] * row_sign[i] * p.rows[i][j];
      cb[r] = col_vsign[c] * p.c[j];
    }
  }
  std::vector<int> perm(m);
  for (int i = 0; i < m; ++i) perm[i] = i;
  bool lu_ok = true;
  for (int kc = 0; kc < m && lu_ok; ++kc) {
    int piv = kc;
    double best = std::abs(bm[idx(kc, kc)]);
    for (int i = kc + 1; i < m; ++i) {
      const double v = std::abs(bm[idx(i, kc)]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best < 1e-12) {
      lu_ok = false;
      break;
    }
    if (piv != kc) {
      for (int j = 0; j < m; ++j) std::swap(bm[idx(piv, j)], bm[idx(kc, j)]);
      std::swap(perm[piv], perm[kc]);
    }
    const double d = bm[idx(kc, kc)];
    for (int i = kc + 1; i < m; ++i) {
      const double f = bm[idx(i, kc)] / d;
      bm[idx(i, kc)] = f;
      if (f != 0.0)
        for (int j = kc + 1; j < m; ++j) bm[idx(i, j)] -= f * bm[idx(kc, j)];
    }
  }

  std::vector<double> xb(m), ys(m);
  if (lu_ok) {
    // B x_b = b_signed:  P B = L U, so solve L z = P b, then U x = z.
    std::vector<double> z(m);
    for (int i = 0; i < m; ++i) z[i] = row_sign[perm[i]] * p.rhs[perm[i]];
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < i; ++j) z[i] -= bm[idx(i, j)] * z[j];
    for (int i = m - 1; i >= 0; --i) {
      for (int j = i + 1; j < m; ++j) z[i] -= bm[idx(i, j)] * z[j];
      z[i] /= bm[idx(i, i)];
      xb[i] = z[i];
    }
    // B^T y = c_B:  B^T = U^T L^T P, so solve U^T z = c_B, L^T w = z, y = P^T w.
    std::vector<double> w(m);
    for (int i = 0; i < m; ++i) {
      double v = cb[i];
      for (int j = 0; j < i; ++j) v -= bm[idx(j, i)] * w[j];
      w[i] = v / bm[idx(i, i)];
    }
    for (int i = m - 1; i >= 0; --i)
      for (int j = i + 1; j < m; ++j) w[i] -= bm[idx(j, i)] * w[j];
    for (int i = 0; i < m; ++i) ys[perm[i]] = w[i];
  } else {
    // Singular to machine precision (should not happen): fall back to the
    // tableau values; certification below decides whether they are usable.
    for (int i = 0; i < m; ++i) xb[i] = tb.rhs(i);
    for (int i = 0; i < m; ++i) ys[i] = -tb.at(m, tb.id_col[i]);
  }

  // ---- Extract primal solution ----
  std::vector<double> xs(art0, 0.0);
  for (int i = 0; i < m; ++i)
    if (tb.basis[i] < art0) xs[tb.basis[i]] = xb[i];
  sol.x.assign(p.num_vars, 0.0);
  for (int j = 0; j < p.num_vars; ++j) {
    sol.x[j] = xs[pos_col[j]];
    if (neg_col[j] >= 0) sol.x[j] -= xs[neg_col[j]];
  }
  sol.value = 0.0;
  for (int j = 0; j < p.num_vars; ++j) sol.value += p.c[j] * sol.x[j];

  sol.dual.assign(m, 0.0);
  for (int i = 0; i < m; ++i) sol.dual[i] = row_sign[i] * ys[i];
  sol.dual_value = 0.0;
  for (int i = 0; i < m; ++i) sol.dual_value += sol.dual[i] * p.rhs[i];

  // ---- Verify: primal feasibility, dual feasibility, complementary gap ----
  bool ok = true;
  double scale = 1.0;
  for (int i = 0; i < m; ++i) scale = std::max(scale, std::abs(p.rhs[i]));
  // Primal bounds: every non-free variable must be (near-)nonnegative. A
  // solution that satisfies the rows by driving a bounded variable negative
  // is not a solution at all.
  for (int j = 0; j < p.num_vars && ok; ++j) {
    bool is_free = !p.free_var.empty() && p.free_var[j];
    if (!is_free && sol.x[j] < -kLpEps * scale) ok = false;
  }
  for (int i = 0; i < m && ok; ++i) {
    double ax = 0.0;
    for (int j = 0; j < p.num_vars; ++j) ax += p.rows[i][j] * sol.x[j];
    double viol = 0.0;
    if (p.senses[i] == Sense::Le) viol = ax - p.rhs[i];
    else if (p.senses[i] == Sense::Ge) viol = p.rhs[i] - ax;
    else viol = std::abs(ax - p.rhs[i]);
    if (viol > kLpEps * scale) ok = false;
    // dual sign: y >= 0 for >=-rows, y <= 0 for <=-rows (minimization)
    if (p.senses[i] == Sense::Ge && sol.dual[i] < -kLpEps) ok = false;
    if (p.senses[i] == Sense::Le && sol.dual[i] > kLpEps) ok = false;
  }
  // dual feasibility on columns: c_j - y.A_j >= 0 (or == 0 for free vars)
  for (int j = 0; j < p.num_vars && ok; ++j) {
    double red = p.c[j];
    for (int i = 0; i < m; ++i) red -= sol.dual[i] * p.rows[i][j];
    bool is_free = !p.free_var.empty() && p.free_var[j];
    if (is_free ? std::abs(red) > kLpEps * 10 : red < -kLpEps * 10) ok = false;
  }
  sol.dual_gap = std::abs(sol.value - sol.dual_value);
  if (sol.dual_gap > kLpEps * (1.0 + std::abs(sol.value)) * 10) ok = false;
  sol.certified = ok;
  sol.status = LpStatus::Optimal;
  return sol;
}

}  // namespace chromatic::geom
