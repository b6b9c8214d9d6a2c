#pragma once

#include <vector>

#include "chromatic/error.hpp"

namespace chromatic::geom {

enum class Sense { Le, Eq, Ge };

enum class LpStatus { Optimal, Infeasible, Unbounded };

// minimize c.x  subject to  A x (<=|=|>=) b,  with x_j >= 0 unless free_var[j].
// Dense data; intended for instances up to roughly 2000 x 4000.
struct LpProblem {
  int num_vars = 0;
  std::vector<double> c;             // size num_vars
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<Sense> senses;
  std::vector<bool> free_var;        // empty means all variables are >= 0

  int add_row(const std::vector<double>& a, Sense s, double b) {
    rows.push_back(a);
    senses.push_back(s);
    rhs.push_back(b);
    return static_cast<int>(rows.size()) - 1;
  }
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;      // primal solution (original variables)
  double value = 0.0;         // c.x at the reported solution
  std::vector<double> dual;   // one multiplier per row
  double dual_value = 0.0;    // b.y, the certified bound on the optimum
  double dual_gap = 0.0;      // |value - dual_value| after verification
  bool certified = false;     // primal feasibility and dual bound both verified
};

// Two-phase dense simplex. Entering column by Dantzig's rule; leaving row by
// a two-pass ratio test that picks the largest pivot element within a small
// feasibility band (lowest row index on ties). The reported solution and
// duals are recomputed from the original data by an LU solve on the final
// basis, then verified independently. Deterministic for fixed input.
LpSolution solve_lp(const LpProblem& p);

}  // namespace chromatic::geom
