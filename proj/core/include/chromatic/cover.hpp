#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "chromatic/lattice.hpp"
#include "chromatic/tiling.hpp"

namespace chromatic::cover {

struct SaturationCertificate {
  // Smallest pairwise torus K-distance, including each point against its own
  // periodic images (= the lattice K-minimum when the set is a single point).
  double min_pairwise = 0.0;
  // Certified upper bound on the torus covering radius of the point set.
  double covering_radius = 0.0;
  int grid_res = 0;
  bool exact = false;  // true: Voronoi-vertex certificate (Euclidean K only)
};

// Maximal packing: points pairwise >= 2*rho apart in the torus K-metric that
// cannot be extended, so 2*rho*K translated to the points covers the torus.
struct SaturatedPacking {
  lattice::Torus torus;
  geom::ConvexBody body;
  double rho = 0.0;
  std::vector<Vec> points;
  SaturationCertificate certificate;

  int size() const { return static_cast<int>(points.size()); }
};

// Farthest-point insertion over a grid_res^n torus grid: repeatedly insert
// the grid point farthest (in torus K-distance) from the current set while
// that distance is >= 2*rho; ties broken by lexicographically smaller point.
// The covering certificate is exact for Euclidean K (Voronoi vertices) and
// grid-plus-Lipschitz otherwise; failure to certify raises a resolution
// error asking for a finer grid.
SaturatedPacking saturate(const lattice::Torus& torus, const geom::ConvexBody& k, double rho,
                          int grid_res);

// Dense bit matrix: one row (bitset over the ground set) per candidate set.
struct BitMatrix {
  int rows = 0;
  int ground = 0;
  int words = 0;
  std::vector<uint64_t> bits;

  static BitMatrix make(int rows, int ground);
  static BitMatrix from_lists(int ground, const std::vector<std::vector<int>>& sets);

  uint64_t* row(int r) { return bits.data() + static_cast<size_t>(r) * words; }
  const uint64_t* row(int r) const { return bits.data() + static_cast<size_t>(r) * words; }
  void set(int r, int g) { row(r)[g >> 6] |= uint64_t{1} << (g & 63); }
  bool get(int r, int g) const { return (row(r)[g >> 6] >> (g & 63)) & 1; }
  int row_popcount(int r) const;
  // True iff the union of all rows covers the ground set.
  bool covers_all() const;
};

// Finite covering instance: which candidate translates capture which packing
// points when each tiling cell is shrunk by nu_shrink about its site.
struct CoverInstance {
  SaturatedPacking ground;
  std::vector<Vec> candidates;   // translate vectors, deterministic grid order
  double delta = 0.0;
  double nu_shrink = 0.0;        // nu * (1 - delta), the candidate shrink factor
  BitMatrix incidence;           // rows = candidates, columns = ground points
  int max_set_size = 0;
};

// Pre: lam built with rho = alpha * nu * delta / 2 (nu = mu*(1-eta)) on the
// same lattice as psi. Errors with a resolution message if some packing point
// is covered by no candidate. Checks max_set_size <= k*(2*gamma/delta)^n.
CoverInstance build_instance(const SaturatedPacking& lam, const tiling::PeriodicTiling& psi,
                             const tiling::TilingParameters& params, double delta, int cand_res);

// Greedy set cover: repeatedly pick the candidate covering the most uncovered
// ground points, ties by lowest candidate index. Returns indices in pick
// order; errors if the instance is infeasible.
std::vector<int> greedy_cover_sets(const BitMatrix& m);
std::vector<int> greedy_cover(const CoverInstance& inst);

struct FractionalCover {
  std::vector<double> weights;  // nonnegative, one per candidate
  double total = 0.0;
};

// Exact optimum of the covering LP (min sum of weights, per-point coverage
// >= 1, weights >= 0), solved in dual form so the simplex needs no phase 1.
// The returned weights are re-verified for feasibility independently of the
// solver. Guarded to ground and candidate counts <= 2000 in the instance
// form; callers fall back to measure_bound past the guard.
std::pair<FractionalCover, double> fractional_optimum_sets(const BitMatrix& m);
std::pair<FractionalCover, double> fractional_optimum(const CoverInstance& inst);

// ((1+gamma)/(1-delta))^n: volume bound on the fractional cover value over
// the full (continuous) translate family. Not necessarily a bound for the
// finite candidate grid.
double measure_bound(const tiling::TilingParameters& params, double delta, int n);

struct CoverCertificate {
  double rho = 0.0;
  double min_pairwise = 0.0;
  double covering_radius = 0.0;
  double nu = 0.0;              // shrink factor of the lifted cells
  int ground_size = 0;
  int selection_size = 0;
  int grid_res = 0;
  double min_slack = 0.0;       // most marginal grid membership (>= -1e-7)
};

// Certifies that the nu-shrunk tiling translated by the selected candidates
// covers the torus: re-checks the packing/saturation chain, that the
// selection covers every packing point, and that every point of a
// sample_res^n grid lies in some translated shrunk cell (100% required).
CoverCertificate lift_cover(const CoverInstance& inst, const std::vector<int>& selection,
                            const tiling::PeriodicTiling& psi,
                            const tiling::TilingParameters& params, int sample_res);

}  // namespace chromatic::cover
