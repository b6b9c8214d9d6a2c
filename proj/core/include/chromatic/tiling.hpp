#pragma once

#include <vector>

#include "chromatic/lattice.hpp"
#include "chromatic/polytope.hpp"

namespace chromatic::tiling {

// Voronoi-type periodic tiling: one bounded convex cell per translate class,
// tiling R^n under the action of the base lattice. cells[i] sits around
// multilattice site translates[i] (ambient coordinates).
struct PeriodicTiling {
  lattice::Multilattice ml;
  std::vector<geom::Polytope> cells;
  double max_circumradius = 0.0;  // Euclidean, over cells about their sites

  int n() const { return ml.base.n; }
  int k() const { return ml.k(); }
  const Vec& site(int i) const { return ml.translates[i]; }

  // Construction with full validation (association, volume, disjointness).
  static PeriodicTiling checked(const lattice::Multilattice& ml,
                                std::vector<geom::Polytope> cells, uint64_t sample_seed = 7);
  // No validation; for adversarial test fixtures only.
  static PeriodicTiling unchecked(const lattice::Multilattice& ml,
                                  std::vector<geom::Polytope> cells);
};

// Exact periodic Voronoi cells of the multilattice sites (Euclidean metric).
// Neighbor sets are grown adaptively and the final cell is certified: every
// excluded site is too far for its bisector to cut the cell.
PeriodicTiling voronoi_tiling(const lattice::Multilattice& ml);

// Single Voronoi cell of `site` within an arbitrary finite site cloud that
// is periodic under `torus` (used for covering-radius certificates).
geom::Polytope voronoi_cell_of_cloud(const lattice::Torus& torus, const std::vector<Vec>& sites,
                                     int site_index);

// Inner/outer radii of a tiling against body K:
//   alpha: largest a with a*K + site inside every cell (min normalized facet
//          slack over cells, in the K support scale),
//   beta:  smallest b with every cell inside b*K + site (max vertex K-norm).
// Derived: gamma = beta/alpha, mu = alpha/(alpha+beta), the width
// `forbidden` = 2*beta*mu = 2*alpha*beta/(alpha+beta) that a unit-separation
// rescaling normalizes, and scale = 1/forbidden.
struct TilingParameters {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
  double eta = 0.0;
  double forbidden = 0.0;
  double scale = 0.0;
};

// Pre: 0 < eta < 0.01. Errors if some site touches its own cell boundary
// (alpha below tolerance).
TilingParameters tiling_parameters(const PeriodicTiling& t, const geom::ConvexBody& k, double eta);

// Every cell shrunk about its own site by `factor` in (0, 1).
PeriodicTiling shrink(const PeriodicTiling& t, double factor);

// Packing/covering thresholds of a lattice against body K:
//   xi2 = sup { xi : xi*K + L packs }  (half the K-norm lattice minimum)
//   xi1 = inf { xi : xi*K + L covers } (K-norm covering radius; Euclidean K only)
struct XiRatios {
  double xi1 = 0.0;
  double xi2 = 0.0;
  double xi() const { return xi1 / xi2; }
};

XiRatios lattice_xi(const lattice::Lattice& lat, const geom::ConvexBody& k);

// Multilattice construction for the Euclidean ball in dimension 2..4: start
// from (2Z)^n and greedily add points at torus distance >= 2 until the set is
// saturated, then take Voronoi cells. The result has gamma <= 2 and
// k <= vol(torus)/vol(unit ball). (Defined alongside the saturation code.)
struct BallConstruction {
  lattice::Multilattice ml;
  PeriodicTiling tiling;
};

BallConstruction build_ball_multilattice(int n);

}  // namespace chromatic::tiling
