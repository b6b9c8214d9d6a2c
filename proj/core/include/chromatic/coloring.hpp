#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chromatic/bounds.hpp"
#include "chromatic/cover.hpp"
#include "chromatic/tiling.hpp"

namespace chromatic::color {

enum class Mode {
  ShrunkCover,    // color j = scale * (nu-shrunk cells + translates[j]); first match wins
  CellPartition,  // color of a point = index of the cell class containing it
};

// A periodic coloring of R^n proper for K-distance exactly 1. Pieces are
// stored unscaled around their sites; all geometry is multiplied by `scale`
// when points are classified.
struct Coloring {
  geom::ConvexBody body;
  tiling::PeriodicTiling tiling;
  tiling::TilingParameters params;
  Mode mode = Mode::ShrunkCover;
  std::vector<geom::Polytope> pieces;  // per cell class; shrunk cells, or the cells themselves
  std::vector<Vec> translates;         // ShrunkCover: one per color, in pick order
  double nu = 0.0;                     // shrink factor of the pieces (1 for CellPartition)
  double scale = 0.0;                  // 1/(2*beta*mu) for ShrunkCover, 1 for CellPartition
  int colors = 0;
  lattice::Torus torus;                // reduction table sized for classification
  double piece_radius = 0.0;           // max circumradius of a piece about its site

  int k() const { return tiling.k(); }
  int n() const { return tiling.n(); }
};

// Lowest color whose (closed) scaled piece family contains p; errors with a
// certificate violation naming the point if no piece does.
int color_of(const Coloring& c, const Vec& p);

struct StructuralReport {
  double max_scaled_diameter = 0.0;
  double min_scaled_separation = 0.0;   // over same-color piece pairs
  double diameter_margin = 0.0;         // 1 - max_scaled_diameter
  double separation_margin = 0.0;       // min_scaled_separation - 1
  double expected_diameter_margin = 0.0;
  double expected_separation_margin = 0.0;
  bool pass = false;
};

struct SampledReport {
  int64_t pairs = 0;
  int64_t violations = 0;   // sampled unit-distance pairs sharing a color
  int64_t undefined = 0;    // pairs where classification failed (uncovered point)
  std::vector<std::pair<Vec, Vec>> witnesses;  // up to 10 violating pairs
  bool pass = false;
};

struct VerificationReport {
  StructuralReport structural;
  SampledReport sampled;
  cover::CoverCertificate cover;  // meaningful when has_cover
  bool has_cover = false;
  bool pass = false;
};

// Structural check (exact piece diameters and same-color separations, both
// scaled, against the strict thresholds 1) plus `pair_samples` random pairs
// at K-distance exactly 1 that must receive different colors.
VerificationReport verify_coloring(const Coloring& c, int64_t pair_samples, uint64_t seed);

// The classical 7-coloring of the plane: hexagon cells of diameter 1 - 1e-3,
// colored by the cosets of an index-7 sublattice. Exactly 7 colors.
std::pair<Coloring, VerificationReport> partition_seven_baseline(int64_t pair_samples = 100000,
                                                                 uint64_t seed = 123456789ULL);

enum class Construction { Hexagonal, Square, BallGeneric, Explicit };

struct ExplicitSpec {
  Mat basis;                                         // lattice generators as columns
  std::vector<Vec> translates;                       // multilattice classes
  std::vector<std::vector<geom::Halfspace>> cells;   // empty: use Voronoi cells
};

struct PipelineConfig {
  Construction construction = Construction::Hexagonal;
  int n = 2;
  geom::ConvexBody body;        // empty: unit Euclidean ball of dimension n
  double eta = 1e-6;
  double delta = 0.0;           // 0: default 1/(2 n ln n)
  int sat_res = 0;              // 0: per-dimension default
  int cand_res = 0;
  int lift_res = 0;
  int64_t pair_samples = -1;    // -1: per-dimension default
  uint64_t seed = 123456789ULL;
  ExplicitSpec explicit_spec;   // used when construction == Explicit
};

// Fills zero/empty fields with the documented defaults and validates ranges.
PipelineConfig resolve_config(const PipelineConfig& cfg);

// Tiling stage only (for parameter inspection without the cover pipeline).
struct TilingStage {
  geom::ConvexBody body;
  tiling::PeriodicTiling tiling;
  tiling::TilingParameters params;
};
TilingStage build_tiling_stage(const PipelineConfig& cfg);

struct BuildOutput {
  Coloring coloring;
  VerificationReport verification;
  BoundReport bounds;
};

// Full pipeline: tiling -> parameters -> saturation -> finite cover instance
// -> greedy cover -> certified lift -> scaled coloring -> verification and
// bound evaluation. The verification report may carry pass = false; stage
// failures (certificates included) raise errors.
BuildOutput build_coloring(const PipelineConfig& cfg);

}  // namespace chromatic::color
