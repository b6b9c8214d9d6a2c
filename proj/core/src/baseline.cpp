#include <cmath>
#include <utility>

#include "chromatic/coloring.hpp"
#include "chromatic/error.hpp"

namespace chromatic::color {

// Hexagon cells of Euclidean diameter 1 - 1e-3 on the hexagonal lattice with
// spacing a = sqrt(3)*(1 - 1e-3)/2, colored by the cosets of the index-7
// sublattice spanned by 2*b1 + b2 and 3*b2 - b1. Same-colored hexagons sit at
// center distance >= sqrt(7)*a, hence at gap >= sqrt(7)*a - (1 - 1e-3) > 1.
std::pair<Coloring, VerificationReport> partition_seven_baseline(int64_t pair_samples,
                                                                 uint64_t seed) {
  const double shrink = 1.0 - 1e-3;
  const double a = std::sqrt(3.0) * shrink / 2.0;
  const Vec b1{a, 0.0};
  const Vec b2{a * 0.5, a * std::sqrt(3.0) / 2.0};
  const Vec big1 = b1 * 2.0 + b2;
  const Vec big2 = b2 * 3.0 - b1;
  auto sub = lattice::Lattice::make(Mat::from_columns({big1, big2}));
  std::vector<Vec> reps;
  reps.reserve(7);
  for (int i = 0; i < 7; ++i) reps.push_back(b1 * static_cast<double>(i));
  auto ml = lattice::Multilattice::make(sub, reps);
  auto psi = tiling::voronoi_tiling(ml);
  require(psi.k() == 7, Errc::Internal, "coset representatives collapsed");

  auto body = geom::ConvexBody::ball(2);
  Coloring c;
  c.body = body;
  c.params = tiling::tiling_parameters(psi, body, 1e-6);
  c.mode = Mode::CellPartition;
  c.pieces = psi.cells;
  c.nu = 1.0;
  c.scale = 1.0;
  c.colors = psi.k();
  c.piece_radius = psi.max_circumradius;
  c.torus = lattice::Torus::for_body(sub, body);
  c.tiling = std::move(psi);

  VerificationReport rep = verify_coloring(c, pair_samples, seed);
  return {std::move(c), std::move(rep)};
}

}  // namespace chromatic::color
