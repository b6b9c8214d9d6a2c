#include "chromatic/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chromatic/rng.hpp"

namespace chromatic::tiling {

namespace {

struct Neighbor {
  Vec d;  // difference (copy - center site)
  double len = 0.0;
};

// All periodic copies of the sites within Euclidean distance `gather` of
// sites[center], excluding the center itself, sorted by (length, lex).
std::vector<Neighbor> gather_neighbors(const lattice::Torus& torus, const std::vector<Vec>& sites,
                                       int center, double gather) {
  const Vec p = sites[center];
  std::vector<Neighbor> out;
  for (int j = 0; j < static_cast<int>(sites.size()); ++j) {
    const Vec d0 = torus.nearest_image(sites[j] - p);
    const double d0len = d0.norm();
    for (size_t si = 0; si < torus.shifts.size(); ++si) {
      if (torus.shift_len[si] - d0len > gather) break;  // shifts sorted by length
      Vec d = d0 + torus.shifts[si];
      const double len = d.norm();
      if (len <= kGeomEps) {
        require(j == center, Errc::Construction, "voronoi: coincident sites in the cloud");
        continue;
      }
      if (len <= gather) out.push_back({d, len});
    }
  }
  std::sort(out.begin(), out.end(), [](const Neighbor& x, const Neighbor& y) {
    if (x.len != y.len) return x.len < y.len;
    return lex_less(x.d, y.d);
  });
  return out;
}

}  // namespace

geom::Polytope voronoi_cell_of_cloud(const lattice::Torus& torus, const std::vector<Vec>& sites,
                                     int site_index) {
  const int n = torus.lat.n;
  require(site_index >= 0 && site_index < static_cast<int>(sites.size()), Errc::InvalidInput,
          "voronoi: site index out of range");
  // Any cell of the cloud sits inside the cell of the center's own lattice
  // orbit, whose circumradius is at most the parallelepiped radius. Gathering
  // copies within twice that (plus margin) therefore captures every bisector
  // that can touch the cell.
  const double par = torus.lat.par_radius;
  const double margin = 1e-3 * par;
  const double gather = 2.0 * par + margin;
  require(torus.certified_radius >= gather + par, Errc::Internal,
          "voronoi: torus enumeration table too small for cell construction");

  const auto cands = gather_neighbors(torus, sites, site_index, gather);
  require(!cands.empty(), Errc::Internal, "voronoi: no neighbors gathered");
  const int m = static_cast<int>(cands.size());

  // Axis box that strictly contains the final cell keeps intermediate
  // intersections bounded while the bisector batch is still too small.
  const double box_r = 1.5 * par + margin;
  geom::IntersectOptions opts;
  opts.check_bounded = false;
  opts.assume_bounded = true;

  int batch = std::min(m, std::max(2 * n, 6));
  for (;;) {
    std::vector<geom::Halfspace> hs;
    hs.reserve(batch + 2 * n);
    for (int i = 0; i < batch; ++i)
      hs.push_back({cands[i].d * (1.0 / cands[i].len), cands[i].len / 2.0});
    for (int i = 0; i < n; ++i) {
      Vec e = Vec::zero(n);
      e[i] = 1.0;
      hs.push_back({e, box_r});
      hs.push_back({-e, box_r});
    }
    geom::Polytope cell = geom::intersect_halfspaces(hs, n, opts);
    const double rc = cell.circumradius_about(Vec::zero(n));
    // A bisector of a copy at distance d can cut the current cell only if
    // d < 2*rc. Candidates are sorted, so once the next one clears that
    // threshold the cell is final; farther copies (gathered or not) are
    // redundant or at worst tangent at a vertex.
    if (batch < m && cands[batch].len < 2.0 * rc + 1e-7 * (1.0 + rc)) {
      batch = std::min(m, batch * 2);
      continue;
    }
    require(rc <= par * (1.0 + 1e-9) + kGeomEps, Errc::Internal,
            "voronoi: cell circumradius exceeds its certified bound");
    return cell;
  }
}

PeriodicTiling voronoi_tiling(const lattice::Multilattice& ml) {
  const double par = ml.base.par_radius;
  const auto torus = lattice::Torus::make(ml.base, 3.0 * par + 2e-3 * par);
  std::vector<geom::Polytope> cells;
  cells.reserve(ml.k());
  for (int i = 0; i < ml.k(); ++i)
    cells.push_back(voronoi_cell_of_cloud(torus, ml.translates, i).translated(ml.translates[i]));
  return PeriodicTiling::checked(ml, std::move(cells));
}

PeriodicTiling PeriodicTiling::unchecked(const lattice::Multilattice& ml,
                                         std::vector<geom::Polytope> cells) {
  PeriodicTiling t;
  t.ml = ml;
  t.cells = std::move(cells);
  double rc = 0.0;
  for (int i = 0; i < t.k(); ++i) rc = std::max(rc, t.cells[i].circumradius_about(t.site(i)));
  t.max_circumradius = rc;
  return t;
}

PeriodicTiling PeriodicTiling::checked(const lattice::Multilattice& ml,
                                       std::vector<geom::Polytope> cells, uint64_t sample_seed) {
  require(static_cast<int>(cells.size()) == ml.k(), Errc::InvalidInput,
          "tiling: need exactly one cell per translate class");
  const int n = ml.base.n;
  for (const auto& c : cells)
    require(c.n == n, Errc::InvalidInput, "tiling: cell dimension mismatch");

  PeriodicTiling t = unchecked(ml, std::move(cells));
  double volsum = 0.0;
  for (int i = 0; i < t.k(); ++i) {
    require(t.cells[i].interior_slack(t.site(i)) > kGeomEps, Errc::InvalidInput,
            "tiling: site not strictly inside its cell");
    volsum += t.cells[i].volume();
  }
  const double cov = ml.base.covolume;
  require(std::abs(volsum - cov) <= 1e-6 * cov, Errc::InvalidInput,
          "tiling: cell volumes do not sum to the lattice covolume");

  // Sampled partition check: random points of the fundamental domain must be
  // covered by some cell copy and lie strictly inside at most one.
  const double rc = t.max_circumradius;
  const auto torus = lattice::Torus::make(ml.base, rc + ml.base.par_radius + kGeomEps);
  Rng rng(sample_seed);
  const int samples = 2048;
  for (int s = 0; s < samples; ++s) {
    Vec f(n);
    for (int i = 0; i < n; ++i) f[i] = rng.next_double();
    const Vec x = ml.base.to_ambient(f);
    int strict = 0, loose = 0;
    for (int i = 0; i < t.k(); ++i) {
      const Vec d0 = torus.nearest_image(x - t.site(i));
      const double d0len = d0.norm();
      for (size_t si = 0; si < torus.shifts.size(); ++si) {
        if (torus.shift_len[si] - d0len > rc + kGeomEps) break;
        const Vec rel = d0 + torus.shifts[si];
        if (rel.norm() > rc + kGeomEps) continue;
        const double sl = t.cells[i].interior_slack(t.site(i) + rel);
        if (sl > 1e-7) ++strict;
        if (sl > -1e-7) ++loose;
      }
    }
    require(loose >= 1, Errc::InvalidInput, "tiling: sampled point not covered by any cell");
    require(strict <= 1, Errc::InvalidInput, "tiling: sampled point interior to two cells");
  }
  return t;
}

TilingParameters tiling_parameters(const PeriodicTiling& t, const geom::ConvexBody& k,
                                   double eta) {
  require(eta > 0.0 && eta < 0.01, Errc::InvalidInput, "eta must lie in (0, 0.01)");
  require(k.dim() == t.n(), Errc::InvalidInput, "body dimension does not match the tiling");
  double alpha = std::numeric_limits<double>::infinity();
  double beta = 0.0;
  for (int i = 0; i < t.k(); ++i) {
    const Vec& s = t.site(i);
    for (const auto& h : t.cells[i].halfspaces)
      alpha = std::min(alpha, (h.b - dot(h.a, s)) / k.support(h.a));
    for (const auto& v : t.cells[i].vertices) beta = std::max(beta, k.norm(v - s));
  }
  require(alpha > kGeomEps, Errc::Construction, "tiling: a site touches its own cell boundary");
  require(beta < std::numeric_limits<double>::infinity() && beta > 0.0, Errc::Internal,
          "tiling: degenerate outer radius");
  TilingParameters p;
  p.alpha = alpha;
  p.beta = beta;
  p.gamma = beta / alpha;
  p.mu = alpha / (alpha + beta);
  p.eta = eta;
  p.forbidden = 2.0 * alpha * beta / (alpha + beta);
  p.scale = 1.0 / p.forbidden;
  return p;
}

PeriodicTiling shrink(const PeriodicTiling& t, double factor) {
  require(factor > 0.0 && factor < 1.0, Errc::InvalidInput, "shrink factor must lie in (0, 1)");
  PeriodicTiling r;
  r.ml = t.ml;
  r.cells.reserve(t.k());
  for (int i = 0; i < t.k(); ++i) r.cells.push_back(t.cells[i].shrunk_about(t.site(i), factor));
  r.max_circumradius = t.max_circumradius * factor;
  return r;
}

XiRatios lattice_xi(const lattice::Lattice& lat, const geom::ConvexBody& k) {
  require(k.dim() == lat.n, Errc::InvalidInput, "body dimension does not match the lattice");
  require(k.kind() == geom::BodyKind::Ball, Errc::Unsupported,
          "covering threshold is supported for the euclidean ball only");
  XiRatios r;
  r.xi2 = lattice::lattice_minimum(lat, k) / 2.0;
  const double par = lat.par_radius;
  const auto torus = lattice::Torus::make(lat, 3.0 * par + 2e-3 * par);
  const std::vector<Vec> sites{Vec::zero(lat.n)};
  const geom::Polytope cell = voronoi_cell_of_cloud(torus, sites, 0);
  double covering = 0.0;
  for (const auto& v : cell.vertices) covering = std::max(covering, k.norm(v));
  r.xi1 = covering;
  return r;
}

}  // namespace chromatic::tiling
