#include "chromatic/cover.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>

#include "chromatic/lp.hpp"
#include "chromatic/parallel.hpp"

namespace chromatic::cover {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double torus_k_distance(const lattice::Torus& torus, const geom::ConvexBody& k, const Vec& p,
                        const Vec& q) {
  if (k.kind() == geom::BodyKind::Ball) return torus.distance_euclid(p, q) / k.scale();
  return torus.distance(k, p, q);
}

std::string point_string(const Vec& v) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (int i = 0; i < v.n; ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

int BitMatrix::row_popcount(int r) const {
  const uint64_t* w = row(r);
  int c = 0;
  for (int i = 0; i < words; ++i) c += std::popcount(w[i]);
  return c;
}

bool BitMatrix::covers_all() const {
  if (ground == 0) return true;
  std::vector<uint64_t> acc(words, 0);
  for (int r = 0; r < rows; ++r) {
    const uint64_t* w = row(r);
    for (int i = 0; i < words; ++i) acc[i] |= w[i];
  }
  for (int g = 0; g < ground; ++g)
    if (!((acc[g >> 6] >> (g & 63)) & 1)) return false;
  return true;
}

BitMatrix BitMatrix::make(int rows, int ground) {
  require(rows >= 0 && ground >= 0, Errc::InvalidInput, "bit matrix dimensions must be nonnegative");
  BitMatrix m;
  m.rows = rows;
  m.ground = ground;
  m.words = (ground + 63) / 64;
  m.bits.assign(static_cast<size_t>(rows) * m.words, 0);
  return m;
}

BitMatrix BitMatrix::from_lists(int ground, const std::vector<std::vector<int>>& sets) {
  BitMatrix m = make(static_cast<int>(sets.size()), ground);
  for (int r = 0; r < m.rows; ++r)
    for (int g : sets[r]) {
      require(g >= 0 && g < ground, Errc::InvalidInput, "set member out of ground range");
      m.set(r, g);
    }
  return m;
}

SaturatedPacking saturate(const lattice::Torus& torus, const geom::ConvexBody& k, double rho,
                          int grid_res) {
  require(rho > 0.0, Errc::InvalidInput, "packing radius must be positive");
  require(k.dim() == torus.lat.n, Errc::InvalidInput, "body dimension does not match the torus");
  // A grid that cannot resolve the packing scale would saturate into an
  // enormous set whose covering certificate is doomed; reject it up front.
  const double cell_circ = 2.0 * torus.lat.par_radius / grid_res;
  require(2.0 * rho >= 3.0 * cell_circ, Errc::Resolution,
          "saturation grid is too coarse for the packing radius: need "
          "2*rho >= 3 grid cell circumradii; increase the grid resolution or delta");
  const std::vector<Vec> grid = lattice::sample_grid(torus, grid_res);
  const int64_t g = static_cast<int64_t>(grid.size());
  const int n = torus.lat.n;
  const int res = grid_res;

  // Distances are clamped at `cap`: an insertion only has to update grid
  // points within K-distance cap of it, which bounds the update to a fixed
  // index box instead of the whole grid. Stored values are upper bounds that
  // agree with the true distance whenever they are below the clamp, which is
  // all the insertion test (>= 2*rho < cap) and the final maxima need.
  const double cap = 4.0 * rho;
  const double upd_radius = cap * k.euclid_circumradius() + cell_circ + kGeomEps;
  std::array<int64_t, kMaxDim> stride{};
  stride[0] = 1;
  for (int a = 1; a < n; ++a) stride[a] = stride[a - 1] * res;
  // Per axis: index offsets reaching every grid point whose nearest image
  // lies within upd_radius (fractional width via rows of the basis inverse).
  std::vector<std::vector<int>> offs(n);
  for (int a = 0; a < n; ++a) {
    double rn = 0.0;
    for (int c2 = 0; c2 < n; ++c2) rn += torus.lat.inv.at(a, c2) * torus.lat.inv.at(a, c2);
    const double w = std::ceil(upd_radius * std::sqrt(rn) * res);
    if (2.0 * w + 1.0 >= static_cast<double>(res)) {
      for (int o = 0; o < res; ++o) offs[a].push_back(o);  // wraps the whole axis
    } else {
      for (int o = -static_cast<int>(w); o <= static_cast<int>(w); ++o) offs[a].push_back(o);
    }
  }
  int64_t nslots = 1;  // one slot per offset combination on axes 1..n-1
  for (int a = 1; a < n; ++a) nslots *= static_cast<int64_t>(offs[a].size());
  const bool full0 = static_cast<int>(offs[0].size()) == res;

  std::vector<double> dist(g, cap);
  constexpr int64_t kChunks = 256;
  std::vector<int64_t> part(kChunks);
  const auto argmax = [&]() {
    parallel_for(kChunks, [&](int64_t c) {
      const int64_t lo = c * g / kChunks, hi = (c + 1) * g / kChunks;
      int64_t b = -1;
      for (int64_t i = lo; i < hi; ++i)
        if (b < 0 || dist[i] > dist[b] || (dist[i] == dist[b] && lex_less(grid[i], grid[b])))
          b = i;
      part[c] = b;
    });
    int64_t best = -1;
    for (int64_t b : part) {
      if (b < 0) continue;
      if (best < 0 || dist[b] > dist[best] || (dist[b] == dist[best] && lex_less(grid[b], grid[best])))
        best = b;
    }
    return best;
  };

  std::vector<Vec> pts;
  for (;;) {
    const int64_t best = argmax();
    if (!(dist[best] >= 2.0 * rho)) break;
    const Vec p = grid[best];
    pts.push_back(p);
    std::array<int, kMaxDim> ip{};
    int64_t rem = best;
    for (int a = 0; a < n; ++a) {
      ip[a] = static_cast<int>(rem % res);
      rem /= res;
    }
    parallel_for(nslots, [&](int64_t s) {
      int64_t base = 0;
      int64_t srem = s;
      for (int a = 1; a < n; ++a) {
        const auto& oa = offs[a];
        const int o = oa[srem % oa.size()];
        srem /= static_cast<int64_t>(oa.size());
        const int t = static_cast<int>(oa.size()) == res ? o : (ip[a] + o + res) % res;
        base += stride[a] * t;
      }
      for (int o : offs[0]) {
        const int t0 = full0 ? o : (ip[0] + o + res) % res;
        const int64_t j = base + t0;
        const double d = torus_k_distance(torus, k, grid[j], p);
        if (d < dist[j]) dist[j] = d;
      }
    });
  }

  SaturatedPacking pack;
  pack.torus = torus;
  pack.body = k;
  pack.rho = rho;
  pack.points = std::move(pts);
  const int m = pack.size();
  require(m >= 1, Errc::Internal, "saturation produced an empty point set");

  SaturationCertificate cert;
  cert.grid_res = grid_res;

  if (k.kind() == geom::BodyKind::Ball) {
    // Exact covering radius via the Voronoi diagram of the set: the farthest
    // torus point from the set is one of the cells' vertices. Grid saturation
    // can leave continuum deep holes slightly beyond 2*rho between grid
    // points; those holes are exactly the far vertices, and a far vertex is
    // itself a valid insertion (its distance to every site is its own vertex
    // distance > 2*rho). Insert them farthest-first and recompute until the
    // exact covering radius certifies; each round grows the packing inside a
    // bounded torus, so the loop terminates.
    const double par = torus.lat.par_radius;
    const auto vtorus = lattice::Torus::make(torus.lat, 3.0 * par + 2e-3 * par);
    double covering = 0.0;
    for (int round = 0;; ++round) {
      require(round < 64, Errc::Resolution,
              "saturation repair did not converge; increase the grid resolution");
      const int mv = pack.size();
      std::vector<std::vector<std::pair<double, Vec>>> deep(mv);
      std::vector<double> site_max(mv, 0.0);
      parallel_for(mv, [&](int64_t i) {
        const geom::Polytope cell =
            tiling::voronoi_cell_of_cloud(vtorus, pack.points, static_cast<int>(i));
        double far = 0.0;
        for (const auto& v : cell.vertices) {
          const double d = v.norm() / k.scale();
          far = std::max(far, d);
          if (d > 2.0 * rho * (1.0 + 1e-12))
            deep[i].emplace_back(d, torus.reduce(v + pack.points[i]));
        }
        site_max[i] = far;
      });
      covering = 0.0;
      for (double v : site_max) covering = std::max(covering, v);
      if (covering <= 2.0 * rho * (1.0 + 1e-9) + kGeomEps) break;
      std::vector<std::pair<double, Vec>> cand;
      for (auto& di : deep)
        for (auto& dv : di) cand.push_back(std::move(dv));
      std::sort(cand.begin(), cand.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return lex_less(a.second, b.second);
      });
      int added = 0;
      for (const auto& [d, v] : cand) {
        double dmin = kInf;
        for (const auto& p : pack.points)
          dmin = std::min(dmin, torus_k_distance(torus, k, v, p));
        if (dmin >= 2.0 * rho) {
          pack.points.push_back(v);
          ++added;
        }
      }
      require(added > 0, Errc::Internal, "saturation repair found no insertable deep hole");
    }
    cert.covering_radius = covering;
    cert.exact = true;
  } else {
    // Grid bound: every torus point is within K-distance lip*h of a grid
    // point (h = grid cell circumradius, lip = 1/Euclidean inradius of K),
    // and every grid point is within max(dist) of the set.
    double maxgrid = 0.0;
    for (int64_t i = 0; i < g; ++i) maxgrid = std::max(maxgrid, dist[i]);
    const double h = torus.lat.par_radius / grid_res;
    cert.covering_radius = maxgrid + h / k.euclid_inradius();
    cert.exact = false;
  }
  require(cert.covering_radius <= 2.0 * rho * (1.0 + 1e-9) + kGeomEps, Errc::Resolution,
          "saturation certificate failed: covering radius bound exceeds 2*rho; "
          "increase the saturation grid resolution");

  // Pairwise distances, including each point against its own periodic images.
  const int mf = pack.size();
  double pairwise = lattice::lattice_minimum(torus.lat, k);
  if (mf > 1) {
    std::vector<double> row_min(mf, kInf);
    parallel_for(mf, [&](int64_t i) {
      double bi = kInf;
      for (int j = 0; j < mf; ++j)
        if (j != static_cast<int>(i))
          bi = std::min(bi, torus_k_distance(torus, k, pack.points[i], pack.points[j]));
      row_min[i] = bi;
    });
    for (double v : row_min) pairwise = std::min(pairwise, v);
  }
  cert.min_pairwise = pairwise;
  require(pairwise >= 2.0 * rho - 1e-9 * (1.0 + 2.0 * rho), Errc::Internal,
          "saturation produced an invalid packing");

  pack.certificate = cert;
  return pack;
}

CoverInstance build_instance(const SaturatedPacking& lam, const tiling::PeriodicTiling& psi,
                             const tiling::TilingParameters& params, double delta, int cand_res) {
  require(delta > 0.0 && delta < 1.0, Errc::InvalidInput, "delta must lie in (0, 1)");
  require(cand_res >= 2, Errc::InvalidInput, "candidate resolution must be at least 2");
  const int n = psi.n();
  require(lam.torus.lat.n == n && lam.torus.lat.basis.a == psi.ml.base.basis.a,
          Errc::InvalidInput, "packing torus and tiling lattice differ");
  const double nu = params.mu * (1.0 - params.eta);
  require(std::abs(lam.rho - params.alpha * nu * delta / 2.0) <= 1e-9 * (1.0 + lam.rho),
          Errc::InvalidInput, "packing radius does not equal alpha*nu*delta/2");

  CoverInstance inst;
  inst.ground = lam;
  inst.delta = delta;
  inst.nu_shrink = nu * (1.0 - delta);
  inst.candidates = lattice::sample_grid(lam.torus, cand_res);

  const tiling::PeriodicTiling shr = tiling::shrink(psi, inst.nu_shrink);
  const double rc = shr.max_circumradius;
  const lattice::Torus& torus = lam.torus;
  require(torus.certified_radius >= rc + torus.lat.par_radius + kGeomEps, Errc::Internal,
          "torus table too small for incidence construction");

  const int nc = static_cast<int>(inst.candidates.size());
  const int ng = lam.size();
  inst.incidence = BitMatrix::make(nc, ng);
  parallel_for(nc, [&](int64_t t) {
    uint64_t* out = inst.incidence.row(static_cast<int>(t));
    for (int l = 0; l < ng; ++l) {
      bool member = false;
      for (int i = 0; i < shr.k() && !member; ++i) {
        const Vec& s = shr.site(i);
        const Vec d0 = torus.nearest_image(lam.points[l] - inst.candidates[t] - s);
        const double d0len = d0.norm();
        for (size_t si = 0; si < torus.shifts.size(); ++si) {
          if (torus.shift_len[si] - d0len > rc + kGeomEps) break;
          const Vec rel = d0 + torus.shifts[si];
          if (rel.norm() > rc + kGeomEps) continue;
          // Tolerance-free membership keeps the incidence sound for lifting.
          if (shr.cells[i].contains(s + rel, 0.0)) {
            member = true;
            break;
          }
        }
      }
      if (member) out[l >> 6] |= uint64_t{1} << (l & 63);
    }
  });

  require(inst.incidence.covers_all(), Errc::Resolution,
          "a packing point is covered by no candidate translate; "
          "increase the candidate grid resolution");
  int max_size = 0;
  for (int r = 0; r < nc; ++r) max_size = std::max(max_size, inst.incidence.row_popcount(r));
  inst.max_set_size = max_size;
  const double bound =
      psi.k() * std::pow(2.0 * params.gamma / delta, n) * (1.0 + 1e-9);
  require(max_size <= bound, Errc::Internal, "incidence bound k*(2*gamma/delta)^n violated");
  return inst;
}

std::vector<int> greedy_cover_sets(const BitMatrix& m) {
  require(m.ground >= 1, Errc::InvalidInput, "empty ground set");
  std::vector<uint64_t> covered(m.words, 0);
  std::vector<int> gains(m.rows, 0);
  std::vector<int> sel;
  int remaining = m.ground;
  while (remaining > 0) {
    parallel_for(m.rows, [&](int64_t r) {
      const uint64_t* w = m.row(static_cast<int>(r));
      int c = 0;
      for (int i = 0; i < m.words; ++i) c += std::popcount(w[i] & ~covered[i]);
      gains[r] = c;
    });
    int best = 0;
    for (int r = 1; r < m.rows; ++r)
      if (gains[r] > gains[best]) best = r;
    require(gains[best] > 0, Errc::InvalidInput, "set cover instance is infeasible");
    const uint64_t* w = m.row(best);
    for (int i = 0; i < m.words; ++i) covered[i] |= w[i];
    remaining -= gains[best];
    sel.push_back(best);
  }
  return sel;
}

std::vector<int> greedy_cover(const CoverInstance& inst) { return greedy_cover_sets(inst.incidence); }

std::pair<FractionalCover, double> fractional_optimum_sets(const BitMatrix& m) {
  require(m.ground >= 1 && m.rows >= 1, Errc::InvalidInput, "empty cover instance");
  require(m.covers_all(), Errc::InvalidInput, "set cover instance is infeasible");

  // The covering LP is solved through its dual, the packing LP:
  //   maximize sum(y) over ground weights y >= 0 with sum over each set <= 1.
  // That form starts primal-feasible at y = 0 (every row is a <= with unit
  // rhs), so the solve is a single phase with no artificial variables — the
  // main source of degenerate pivoting and numerical drift on 0/1 covering
  // data. Strong duality gives the covering optimum as the same value, and
  // the covering weights are the (refactorized, hence accurate) row duals.
  geom::LpProblem lp;
  lp.num_vars = m.ground;
  lp.c.assign(m.ground, -1.0);  // maximize sum(y)
  for (int r = 0; r < m.rows; ++r) {
    std::vector<double> row(m.ground, 0.0);
    for (int g = 0; g < m.ground; ++g)
      if (m.get(r, g)) row[g] = 1.0;
    lp.add_row(row, geom::Sense::Le, 1.0);
  }
  const geom::LpSolution sol = geom::solve_lp(lp);
  require(sol.status == geom::LpStatus::Optimal, Errc::Internal,
          "covering LP did not reach an optimum");
  require(sol.certified, Errc::Internal, "covering LP solution failed certification");
  const double tau = -sol.value;

  FractionalCover fc;
  fc.weights.assign(m.rows, 0.0);
  for (int r = 0; r < m.rows; ++r) {
    const double w = -sol.dual[r];  // multipliers of <= rows are <= 0 here
    require(w >= -1e-7, Errc::Internal, "covering LP produced a negative weight");
    fc.weights[r] = std::max(0.0, w);
    fc.total += fc.weights[r];
  }
  // Independent feasibility check of the recovered weights.
  for (int g = 0; g < m.ground; ++g) {
    double cov = 0.0;
    for (int r = 0; r < m.rows; ++r)
      if (m.get(r, g)) cov += fc.weights[r];
    require(cov >= 1.0 - 1e-6, Errc::Internal, "covering LP weights leave a point uncovered");
  }
  require(std::abs(fc.total - tau) <= 1e-6 * (1.0 + std::abs(tau)), Errc::Internal,
          "covering LP weight total disagrees with the optimum");
  return {fc, tau};
}

std::pair<FractionalCover, double> fractional_optimum(const CoverInstance& inst) {
  require(static_cast<int>(inst.candidates.size()) <= 2000 && inst.ground.size() <= 2000,
          Errc::Unsupported,
          "cover LP size guard exceeded (over 2000 candidates or ground points); "
          "fall back to the measure bound");
  auto out = fractional_optimum_sets(inst.incidence);
  const double lower =
      static_cast<double>(inst.ground.size()) / static_cast<double>(inst.max_set_size);
  require(out.second >= lower - 1e-6 * (1.0 + lower), Errc::Internal,
          "fractional optimum below the counting lower bound");
  return out;
}

double measure_bound(const tiling::TilingParameters& params, double delta, int n) {
  require(delta > 0.0 && delta < 1.0, Errc::InvalidInput, "delta must lie in (0, 1)");
  return std::pow((1.0 + params.gamma) / (1.0 - delta), n);
}

CoverCertificate lift_cover(const CoverInstance& inst, const std::vector<int>& selection,
                            const tiling::PeriodicTiling& psi,
                            const tiling::TilingParameters& params, int sample_res) {
  require(sample_res >= 2, Errc::InvalidInput, "lift grid resolution must be at least 2");
  require(!selection.empty(), Errc::InvalidInput, "empty cover selection");
  const int nc = static_cast<int>(inst.candidates.size());
  for (int j : selection)
    require(j >= 0 && j < nc, Errc::InvalidInput, "selection index out of range");

  const double nu = params.mu * (1.0 - params.eta);
  const double rho = inst.ground.rho;
  require(std::abs(rho - params.alpha * nu * inst.delta / 2.0) <= 1e-9 * (1.0 + rho),
          Errc::InvalidInput, "packing radius does not equal alpha*nu*delta/2");
  const auto& cert = inst.ground.certificate;
  require(cert.min_pairwise >= 2.0 * rho - 1e-9 * (1.0 + 2.0 * rho), Errc::InvalidInput,
          "packing certificate violated");
  require(cert.covering_radius <= 2.0 * rho * (1.0 + 1e-9) + kGeomEps, Errc::InvalidInput,
          "saturation certificate violated");

  // The selection must cover every packing point.
  {
    std::vector<uint64_t> acc(inst.incidence.words, 0);
    for (int j : selection) {
      const uint64_t* w = inst.incidence.row(j);
      for (int i = 0; i < inst.incidence.words; ++i) acc[i] |= w[i];
    }
    for (int g = 0; g < inst.incidence.ground; ++g)
      require((acc[g >> 6] >> (g & 63)) & 1, Errc::InvalidInput,
              "selection does not cover the packing");
  }

  const tiling::PeriodicTiling shr = tiling::shrink(psi, nu);
  const double rc = shr.max_circumradius;
  const lattice::Torus& torus = inst.ground.torus;
  require(torus.certified_radius >= rc + torus.lat.par_radius + kGeomEps, Errc::Internal,
          "torus table too small for lift verification");

  const std::vector<Vec> grid = lattice::sample_grid(torus, sample_res);
  const int64_t g = static_cast<int64_t>(grid.size());
  std::vector<double> best(g, -kInf);
  parallel_for(g, [&](int64_t x) {
    double bx = -kInf;
    for (int j : selection) {
      for (int i = 0; i < shr.k(); ++i) {
        const Vec& s = shr.site(i);
        const Vec d0 = torus.nearest_image(grid[x] - inst.candidates[j] - s);
        const double d0len = d0.norm();
        for (size_t si = 0; si < torus.shifts.size(); ++si) {
          if (torus.shift_len[si] - d0len > rc + kGeomEps) break;
          const Vec rel = d0 + torus.shifts[si];
          if (rel.norm() > rc + kGeomEps) continue;
          bx = std::max(bx, shr.cells[i].interior_slack(s + rel));
        }
      }
    }
    best[x] = bx;
  });

  double min_slack = kInf;
  int64_t worst = 0;
  for (int64_t x = 0; x < g; ++x)
    if (best[x] < min_slack) {
      min_slack = best[x];
      worst = x;
    }
  if (!(min_slack >= -1e-7)) {
    fail(Errc::Certificate,
         "lift verification failed: grid point " + point_string(grid[worst]) +
             " lies in no translated cell (slack " + std::to_string(min_slack) + ")");
  }

  CoverCertificate out;
  out.rho = rho;
  out.min_pairwise = cert.min_pairwise;
  out.covering_radius = cert.covering_radius;
  out.nu = nu;
  out.ground_size = inst.ground.size();
  out.selection_size = static_cast<int>(selection.size());
  out.grid_res = sample_res;
  out.min_slack = min_slack;
  return out;
}

}  // namespace chromatic::cover

namespace chromatic::tiling {

BallConstruction build_ball_multilattice(int n) {
  require(n >= 2 && n <= kMaxDim, Errc::InvalidInput,
          "ball construction supports dimensions 2..4");
  const lattice::Lattice lat = lattice::Lattice::make(Mat::identity(n).scaled(2.0));
  const geom::ConvexBody k = geom::ConvexBody::ball(n, 1.0);
  const lattice::Torus torus = lattice::Torus::for_body(lat, k);
  const int res = n == 2 ? 64 : (n == 3 ? 16 : 8);
  const cover::SaturatedPacking pack = cover::saturate(torus, k, 1.0, res);

  BallConstruction out;
  out.ml = lattice::Multilattice::make(lat, pack.points);
  out.tiling = voronoi_tiling(out.ml);

  // vol(torus)/vol(unit ball) caps the translate count.
  const double ball_vol = std::pow(std::acos(-1.0), n / 2.0) / std::tgamma(n / 2.0 + 1.0);
  require(out.ml.k() <= lat.covolume / ball_vol + 1e-9, Errc::Internal,
          "ball construction: translate count exceeds the volume bound");
  const TilingParameters params = tiling_parameters(out.tiling, k, 1e-6);
  require(params.gamma <= 2.0 + 1e-9, Errc::Internal, "ball construction: gamma exceeds 2");
  return out;
}

}  // namespace chromatic::tiling
