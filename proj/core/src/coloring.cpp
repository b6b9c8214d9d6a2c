#include "chromatic/coloring.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "chromatic/error.hpp"

namespace chromatic::color {

namespace {

int default_res(int n, int two, int three, int four) {
  switch (n) {
    case 2: return two;
    case 3: return three;
    default: return four;
  }
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

PipelineConfig resolve_config(const PipelineConfig& cfg) {
  PipelineConfig r = cfg;
  require(r.n >= 2 && r.n <= kMaxDim, Errc::InvalidInput, "dimension must be 2, 3, or 4");
  if (r.construction == Construction::Hexagonal || r.construction == Construction::Square)
    require(r.n == 2, Errc::InvalidInput, "hexagonal/square constructions are planar (n = 2)");
  if (r.body.dim() == 0) r.body = geom::ConvexBody::ball(r.n);
  require(r.body.dim() == r.n, Errc::InvalidInput, "norm body dimension does not match n");
  if (r.construction == Construction::BallGeneric)
    require(r.body.kind() == geom::BodyKind::Ball, Errc::InvalidInput,
            "the generic ball construction requires a Euclidean ball body");
  require(r.eta > 0.0 && r.eta < 0.01, Errc::InvalidInput, "eta must lie in (0, 0.01)");
  if (r.delta == 0.0) r.delta = 1.0 / (2.0 * r.n * std::log(static_cast<double>(r.n)));
  require(r.delta > 0.0 && r.delta < 1.0, Errc::InvalidInput, "delta must lie in (0, 1)");
  if (r.sat_res == 0) r.sat_res = default_res(r.n, 256, 64, 16);
  if (r.cand_res == 0) r.cand_res = default_res(r.n, 64, 16, 8);
  if (r.lift_res == 0) r.lift_res = default_res(r.n, 512, 64, 16);
  require(r.sat_res >= 2 && r.cand_res >= 1 && r.lift_res >= 2, Errc::InvalidInput,
          "grid resolutions are out of range");
  if (r.pair_samples < 0) r.pair_samples = default_res(r.n, 100000, 10000, 1000);
  return r;
}

TilingStage build_tiling_stage(const PipelineConfig& cfg0) {
  PipelineConfig cfg = resolve_config(cfg0);
  TilingStage st;
  st.body = cfg.body;
  switch (cfg.construction) {
    case Construction::Hexagonal: {
      Mat basis = Mat::from_columns({Vec{1.0, 0.0}, Vec{0.5, std::sqrt(3.0) / 2.0}});
      auto lat = lattice::Lattice::make(basis);
      auto ml = lattice::Multilattice::make(lat, {Vec::zero(2)});
      st.tiling = tiling::voronoi_tiling(ml);
      break;
    }
    case Construction::Square: {
      auto lat = lattice::Lattice::make(Mat::identity(2));
      auto ml = lattice::Multilattice::make(lat, {Vec::zero(2)});
      st.tiling = tiling::voronoi_tiling(ml);
      break;
    }
    case Construction::BallGeneric: {
      auto bc = tiling::build_ball_multilattice(cfg.n);
      st.tiling = std::move(bc.tiling);
      break;
    }
    case Construction::Explicit: {
      const ExplicitSpec& spec = cfg.explicit_spec;
      require(spec.basis.n == cfg.n, Errc::InvalidInput, "explicit basis dimension mismatch");
      auto lat = lattice::Lattice::make(spec.basis);
      auto ml = lattice::Multilattice::make(lat, spec.translates);
      if (spec.cells.empty()) {
        st.tiling = tiling::voronoi_tiling(ml);
      } else {
        require(static_cast<int>(spec.cells.size()) == ml.k(), Errc::InvalidInput,
                "explicit construction needs one cell per translate class");
        std::vector<geom::Polytope> cells;
        cells.reserve(spec.cells.size());
        for (const auto& hs : spec.cells) cells.push_back(geom::intersect_halfspaces(hs, cfg.n));
        st.tiling = tiling::PeriodicTiling::checked(ml, std::move(cells));
      }
      break;
    }
  }
  st.params = tiling::tiling_parameters(st.tiling, st.body, cfg.eta);
  return st;
}

int color_of(const Coloring& c, const Vec& p) {
  require(p.n == c.n(), Errc::InvalidInput, "point dimension mismatch");
  const Vec q = p * (1.0 / c.scale);
  const auto& torus = c.torus;
  const int k = c.k();
  const double rc = c.piece_radius + kGeomEps;
  require(torus.lat.par_radius + rc <= torus.certified_radius, Errc::Internal,
          "classification torus table is too small");
  if (c.mode == Mode::CellPartition) {
    for (int i = 0; i < k; ++i) {
      const Vec d0 = torus.nearest_image(q - c.tiling.site(i));
      const double d0len = d0.norm();
      for (size_t si = 0; si < torus.shifts.size(); ++si) {
        if (torus.shift_len[si] - d0len > rc) break;
        const Vec rel = d0 + torus.shifts[si];
        if (rel.norm() > rc) continue;
        if (c.pieces[i].contains(c.tiling.site(i) + rel)) return i;
      }
    }
  } else {
    for (int j = 0; j < c.colors; ++j) {
      for (int i = 0; i < k; ++i) {
        const Vec d0 = torus.nearest_image(q - c.translates[j] - c.tiling.site(i));
        const double d0len = d0.norm();
        for (size_t si = 0; si < torus.shifts.size(); ++si) {
          if (torus.shift_len[si] - d0len > rc) break;
          const Vec rel = d0 + torus.shifts[si];
          if (rel.norm() > rc) continue;
          if (c.pieces[i].contains(c.tiling.site(i) + rel)) return j;
        }
      }
    }
  }
  fail(Errc::Certificate, "point " + point_string(p) + " is not covered by any color class");
}

BuildOutput build_coloring(const PipelineConfig& cfg0) {
  PipelineConfig cfg = resolve_config(cfg0);
  TilingStage st = build_tiling_stage(cfg);
  const tiling::TilingParameters& params = st.params;
  const int n = cfg.n;
  const double nu = params.mu * (1.0 - cfg.eta);
  const double rho = params.alpha * nu * cfg.delta / 2.0;

  auto torus = lattice::Torus::for_body(st.tiling.ml.base, st.body);
  auto lam = cover::saturate(torus, st.body, rho, cfg.sat_res);
  auto inst = cover::build_instance(lam, st.tiling, params, cfg.delta, cfg.cand_res);
  auto selection = cover::greedy_cover(inst);

  double tau = 0.0;
  bool tau_exact = false;
  try {
    auto [frac, value] = cover::fractional_optimum(inst);
    tau = value;
    tau_exact = true;
  } catch (const Error& e) {
    if (e.code() != Errc::Unsupported) throw;
    tau = cover::measure_bound(params, cfg.delta, n);
  }

  auto cert = cover::lift_cover(inst, selection, st.tiling, params, cfg.lift_res);

  BuildOutput out;
  Coloring& c = out.coloring;
  c.body = st.body;
  c.tiling = st.tiling;
  c.params = params;
  c.mode = Mode::ShrunkCover;
  c.nu = nu;
  c.scale = params.scale;
  auto shrunk = tiling::shrink(st.tiling, nu);
  c.pieces = std::move(shrunk.cells);
  c.piece_radius = shrunk.max_circumradius;
  c.translates.reserve(selection.size());
  for (int idx : selection) c.translates.push_back(inst.candidates[idx]);
  c.colors = static_cast<int>(selection.size());
  c.torus = std::move(torus);

  BoundReport& b = out.bounds;
  b.n = n;
  b.k = st.tiling.k();
  b.gamma = params.gamma;
  b.delta = cfg.delta;
  auto t1 = theorem1_bound(n, static_cast<double>(b.k), params.gamma);
  b.theorem1_ln = t1.ln_value;
  b.theorem1_small_n = t1.small_n_warning;
  b.tau_star = tau;
  b.tau_exact = tau_exact;
  b.finite_run_bound = finite_run_bound(inst.max_set_size, tau);
  b.measure_bound = cover::measure_bound(params, cfg.delta, n);
  b.max_set_size = inst.max_set_size;
  b.butler_value = n >= 3 ? butler_bound(n, std::pow(2.0, n), 3.0) : 0.0;
  b.color_count = c.colors;
  if (tau_exact)
    require(c.colors <= b.finite_run_bound + 1e-9, Errc::Internal,
            "greedy selection exceeds its guarantee against the exact fractional optimum");

  out.verification = verify_coloring(c, cfg.pair_samples, cfg.seed);
  out.verification.cover = cert;
  out.verification.has_cover = true;
  out.verification.pass = out.verification.structural.pass && out.verification.sampled.pass;
  return out;
}

}  // namespace chromatic::color
