#include "chromatic/serialize.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "chromatic/error.hpp"

namespace chromatic::io {

namespace {

using nlohmann::json;

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.n; ++i) a.push_back(v[i]);
  return a;
}

Vec vec_from_json(const json& j, int n) {
  require(j.is_array() && static_cast<int>(j.size()) == n, Errc::InvalidInput,
          "expected a coordinate array of length n");
  Vec v = Vec::zero(n);
  for (int i = 0; i < n; ++i) v[i] = j[i].get<double>();
  return v;
}

json body_to_json(const geom::ConvexBody& b) {
  json j;
  if (b.kind() == geom::BodyKind::Ball) {
    j["kind"] = "ball";
    j["radius"] = b.scale();
  } else {
    j["kind"] = "polytope";
    json vs = json::array();
    for (const auto& v : b.vertices()) vs.push_back(vec_to_json(v));
    j["vertices"] = vs;
  }
  return j;
}

geom::ConvexBody body_from_json(const json& j, int n) {
  const std::string kind = j.value("kind", "ball");
  if (kind == "ball") return geom::ConvexBody::ball(n, j.value("radius", 1.0));
  require(kind == "polytope", Errc::InvalidInput, "body kind must be \"ball\" or \"polytope\"");
  std::vector<Vec> vs;
  for (const auto& e : j.at("vertices")) vs.push_back(vec_from_json(e, n));
  return geom::ConvexBody::polytope(vs);
}

json basis_to_json(const Mat& m) {
  json cols = json::array();
  for (int c = 0; c < m.n; ++c) cols.push_back(vec_to_json(m.col(c)));
  return cols;
}

Mat basis_from_json(const json& j, int n) {
  require(j.is_array() && static_cast<int>(j.size()) == n, Errc::InvalidInput,
          "expected n basis columns");
  std::vector<Vec> cols;
  for (const auto& e : j) cols.push_back(vec_from_json(e, n));
  return Mat::from_columns(cols);
}

json halfspaces_to_json(const std::vector<geom::Halfspace>& hs) {
  json a = json::array();
  for (const auto& h : hs) a.push_back(json{{"a", vec_to_json(h.a)}, {"b", h.b}});
  return a;
}

std::vector<geom::Halfspace> halfspaces_from_json(const json& j, int n) {
  std::vector<geom::Halfspace> hs;
  for (const auto& e : j) hs.push_back({vec_from_json(e.at("a"), n), e.at("b").get<double>()});
  return hs;
}

std::string mode_name(color::Mode m) {
  return m == color::Mode::ShrunkCover ? "shrunk_cover" : "cell_partition";
}

color::Mode mode_from_name(const std::string& s) {
  if (s == "shrunk_cover") return color::Mode::ShrunkCover;
  if (s == "cell_partition") return color::Mode::CellPartition;
  fail(Errc::InvalidInput, "unknown coloring mode: " + s);
}

}  // namespace

json coloring_to_json(const color::Coloring& c) {
  json j;
  j["schema"] = 1;
  j["n"] = c.n();
  j["body"] = body_to_json(c.body);
  j["lattice_basis"] = basis_to_json(c.tiling.ml.base.basis);
  json classes = json::array();
  for (const auto& t : c.tiling.ml.translates) classes.push_back(vec_to_json(t));
  j["translate_classes"] = classes;
  json cells = json::array();
  for (const auto& cell : c.tiling.cells)
    cells.push_back(json{{"halfspaces", halfspaces_to_json(cell.halfspaces)}});
  j["cells"] = cells;
  j["nu"] = c.nu;
  j["scale"] = c.scale;
  j["mode"] = mode_name(c.mode);
  json ts = json::array();
  for (const auto& t : c.translates) ts.push_back(vec_to_json(t));
  j["translates"] = ts;
  j["color_count"] = c.colors;
  return j;
}

color::Coloring coloring_from_json(const json& j) {
  require(j.value("schema", 0) == 1, Errc::InvalidInput, "unsupported coloring schema");
  const int n = j.at("n").get<int>();
  require(n >= 2 && n <= kMaxDim, Errc::InvalidInput, "dimension must be 2, 3, or 4");

  color::Coloring c;
  c.body = body_from_json(j.at("body"), n);
  auto lat = lattice::Lattice::make(basis_from_json(j.at("lattice_basis"), n));
  std::vector<Vec> classes;
  for (const auto& e : j.at("translate_classes")) classes.push_back(vec_from_json(e, n));
  auto ml = lattice::Multilattice::make(lat, classes);

  const auto& jcells = j.at("cells");
  require(jcells.size() == classes.size(), Errc::InvalidInput,
          "cell count does not match the translate class count");
  std::vector<geom::Polytope> cells;
  for (const auto& e : jcells)
    cells.push_back(geom::intersect_halfspaces(halfspaces_from_json(e.at("halfspaces"), n), n));
  c.tiling = tiling::PeriodicTiling::checked(ml, std::move(cells));

  c.nu = j.at("nu").get<double>();
  c.scale = j.at("scale").get<double>();
  c.mode = mode_from_name(j.at("mode").get<std::string>());
  for (const auto& e : j.at("translates")) c.translates.push_back(vec_from_json(e, n));
  c.colors = j.at("color_count").get<int>();
  require(c.scale > 0.0, Errc::InvalidInput, "scale must be positive");
  require(c.nu > 0.0 && c.nu <= 1.0, Errc::InvalidInput, "nu must lie in (0, 1]");

  // Derived parameters are recomputed from the rebuilt geometry; the shrink
  // factor then pins down eta through nu = mu * (1 - eta).
  c.params = tiling::tiling_parameters(c.tiling, c.body, 1e-6);
  if (c.mode == color::Mode::ShrunkCover) {
    require(static_cast<int>(c.translates.size()) == c.colors, Errc::InvalidInput,
            "translate count does not match color_count");
    const double eta = 1.0 - c.nu / c.params.mu;
    require(eta > 0.0 && eta < 0.01, Errc::InvalidInput,
            "nu is inconsistent with the tiling (eta outside (0, 0.01))");
    c.params.eta = eta;
    require(std::abs(c.scale - c.params.scale) <= 1e-9 * (1.0 + c.params.scale),
            Errc::InvalidInput, "scale is inconsistent with the tiling parameters");
    auto shrunk = tiling::shrink(c.tiling, c.nu);
    c.pieces = std::move(shrunk.cells);
    c.piece_radius = shrunk.max_circumradius;
  } else {
    require(c.colors == c.tiling.k(), Errc::InvalidInput,
            "cell-partition colorings need color_count == class count");
    c.pieces = c.tiling.cells;
    c.piece_radius = c.tiling.max_circumradius;
  }
  c.torus = lattice::Torus::for_body(lat, c.body);
  return c;
}

json report_to_json(const color::VerificationReport& v, const color::BoundReport& b) {
  json j;
  j["schema"] = 1;
  j["structural"] = json{
      {"max_scaled_diameter", v.structural.max_scaled_diameter},
      {"min_scaled_separation", v.structural.min_scaled_separation},
      {"diameter_margin", v.structural.diameter_margin},
      {"separation_margin", v.structural.separation_margin},
      {"expected_diameter_margin", v.structural.expected_diameter_margin},
      {"expected_separation_margin", v.structural.expected_separation_margin},
      {"pass", v.structural.pass},
  };
  json wit = json::array();
  for (const auto& [x, y] : v.sampled.witnesses)
    wit.push_back(json{{"x", vec_to_json(x)}, {"y", vec_to_json(y)}});
  j["sampled"] = json{
      {"pairs", v.sampled.pairs},
      {"violations", v.sampled.violations},
      {"undefined", v.sampled.undefined},
      {"witnesses", wit},
      {"pass", v.sampled.pass},
  };
  if (v.has_cover) {
    j["cover"] = json{
        {"rho", v.cover.rho},
        {"min_pairwise", v.cover.min_pairwise},
        {"covering_radius", v.cover.covering_radius},
        {"nu", v.cover.nu},
        {"ground_size", v.cover.ground_size},
        {"selection_size", v.cover.selection_size},
        {"grid_res", v.cover.grid_res},
        {"min_slack", v.cover.min_slack},
    };
  }
  j["bounds"] = json{
      {"n", b.n},
      {"k", b.k},
      {"gamma", b.gamma},
      {"delta", b.delta},
      {"theorem1_ln", b.theorem1_ln},
      {"theorem1_small_n", b.theorem1_small_n},
      {"tau_star", b.tau_star},
      {"tau_exact", b.tau_exact},
      {"finite_run_bound", b.finite_run_bound},
      {"measure_bound", b.measure_bound},
      {"max_set_size", b.max_set_size},
      {"butler_value", b.butler_value},
      {"color_count", b.color_count},
  };
  j["pass"] = v.pass;
  return j;
}

color::PipelineConfig config_from_json(const json& j) {
  color::PipelineConfig cfg;
  const std::string cons = j.value("construction", "hexagonal");
  if (cons == "hexagonal") cfg.construction = color::Construction::Hexagonal;
  else if (cons == "square") cfg.construction = color::Construction::Square;
  else if (cons == "ball") cfg.construction = color::Construction::BallGeneric;
  else if (cons == "explicit") cfg.construction = color::Construction::Explicit;
  else fail(Errc::InvalidInput, "unknown construction: " + cons);

  cfg.n = j.value("n", 2);
  require(cfg.n >= 2 && cfg.n <= kMaxDim, Errc::InvalidInput, "dimension must be 2, 3, or 4");
  if (j.contains("body")) cfg.body = body_from_json(j.at("body"), cfg.n);
  cfg.eta = j.value("eta", cfg.eta);
  cfg.delta = j.value("delta", cfg.delta);
  cfg.sat_res = j.value("sat_res", cfg.sat_res);
  cfg.cand_res = j.value("cand_res", cfg.cand_res);
  cfg.lift_res = j.value("lift_res", cfg.lift_res);
  cfg.pair_samples = j.value("pair_samples", cfg.pair_samples);
  cfg.seed = j.value("seed", cfg.seed);
  if (cfg.construction == color::Construction::Explicit) {
    cfg.explicit_spec.basis = basis_from_json(j.at("basis"), cfg.n);
    for (const auto& e : j.at("translates"))
      cfg.explicit_spec.translates.push_back(vec_from_json(e, cfg.n));
    if (j.contains("cells"))
      for (const auto& e : j.at("cells"))
        cfg.explicit_spec.cells.push_back(halfspaces_from_json(e, cfg.n));
  }
  return cfg;
}

std::string dump_stable(const json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), Errc::InvalidInput, "cannot open for writing: " + path);
  out << content;
  out.close();
  require(out.good(), Errc::InvalidInput, "write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), Errc::InvalidInput, "cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace chromatic::io
