#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "chromatic/bounds.hpp"
#include "chromatic/coloring.hpp"
#include "chromatic/error.hpp"
#include "chromatic/parallel.hpp"
#include "chromatic/serialize.hpp"
#include "chromatic/svg.hpp"

namespace {

using chromatic::Errc;
using chromatic::Error;
using nlohmann::json;
namespace color = chromatic::color;
namespace io = chromatic::io;
namespace lattice = chromatic::lattice;

// Common pipeline flags; a value given on the command line overrides the
// same setting from --config.
struct Common {
  std::string config;
  std::string out = ".";
  uint64_t seed = 0;
  int64_t samples = 0;
  double delta = 0.0;
  double eta = 0.0;
  int cand_res = 0;
  int sat_res = 0;
  int lift_res = 0;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_samples = nullptr;
  CLI::Option* o_delta = nullptr;
  CLI::Option* o_eta = nullptr;
};

void add_common(CLI::App* sc, Common& c, bool with_out) {
  sc->add_option("--config", c.config, "pipeline configuration JSON file");
  if (with_out) sc->add_option("--out", c.out, "output directory (default: .)");
  c.o_seed = sc->add_option("--seed", c.seed, "RNG seed (64-bit)");
  c.o_samples = sc->add_option("--samples", c.samples, "sampled unit-distance pair count");
  c.o_delta = sc->add_option("--delta", c.delta, "saturation parameter in (0,1)");
  c.o_eta = sc->add_option("--eta", c.eta, "shrink slack in (0, 0.01)");
  sc->add_option("--cand-res", c.cand_res, "candidate translate grid resolution");
  sc->add_option("--sat-res", c.sat_res, "saturation grid resolution");
  sc->add_option("--lift-res", c.lift_res, "lift verification grid resolution");
}

color::PipelineConfig make_config(const Common& c) {
  color::PipelineConfig cfg;
  if (!c.config.empty()) cfg = io::config_from_json(json::parse(io::read_file(c.config)));
  if (c.o_seed->count()) cfg.seed = c.seed;
  if (c.o_samples->count()) cfg.pair_samples = c.samples;
  if (c.o_delta->count()) cfg.delta = c.delta;
  if (c.o_eta->count()) cfg.eta = c.eta;
  if (c.cand_res) cfg.cand_res = c.cand_res;
  if (c.sat_res) cfg.sat_res = c.sat_res;
  if (c.lift_res) cfg.lift_res = c.lift_res;
  return cfg;
}

int64_t default_samples(int n) { return n == 2 ? 100000 : n == 3 ? 10000 : 1000; }
int default_lift_res(int n) { return n == 2 ? 512 : n == 3 ? 64 : 16; }

int run_gamma(const Common& c) {
  auto cfg = make_config(c);
  auto stage = color::build_tiling_stage(cfg);
  json j;
  j["schema"] = 1;
  j["n"] = stage.tiling.n();
  j["k"] = stage.tiling.k();
  j["alpha"] = stage.params.alpha;
  j["beta"] = stage.params.beta;
  j["gamma"] = stage.params.gamma;
  j["mu"] = stage.params.mu;
  j["eta"] = stage.params.eta;
  j["forbidden"] = stage.params.forbidden;
  j["scale"] = stage.params.scale;
  std::cout << io::dump_stable(j);
  return 0;
}

int run_color(const Common& c) {
  auto cfg = make_config(c);
  auto out = color::build_coloring(cfg);
  std::filesystem::create_directories(c.out);
  io::write_file(c.out + "/coloring.json", io::dump_stable(io::coloring_to_json(out.coloring)));
  io::write_file(c.out + "/report.json",
                 io::dump_stable(io::report_to_json(out.verification, out.bounds)));
  std::cout << "wrote " << c.out << "/coloring.json\n";
  std::cout << "wrote " << c.out << "/report.json\n";
  if (out.coloring.n() == 2) {
    io::write_file(c.out + "/coloring.svg", io::svg_render(out.coloring));
    std::cout << "wrote " << c.out << "/coloring.svg\n";
  }
  std::cout << "colors: " << out.coloring.colors << "\n";
  std::cout << "pass: " << (out.verification.pass ? "true" : "false") << "\n";
  return out.verification.pass ? 0 : 1;
}

int run_verify(const std::string& path, const Common& c) {
  color::Coloring col = io::coloring_from_json(json::parse(io::read_file(path)));
  const int64_t samples = c.o_samples->count() ? c.samples : default_samples(col.n());
  const uint64_t seed = c.o_seed->count() ? c.seed : 123456789ULL;
  auto rep = color::verify_coloring(col, samples, seed);

  // Re-check full coverage on a fundamental-domain grid: a coloring with a
  // missing translate classifies some region nowhere.
  const int res = c.lift_res ? c.lift_res : default_lift_res(col.n());
  auto grid = lattice::sample_grid(col.torus, res);
  std::vector<uint8_t> bad(grid.size(), 0);
  chromatic::parallel_for(static_cast<int64_t>(grid.size()), [&](int64_t i) {
    try {
      color::color_of(col, grid[i] * col.scale);
    } catch (const Error& e) {
      if (e.code() != Errc::Certificate) throw;
      bad[i] = 1;
    }
  });
  int64_t uncovered = 0;
  for (uint8_t b : bad) uncovered += b;
  const bool covered = uncovered == 0;
  rep.pass = rep.pass && covered;

  color::BoundReport b;
  b.n = col.n();
  b.k = col.k();
  b.gamma = col.params.gamma;
  b.color_count = col.colors;
  json j = io::report_to_json(rep, b);
  j["reload_coverage"] =
      json{{"grid_res", res}, {"uncovered", uncovered}, {"pass", covered}};
  std::cout << io::dump_stable(j);
  return rep.pass ? 0 : 1;
}

int run_bounds(int n, double k, double gamma, double cc) {
  auto t1 = color::theorem1_bound(n, k, gamma);
  json j;
  j["schema"] = 1;
  j["n"] = n;
  j["k"] = k;
  j["gamma"] = gamma;
  j["c"] = cc;
  j["theorem1_ln"] = t1.ln_value;
  j["theorem1_bracket"] = t1.bracket;
  j["theorem1_small_n"] = t1.small_n_warning;
  j["theorem1_linear"] = t1.ln_value < 700.0 ? json(std::exp(t1.ln_value)) : json(nullptr);
  j["theorem1_root"] = std::exp(t1.ln_value / n);
  if (n >= 3)
    j["butler"] = color::butler_bound_ln(n, n * std::log(2.0), cc);
  else
    j["butler"] = nullptr;
  std::cout << io::dump_stable(j);
  return 0;
}

int run_baseline7(const Common& c) {
  const int64_t samples = c.o_samples->count() ? c.samples : 100000;
  const uint64_t seed = c.o_seed->count() ? c.seed : 123456789ULL;
  auto [col, rep] = color::partition_seven_baseline(samples, seed);
  color::BoundReport b;
  b.n = 2;
  b.k = col.k();
  b.gamma = col.params.gamma;
  b.color_count = col.colors;
  std::filesystem::create_directories(c.out);
  io::write_file(c.out + "/coloring.json", io::dump_stable(io::coloring_to_json(col)));
  io::write_file(c.out + "/report.json", io::dump_stable(io::report_to_json(rep, b)));
  io::write_file(c.out + "/coloring.svg", io::svg_render(col));
  std::cout << "wrote " << c.out << "/coloring.json\n";
  std::cout << "wrote " << c.out << "/report.json\n";
  std::cout << "wrote " << c.out << "/coloring.svg\n";
  std::cout << "colors: " << col.colors << "\n";
  std::cout << "pass: " << (rep.pass ? "true" : "false") << "\n";
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"periodic colorings of R^n with no two same-colored points at K-distance 1"};
  app.require_subcommand(1);

  Common cg, cc, cv, cb7;
  auto* sc_gamma = app.add_subcommand("gamma", "tiling parameters (alpha, beta, gamma, mu) as JSON");
  add_common(sc_gamma, cg, false);

  auto* sc_color = app.add_subcommand("color", "full pipeline: coloring.json, report.json, SVG");
  add_common(sc_color, cc, true);

  auto* sc_verify = app.add_subcommand("verify", "reload coloring.json and re-verify");
  std::string verify_path;
  sc_verify->add_option("coloring", verify_path, "path to coloring.json")->required();
  add_common(sc_verify, cv, false);

  auto* sc_bounds = app.add_subcommand("bounds", "evaluate the upper-bound formulas");
  int bn = 2;
  double bk = 1.0, bgamma = 2.0, bc = 3.0;
  sc_bounds->add_option("-n,--n", bn, "dimension")->required();
  sc_bounds->add_option("-k,--k", bk, "translate class count (enters as 2 ln k)");
  sc_bounds->add_option("-g,--gamma", bgamma, "tiling parameter gamma");
  sc_bounds->add_option("-c,--c", bc, "additive constant in the n^(log2 ln n + c) factor");

  auto* sc_base = app.add_subcommand("baseline7", "classical 7-coloring of the plane");
  add_common(sc_base, cb7, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(sc_gamma)) return run_gamma(cg);
    if (app.got_subcommand(sc_color)) return run_color(cc);
    if (app.got_subcommand(sc_verify)) return run_verify(verify_path, cv);
    if (app.got_subcommand(sc_bounds)) return run_bounds(bn, bk, bgamma, bc);
    if (app.got_subcommand(sc_base)) return run_baseline7(cb7);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::Certificate ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
