#include <cmath>
#include <vector>

#include "doctest.h"

#include "chromatic/coloring.hpp"
#include "chromatic/rng.hpp"
#include "fixtures.hpp"

using namespace chromatic;
using color::Construction;
using color::PipelineConfig;

TEST_CASE("config resolution fills documented defaults") {
  PipelineConfig hex;
  hex = color::resolve_config(hex);
  CHECK(hex.delta == doctest::Approx(1.0 / (4.0 * std::log(2.0))).epsilon(1e-15));
  CHECK(hex.delta == doctest::Approx(0.36067376022224085).epsilon(1e-15));
  CHECK(hex.sat_res == 256);
  CHECK(hex.cand_res == 64);
  CHECK(hex.lift_res == 512);
  CHECK(hex.pair_samples == 100000);
  CHECK(hex.eta == 1e-6);

  PipelineConfig b3;
  b3.construction = Construction::BallGeneric;
  b3.n = 3;
  b3 = color::resolve_config(b3);
  CHECK(b3.delta == doctest::Approx(1.0 / (6.0 * std::log(3.0))).epsilon(1e-15));
  CHECK(b3.delta == doctest::Approx(0.15170653777113957).epsilon(1e-15));
  CHECK(b3.sat_res == 64);
  CHECK(b3.cand_res == 16);
  CHECK(b3.lift_res == 64);
  CHECK(b3.pair_samples == 10000);

  PipelineConfig b4;  // fresh config: a resolved body is dimension-specific
  b4.construction = Construction::BallGeneric;
  b4.n = 4;
  b4 = color::resolve_config(b4);
  CHECK(b4.sat_res == 16);
  CHECK(b4.cand_res == 8);
  CHECK(b4.lift_res == 16);
  CHECK(b4.pair_samples == 1000);

  PipelineConfig bad;
  bad.eta = 0.5;
  CHECK(fixtures::raises([&] { color::resolve_config(bad); }, Errc::InvalidInput));
  bad = PipelineConfig{};
  bad.delta = 1.5;
  CHECK(fixtures::raises([&] { color::resolve_config(bad); }, Errc::InvalidInput));
  bad = PipelineConfig{};
  bad.n = 5;
  CHECK(fixtures::raises([&] { color::resolve_config(bad); }, Errc::InvalidInput));
}

TEST_CASE("hexagonal pipeline end-to-end") {
  const auto& out = fixtures::hex_build();
  const auto& c = out.coloring;
  const auto& b = out.bounds;
  const auto& v = out.verification;

  CHECK(c.colors == 12);
  CHECK(c.translates.size() == 12);
  CHECK(c.mode == color::Mode::ShrunkCover);
  CHECK(c.scale == doctest::Approx(1.8660254037844386).epsilon(1e-12));

  CHECK(b.tau_exact);
  CHECK(b.tau_star == doctest::Approx(9.194341766084483).epsilon(1e-9));
  CHECK(b.max_set_size == 12);
  CHECK(b.finite_run_bound ==
        doctest::Approx((1.0 + std::log(12.0)) * b.tau_star).epsilon(1e-12));
  CHECK(b.color_count <= b.finite_run_bound + 1e-9);
  CHECK(b.measure_bound == doctest::Approx(11.358703976337244).epsilon(1e-12));
  CHECK(b.k == 1);
  CHECK(b.butler_value == 0.0);  // the root formula needs n >= 3
  CHECK(b.theorem1_small_n);    // n = 2 sits outside the asymptotic regime

  REQUIRE(v.pass);
  CHECK(v.structural.pass);
  CHECK(v.structural.max_scaled_diameter < 1.0);
  CHECK(v.structural.min_scaled_separation > 1.0);
  CHECK(v.structural.diameter_margin > 0.0);
  CHECK(v.structural.separation_margin > 0.0);
  // Scaled piece diameter is exactly (1 - eta) up to arithmetic noise, and
  // same-color separation is 1 + eta/gamma.
  CHECK(v.structural.max_scaled_diameter == doctest::Approx(1.0 - 1e-6).epsilon(1e-12));
  CHECK(v.structural.min_scaled_separation ==
        doctest::Approx(1.0 + 1e-6 / c.params.gamma).epsilon(1e-12));
  CHECK(v.structural.expected_diameter_margin == doctest::Approx(1e-6).epsilon(1e-9));
  CHECK(v.structural.expected_separation_margin ==
        doctest::Approx(8.660254037844385e-07).epsilon(1e-9));

  CHECK(v.sampled.pairs == 100000);
  CHECK(v.sampled.violations == 0);
  CHECK(v.sampled.undefined == 0);
  CHECK(v.sampled.witnesses.empty());

  REQUIRE(v.has_cover);
  CHECK(v.cover.ground_size == 101);
  CHECK(v.cover.selection_size == 12);
  CHECK(v.cover.grid_res == 512);
  CHECK(v.cover.min_slack >= -1e-7);
  CHECK(v.cover.min_slack == doctest::Approx(0.03849588801806961).epsilon(1e-9));
  CHECK(v.cover.covering_radius == doctest::Approx(0.08239853382608943).epsilon(1e-9));
  CHECK(v.cover.min_pairwise == doctest::Approx(0.08477552505551056).epsilon(1e-9));
  CHECK(v.cover.min_pairwise >= 2.0 * v.cover.rho - 1e-9);
}

TEST_CASE("classification is total, in range, and deterministic") {
  const auto& out = fixtures::hex_build();
  const auto& c = out.coloring;
  Rng rng(51);
  for (int t = 0; t < 300; ++t) {
    const Vec p{rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)};
    const int col = color::color_of(c, p);
    CHECK(col >= 0);
    CHECK(col < c.colors);
    CHECK(color::color_of(c, p) == col);
    // Classification is periodic under the base lattice.
    const Vec shifted = p + c.scale * c.tiling.ml.base.to_ambient(Vec{3.0, -2.0});
    CHECK(color::color_of(c, shifted) == col);
  }

  // A second full run reproduces the exact same coloring.
  PipelineConfig cfg;
  cfg.construction = Construction::Hexagonal;
  cfg.cand_res = 40;
  const auto again = color::build_coloring(cfg);
  REQUIRE(again.coloring.colors == c.colors);
  for (int i = 0; i < c.colors; ++i) {
    CHECK(again.coloring.translates[i][0] == c.translates[i][0]);
    CHECK(again.coloring.translates[i][1] == c.translates[i][1]);
  }
  CHECK(again.bounds.tau_star == out.bounds.tau_star);
  CHECK(again.verification.cover.min_slack == out.verification.cover.min_slack);
}

TEST_CASE("seven-color baseline partition") {
  const auto [c, rep] = color::partition_seven_baseline(20000, 99);
  CHECK(c.colors == 7);
  CHECK(c.mode == color::Mode::CellPartition);
  CHECK(c.scale == 1.0);
  CHECK(c.k() == 7);
  REQUIRE(rep.pass);
  CHECK(rep.structural.max_scaled_diameter == doctest::Approx(0.999).epsilon(1e-12));
  CHECK(rep.structural.min_scaled_separation ==
        doctest::Approx(1.3215527798767623).epsilon(1e-9));
  CHECK(rep.sampled.violations == 0);
  CHECK(rep.sampled.undefined == 0);

  // Every plane point belongs to exactly one of the seven classes.
  Rng rng(52);
  for (int t = 0; t < 200; ++t) {
    const Vec p{rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0)};
    const int col = color::color_of(c, p);
    CHECK(col >= 0);
    CHECK(col < 7);
  }
}

TEST_CASE("a coloring with missing classes reports uncovered points") {
  color::Coloring crippled = fixtures::hex_build().coloring;
  crippled.translates.resize(1);
  crippled.colors = 1;
  Rng rng(53);
  bool caught = false;
  for (int t = 0; t < 500 && !caught; ++t) {
    const Vec p{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    try {
      (void)color::color_of(crippled, p);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::Certificate);
      caught = true;
    }
  }
  CHECK(caught);
}

TEST_CASE("explicit construction reproduces the named tilings") {
  PipelineConfig cfg;
  cfg.construction = Construction::Explicit;
  cfg.n = 2;
  cfg.explicit_spec.basis =
      Mat::from_columns({Vec{1.0, 0.0}, Vec{0.5, std::sqrt(3.0) / 2.0}});
  cfg.explicit_spec.translates = {Vec::zero(2)};
  const auto st = color::build_tiling_stage(cfg);
  CHECK(std::abs(st.params.gamma - 2.0 / std::sqrt(3.0)) <= 1e-9);
  CHECK(std::abs(st.params.mu - (2.0 * std::sqrt(3.0) - 3.0)) <= 1e-9);

  PipelineConfig mismatch = cfg;
  mismatch.explicit_spec.basis = Mat::identity(3);
  CHECK(fixtures::raises([&] { color::build_tiling_stage(mismatch); }, Errc::InvalidInput));
}

TEST_CASE("verification flags a structurally broken coloring") {
  // Doubling the piece radius by unshrinking makes same-color pieces touch:
  // separation collapses below 1 and the structural check must fail.
  color::Coloring c = fixtures::hex_build().coloring;
  std::vector<geom::Polytope> wide;
  for (size_t i = 0; i < c.pieces.size(); ++i)
    wide.push_back(c.tiling.cells[i]);  // unshrunk cells at the same translates
  c.pieces = std::move(wide);
  c.piece_radius = c.tiling.max_circumradius;
  const auto rep = color::verify_coloring(c, 2000, 7);
  CHECK_FALSE(rep.structural.pass);
  CHECK_FALSE(rep.pass);
}
