#include <benchmark/benchmark.h>

#include <vector>

#include "chromatic/body.hpp"
#include "chromatic/coloring.hpp"
#include "chromatic/cover.hpp"
#include "chromatic/lattice.hpp"
#include "chromatic/lp.hpp"
#include "chromatic/polytope.hpp"
#include "chromatic/rng.hpp"
#include "chromatic/tiling.hpp"

namespace {

using namespace chromatic;

geom::ConvexBody octagon_body() {
  std::vector<Vec> vs;
  const double c = 0.70710678118654752;
  vs.push_back(Vec{1.0, 0.0});
  vs.push_back(Vec{c, c});
  vs.push_back(Vec{0.0, 1.0});
  vs.push_back(Vec{-c, c});
  vs.push_back(Vec{-1.0, 0.0});
  vs.push_back(Vec{-c, -c});
  vs.push_back(Vec{0.0, -1.0});
  vs.push_back(Vec{c, -c});
  return geom::ConvexBody::polytope(vs);
}

void bm_polytope_norm(benchmark::State& state) {
  auto body = octagon_body();
  Rng rng(42);
  std::vector<Vec> pts;
  for (int i = 0; i < 256; ++i) pts.push_back(Vec{rng.uniform(-2, 2), rng.uniform(-2, 2)});
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(body.norm(pts[i++ & 255]));
  }
}
BENCHMARK(bm_polytope_norm);

void bm_torus_distance(benchmark::State& state) {
  auto lat = lattice::Lattice::make(Mat::from_columns({Vec{1.0, 0.0}, Vec{0.5, 0.8660254037844386}}));
  auto torus = lattice::Torus::for_body(lat, geom::ConvexBody::ball(2));
  Rng rng(7);
  std::vector<Vec> pts;
  for (int i = 0; i < 256; ++i) pts.push_back(Vec{rng.uniform(-4, 4), rng.uniform(-4, 4)});
  size_t i = 0;
  for (auto _ : state) {
    const Vec& p = pts[i & 255];
    const Vec& q = pts[(i + 1) & 255];
    ++i;
    benchmark::DoNotOptimize(torus.distance_euclid(p, q));
  }
}
BENCHMARK(bm_torus_distance);

void bm_polytope_distance(benchmark::State& state) {
  auto lat = lattice::Lattice::make(Mat::from_columns({Vec{1.0, 0.0}, Vec{0.5, 0.8660254037844386}}));
  auto ml = lattice::Multilattice::make(lat, {Vec::zero(2)});
  auto psi = tiling::voronoi_tiling(ml);
  auto cell = psi.cells[0];
  auto far = cell.translated(Vec{3.0, 1.0});
  auto ball = geom::ConvexBody::ball(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(geom::distance_in_norm(cell, far, ball));
  }
}
BENCHMARK(bm_polytope_distance);

void bm_lp_solve(benchmark::State& state) {
  // 40x60 random covering LP in dual form.
  Rng rng(99);
  const int rows = 40, cols = 60;
  geom::LpProblem lp;
  lp.num_vars = cols;
  lp.c.assign(cols, -1.0);
  for (int r = 0; r < rows; ++r) {
    std::vector<double> a(cols, 0.0);
    for (int j = 0; j < cols; ++j) a[j] = rng.next_double() < 0.3 ? 1.0 : 0.0;
    a[r % cols] = 1.0;
    lp.add_row(a, geom::Sense::Le, 1.0);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(geom::solve_lp(lp));
  }
}
BENCHMARK(bm_lp_solve);

void bm_greedy_cover(benchmark::State& state) {
  Rng rng(5);
  const int ground = 512, sets = 256;
  std::vector<std::vector<int>> lists(sets);
  for (int s = 0; s < sets; ++s)
    for (int g = 0; g < ground; ++g)
      if (rng.next_double() < 0.05) lists[s].push_back(g);
  for (int g = 0; g < ground; ++g) lists[g % sets].push_back(g);  // feasibility
  auto m = cover::BitMatrix::from_lists(ground, lists);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cover::greedy_cover_sets(m));
  }
}
BENCHMARK(bm_greedy_cover);

}  // namespace

BENCHMARK_MAIN();
