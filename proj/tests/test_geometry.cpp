#include <cmath>
#include <vector>

#include "doctest.h"

#include "chromatic/body.hpp"
#include "chromatic/polytope.hpp"
#include "chromatic/rng.hpp"
#include "chromatic/vec.hpp"
#include "fixtures.hpp"

using namespace chromatic;
using geom::ConvexBody;
using geom::Halfspace;
using geom::Polytope;

namespace {

Vec random_vec(Rng& rng, int n, double lo = -2.0, double hi = 2.0) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
  return v;
}

ConvexBody hexagon_body() {
  // Three vertices plus their exact negations: the polytope constructor
  // demands bitwise central symmetry, which cos/sin of supplementary angles
  // does not provide.
  std::vector<Vec> vs;
  for (int i = 0; i < 3; ++i) {
    const double t = M_PI * i / 3.0;
    vs.push_back(Vec{std::cos(t), std::sin(t)});
  }
  for (int i = 0; i < 3; ++i) vs.push_back(-vs[i]);
  return ConvexBody::polytope(vs);
}

}  // namespace

TEST_CASE("vector arithmetic and deterministic ordering") {
  const Vec a{1.0, 2.0, 3.0};
  const Vec b{0.5, -1.0, 2.0};
  CHECK(close(a + b, Vec{1.5, 1.0, 5.0}));
  CHECK(close(a - b, Vec{0.5, 3.0, 1.0}));
  CHECK(close(2.0 * a, Vec{2.0, 4.0, 6.0}));
  CHECK(close(a * 2.0, Vec{2.0, 4.0, 6.0}));
  CHECK(dot(a, b) == doctest::Approx(4.5).epsilon(1e-15));
  CHECK(a.norm() == doctest::Approx(std::sqrt(14.0)).epsilon(1e-15));

  CHECK(lex_less(Vec{1.0, 5.0}, Vec{2.0, 0.0}));
  CHECK(lex_less(Vec{1.0, 0.0}, Vec{1.0, 1.0}));
  CHECK_FALSE(lex_less(Vec{1.0, 1.0}, Vec{1.0, 1.0}));

  CHECK(fixtures::raises([] { Vec::from({1.0, 2.0, 3.0, 4.0, 5.0}); }, Errc::InvalidInput));
}

TEST_CASE("matrix determinant, solve, and inverse round-trip") {
  Mat m = Mat::from_columns({Vec{2.0, 1.0, 0.0}, Vec{0.0, 3.0, 1.0}, Vec{1.0, 0.0, 2.0}});
  CHECK(m.det() == doctest::Approx(13.0).epsilon(1e-12));

  Mat inv;
  REQUIRE(m.inverse(&inv));
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    const Vec x = random_vec(rng, 3);
    CHECK(close(inv.mul(m.mul(x)), x, 1e-12));
    Vec y;
    REQUIRE(m.solve(m.mul(x), &y));
    CHECK(close(y, x, 1e-12));
  }

  Mat sing = Mat::from_columns({Vec{1.0, 2.0}, Vec{2.0, 4.0}});
  Mat out;
  CHECK_FALSE(sing.inverse(&out));

  const auto gs = gram_schmidt_norms(Mat::identity(3));
  for (int i = 0; i < 3; ++i) CHECK(gs[i] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("ball body evaluates the euclidean norm") {
  const ConvexBody b = ConvexBody::ball(3, 2.0);
  CHECK(b.dim() == 3);
  CHECK(b.euclid_inradius() == doctest::Approx(2.0));
  CHECK(b.euclid_circumradius() == doctest::Approx(2.0));
  Rng rng(12);
  for (int t = 0; t < 30; ++t) {
    const Vec v = random_vec(rng, 3);
    CHECK(b.norm(v) == doctest::Approx(v.norm() / 2.0).epsilon(1e-12));
    CHECK(b.support(v) == doctest::Approx(2.0 * v.norm()).epsilon(1e-12));
  }
}

TEST_CASE("square body minkowski functional is the max norm") {
  const ConvexBody sq =
      ConvexBody::polytope({Vec{1.0, 1.0}, Vec{1.0, -1.0}, Vec{-1.0, 1.0}, Vec{-1.0, -1.0}});
  CHECK(sq.norm(Vec{1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sq.norm(Vec{1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sq.norm(Vec{0.5, -0.25}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sq.support(Vec{1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sq.support(Vec{1.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sq.euclid_inradius() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sq.euclid_circumradius() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(sq.facets().size() == 4);
}

TEST_CASE("norm axioms hold for polytope bodies") {
  const ConvexBody hex = hexagon_body();
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    const Vec v = random_vec(rng, 2);
    const Vec w = random_vec(rng, 2);
    const double s = rng.uniform(0.1, 3.0);
    const double nv = hex.norm(v);
    CHECK(hex.norm(v * s) == doctest::Approx(s * nv).epsilon(1e-10));
    CHECK(hex.norm(-v) == doctest::Approx(nv).epsilon(1e-10));
    CHECK(hex.norm(v + w) <= nv + hex.norm(w) + 1e-10);
    // Sandwiched between the euclidean norms scaled by the body radii.
    CHECK(nv >= v.norm() / hex.euclid_circumradius() - 1e-10);
    CHECK(nv <= v.norm() / hex.euclid_inradius() + 1e-10);
  }
}

TEST_CASE("halfspace intersection recovers the square and drops redundancy") {
  std::vector<Halfspace> hs = {
      {Vec{1.0, 0.0}, 1.0},  {Vec{-1.0, 0.0}, 1.0}, {Vec{0.0, 1.0}, 1.0},
      {Vec{0.0, -1.0}, 1.0}, {Vec{1.0, 0.0}, 2.0},  // redundant
  };
  const Polytope p = geom::intersect_halfspaces(hs, 2);
  CHECK(p.halfspaces.size() == 4);
  CHECK(p.vertices.size() == 4);
  CHECK(p.volume() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(p.contains(Vec{0.0, 0.0}));
  CHECK(p.contains(Vec{1.0, 1.0}));
  CHECK_FALSE(p.contains(Vec{1.1, 0.0}));
  CHECK(p.interior_slack(Vec{0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.circumradius_about(Vec{0.0, 0.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(close(p.centroid(), Vec{0.0, 0.0}, 1e-12));
}

TEST_CASE("hull facets and intersection round-trip on random symmetric clouds") {
  Rng rng(14);
  for (int n = 2; n <= 3; ++n) {
    for (int t = 0; t < 8; ++t) {
      std::vector<Vec> pts;
      for (int i = 0; i < 5 + n; ++i) {
        const Vec v = random_vec(rng, n, 0.2, 1.5);
        pts.push_back(v);
        pts.push_back(-v);
      }
      const auto facets = geom::convex_hull_brute(pts, n);
      REQUIRE(facets.size() >= static_cast<size_t>(n + 1));
      const Polytope p = geom::intersect_halfspaces(facets, n);
      // Every input point lies inside the hull; every hull vertex is inside
      // the (closed) hull of the inputs, i.e. within distance ~0 of it.
      for (const auto& q : pts) CHECK(p.contains(q, 1e-7));
      for (const auto& v : p.vertices) {
        std::vector<Vec> rel;
        rel.reserve(pts.size());
        for (const auto& q : pts) rel.push_back(q - v);
        CHECK(geom::origin_distance_to_hull_enum(rel, n) <= 1e-7);
      }
    }
  }
}

TEST_CASE("homothety shrinks about the chosen center") {
  std::vector<Halfspace> hs = {
      {Vec{1.0, 0.0}, 1.0}, {Vec{-1.0, 0.0}, 1.0}, {Vec{0.0, 1.0}, 1.0}, {Vec{0.0, -1.0}, 1.0}};
  const Polytope p = geom::intersect_halfspaces(hs, 2);
  const Vec c{0.5, 0.0};
  const Polytope q = p.shrunk_about(c, 0.5);
  CHECK(q.volume() == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& v : p.vertices) {
    const Vec img = c + 0.5 * (v - c);
    bool found = false;
    for (const auto& w : q.vertices)
      if (close(w, img, 1e-9)) found = true;
    CHECK(found);
  }
  const Polytope shifted = p.translated(Vec{3.0, -1.0});
  CHECK(shifted.contains(Vec{3.0, -1.0}));
  CHECK_FALSE(shifted.contains(Vec{0.0, 0.0}));
  CHECK(shifted.volume() == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("diameters and polytope distances against closed forms") {
  std::vector<Halfspace> hs = {
      {Vec{1.0, 0.0}, 1.0}, {Vec{-1.0, 0.0}, 1.0}, {Vec{0.0, 1.0}, 1.0}, {Vec{0.0, -1.0}, 1.0}};
  const Polytope p = geom::intersect_halfspaces(hs, 2);
  const ConvexBody ball = ConvexBody::ball(2);
  const ConvexBody sq =
      ConvexBody::polytope({Vec{1.0, 1.0}, Vec{1.0, -1.0}, Vec{-1.0, 1.0}, Vec{-1.0, -1.0}});

  CHECK(geom::diameter_in_norm(p, ball) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(geom::diameter_in_norm(p, sq) == doctest::Approx(2.0).epsilon(1e-12));

  const Polytope q = p.translated(Vec{5.0, 0.0});
  CHECK(geom::distance_in_norm(p, q, ball) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(geom::distance_in_norm(p, q, sq) == doctest::Approx(3.0).epsilon(1e-9));
  const Polytope diag = p.translated(Vec{4.0, 4.0});
  CHECK(geom::distance_in_norm(p, diag, ball) ==
        doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));
  CHECK(geom::distance_in_norm(p, diag, sq) == doctest::Approx(2.0).epsilon(1e-9));
  // Overlapping bodies are at distance zero.
  CHECK(geom::distance_in_norm(p, p.translated(Vec{1.0, 0.0}), ball) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("two independent euclidean distance oracles agree") {
  Rng rng(15);
  for (int n = 2; n <= 3; ++n) {
    for (int t = 0; t < 12; ++t) {
      std::vector<Vec> cloud;
      for (int i = 0; i < n + 3; ++i) cloud.push_back(random_vec(rng, n, 0.5, 3.0));
      const double enumd = geom::origin_distance_to_hull_enum(cloud, n);
      const double iter = geom::euclid_distance_vertex_sets({Vec::zero(n)}, cloud, n);
      CHECK(iter == doctest::Approx(enumd).epsilon(1e-7));
    }
  }
}

TEST_CASE("degenerate halfspace systems are rejected") {
  // Empty interior.
  CHECK(fixtures::raises(
      [] {
        geom::intersect_halfspaces({{Vec{1.0, 0.0}, -1.0}, {Vec{-1.0, 0.0}, -1.0}}, 2);
      },
      Errc::Construction));
  // Unbounded.
  CHECK(fixtures::raises(
      [] { geom::intersect_halfspaces({{Vec{1.0, 0.0}, 1.0}, {Vec{0.0, 1.0}, 1.0}}, 2); },
      Errc::Construction));
}
