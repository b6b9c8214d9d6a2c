#include "chromatic/body.hpp"

#include <algorithm>
#include <cmath>

#include "chromatic/lp.hpp"
#include "chromatic/polytope.hpp"

namespace chromatic::geom {

namespace {

// Is v in the convex hull of pts? Phase-1 LP feasibility.
bool in_hull_lp(const Vec& v, const std::vector<Vec>& pts, int n) {
  LpProblem p;
  p.num_vars = static_cast<int>(pts.size());
  p.c.assign(p.num_vars, 0.0);
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(p.num_vars);
    for (int j = 0; j < p.num_vars; ++j) row[j] = pts[j][i];
    p.add_row(row, Sense::Eq, v[i]);
  }
  p.add_row(std::vector<double>(p.num_vars, 1.0), Sense::Eq, 1.0);
  return solve_lp(p).status == LpStatus::Optimal;
}

}  // namespace

ConvexBody ConvexBody::ball(int dim, double radius) {
  require(dim >= 1 && dim <= kMaxDim, Errc::InvalidInput, "body: dimension must be 1..4");
  require(radius > 0.0 && std::isfinite(radius), Errc::InvalidInput, "body: radius must be positive");
  ConvexBody b;
  b.kind_ = BodyKind::Ball;
  b.dim_ = dim;
  b.scale_ = radius;
  b.inradius_ = radius;
  b.circumradius_ = radius;
  return b;
}

ConvexBody ConvexBody::polytope(const std::vector<Vec>& vertices, double scale) {
  require(!vertices.empty(), Errc::InvalidInput, "body: empty vertex set");
  const int n = vertices[0].dim();
  require(n >= 2 && n <= kMaxDim, Errc::InvalidInput, "body: dimension must be 2..4");
  require(scale > 0.0 && std::isfinite(scale), Errc::InvalidInput, "body: scale must be positive");
  for (const auto& v : vertices)
    require(v.dim() == n, Errc::InvalidInput, "body: mixed vertex dimensions");

  // Central symmetry: every vertex must have its exact negation present.
  std::vector<Vec> canon = vertices;
  auto cmp = [](const Vec& x, const Vec& y) { return lex_less(x, y); };
  std::sort(canon.begin(), canon.end(), cmp);
  for (const auto& v : vertices) {
    Vec neg = -v;
    bool found = false;
    for (const auto& u : canon) {
      bool eq = true;
      for (int i = 0; i < n; ++i)
        if (u[i] != neg[i]) { eq = false; break; }
      if (eq) { found = true; break; }
    }
    require(found, Errc::InvalidInput, "body: vertex set is not centrally symmetric");
  }

  // No vertex may be redundant (inside the hull of the others).
  for (size_t i = 0; i < vertices.size(); ++i) {
    std::vector<Vec> others;
    others.reserve(vertices.size() - 1);
    for (size_t j = 0; j < vertices.size(); ++j)
      if (j != i) others.push_back(vertices[j]);
    require(!in_hull_lp(vertices[i], others, n), Errc::InvalidInput,
            "body: redundant vertex inside the hull of the others");
  }

  ConvexBody b;
  b.kind_ = BodyKind::Polytope;
  b.dim_ = n;
  b.scale_ = scale;
  b.vertices_.reserve(vertices.size());
  for (const auto& v : vertices) b.vertices_.push_back(v * scale);

  b.facets_ = convex_hull_brute(b.vertices_, n);
  require(!b.facets_.empty(), Errc::InvalidInput, "body: vertex set is not full-dimensional");
  double rin = std::numeric_limits<double>::infinity();
  for (const auto& h : b.facets_) {
    require(h.b > kGeomEps, Errc::InvalidInput, "body: origin is not strictly interior");
    rin = std::min(rin, h.b);  // unit normals: offset = distance to the facet
  }
  b.inradius_ = rin;
  double rout = 0.0;
  for (const auto& v : b.vertices_) rout = std::max(rout, v.norm());
  b.circumradius_ = rout;
  return b;
}

double ConvexBody::norm(const Vec& v) const {
  if (kind_ == BodyKind::Ball) return v.norm() / scale_;
  double m = 0.0;
  for (const auto& h : facets_) m = std::max(m, dot(h.a, v) / h.b);
  return m;
}

double ConvexBody::support(const Vec& a) const {
  if (kind_ == BodyKind::Ball) return scale_ * a.norm();
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) m = std::max(m, dot(a, v));
  return m;
}

}  // namespace chromatic::geom
