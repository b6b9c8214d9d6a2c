#include "chromatic/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chromatic/lp.hpp"

namespace chromatic::geom {

namespace {

constexpr double kTightTol = 1e-8;    // vertex-on-facet tightness
constexpr double kVertexDedupe = 1e-7;
constexpr double kNormalDedupe = 1e-10;

Halfspace normalized(const Halfspace& h) {
  double len = h.a.norm();
  require(len > kGeomEps, Errc::InvalidInput, "halfspace: zero normal");
  // Keep already-unit normals bit-identical: dividing by a length one ulp
  // away from 1 would perturb stored geometry on every reload.
  if (std::abs(len - 1.0) < 4e-16) return h;
  Halfspace r;
  r.a = h.a * (1.0 / len);
  r.b = h.b / len;
  return r;
}

std::vector<Halfspace> dedupe_halfspaces(const std::vector<Halfspace>& in) {
  std::vector<Halfspace> out;
  for (const auto& raw : in) {
    Halfspace h = normalized(raw);
    bool merged = false;
    for (auto& g : out) {
      if (dot(g.a, h.a) > 1.0 - kNormalDedupe) {
        g.b = std::min(g.b, h.b);  // same direction: the tighter offset binds
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(h);
  }
  return out;
}

// Visits every size-k index subset of [0, m).
template <typename F>
void for_each_subset(int m, int k, F&& visit) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > m) return;
  for (;;) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Normal of the hyperplane spanned by (dim-1) difference vectors, via
// cofactor expansion (generalized cross product).
Vec hyperplane_normal(const std::vector<Vec>& diffs, int n) {
  Vec normal(n);
  if (n == 2) {
    normal[0] = -diffs[0][1];
    normal[1] = diffs[0][0];
  } else if (n == 3) {
    const Vec& u = diffs[0];
    const Vec& v = diffs[1];
    normal[0] = u[1] * v[2] - u[2] * v[1];
    normal[1] = u[2] * v[0] - u[0] * v[2];
    normal[2] = u[0] * v[1] - u[1] * v[0];
  } else {
    // 4D: minors of the 3x4 matrix of differences.
    for (int skip = 0; skip < 4; ++skip) {
      double m[3][3];
      for (int r = 0; r < 3; ++r) {
        int cc = 0;
        for (int c = 0; c < 4; ++c) {
          if (c == skip) continue;
          m[r][cc++] = diffs[r][c];
        }
      }
      double det3 = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                    m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                    m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
      normal[skip] = (skip % 2 == 0) ? det3 : -det3;
    }
  }
  return normal;
}

int affine_rank(const std::vector<Vec>& pts, int n, double tol = 1e-9) {
  if (pts.empty()) return -1;
  std::vector<Vec> basis;
  for (size_t i = 1; i < pts.size(); ++i) {
    Vec d = pts[i] - pts[0];
    for (const auto& b : basis) d -= b * dot(d, b);
    double len = d.norm();
    if (len > tol) {
      basis.push_back(d * (1.0 / len));
      if (static_cast<int>(basis.size()) == n) break;
    }
  }
  return static_cast<int>(basis.size());
}

// Orthonormal basis of the hyperplane orthogonal to unit vector a.
std::vector<Vec> hyperplane_frame(const Vec& a, int n) {
  std::vector<Vec> frame;
  for (int i = 0; i < n && static_cast<int>(frame.size()) < n - 1; ++i) {
    Vec e(n);
    e[i] = 1.0;
    e -= a * dot(e, a);
    for (const auto& f : frame) e -= f * dot(e, f);
    double len = e.norm();
    if (len > 1e-9) frame.push_back(e * (1.0 / len));
  }
  return frame;
}

double volume_of_hull(const std::vector<Vec>& pts, int dim);

// Signed area of a convex polygon given in arbitrary order.
double polygon_area(const std::vector<Vec>& pts) {
  Vec c(2);
  for (const auto& p : pts) c += p;
  c = c * (1.0 / static_cast<double>(pts.size()));
  std::vector<Vec> ordered = pts;
  std::sort(ordered.begin(), ordered.end(), [&](const Vec& x, const Vec& y) {
    return std::atan2(x[1] - c[1], x[0] - c[0]) < std::atan2(y[1] - c[1], y[0] - c[0]);
  });
  double area = 0.0;
  for (size_t i = 0; i < ordered.size(); ++i) {
    const Vec& p = ordered[i];
    const Vec& q = ordered[(i + 1) % ordered.size()];
    area += p[0] * q[1] - q[0] * p[1];
  }
  return std::abs(area) * 0.5;
}

// Volume of conv(pts) via facet cones: vol = sum dist(c, facet)/dim * facetvol.
double volume_of_hull(const std::vector<Vec>& pts, int dim) {
  if (pts.empty()) return 0.0;
  if (dim == 1) {
    double lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    return hi - lo;
  }
  if (dim == 2) return polygon_area(pts);
  std::vector<Halfspace> facets = convex_hull_brute(pts, dim);
  Vec c(dim);
  for (const auto& p : pts) c += p;
  c = c * (1.0 / static_cast<double>(pts.size()));
  double vol = 0.0;
  for (const auto& f : facets) {
    std::vector<Vec> tight;
    for (const auto& p : pts)
      if (std::abs(dot(f.a, p) - f.b) <= kTightTol * (1.0 + std::abs(f.b))) tight.push_back(p);
    if (static_cast<int>(tight.size()) < dim) continue;
    std::vector<Vec> frame = hyperplane_frame(f.a, dim);
    std::vector<Vec> proj;
    proj.reserve(tight.size());
    for (const auto& p : tight) {
      Vec d = p - tight[0];
      Vec q(dim - 1);
      for (int i = 0; i < dim - 1; ++i) q[i] = dot(d, frame[i]);
      proj.push_back(q);
    }
    double h = f.b - dot(f.a, c);  // distance from centroid to the facet plane
    vol += h / dim * volume_of_hull(proj, dim - 1);
  }
  return vol;
}

// Projection of the origin onto the affine hull of pts, with barycentric
// coordinates. Returns false if the points are affinely dependent.
bool project_origin(const std::vector<Vec>& pts, const std::vector<int>& idx, int n,
                    Vec* out, double* min_coord) {
  const int s = static_cast<int>(idx.size());
  if (s == 1) {
    *out = pts[idx[0]];
    *min_coord = 1.0;
    return true;
  }
  if (s > n + 1) return false;
  // Unknowns: lambda_1..lambda_s with sum = 1 and x = sum lambda_i p_i
  // orthogonal to all (p_j - p_1).
  std::array<std::array<double, kMaxDim>, kMaxDim> rows{};
  std::array<double, kMaxDim> rhsv{};
  for (int r = 0; r < s - 1; ++r) {
    Vec d = pts[idx[r + 1]] - pts[idx[0]];
    for (int j = 0; j < s; ++j) rows[r][j] = dot(pts[idx[j]], d);
    rhsv[r] = 0.0;
  }
  for (int j = 0; j < s; ++j) rows[s - 1][j] = 1.0;
  rhsv[s - 1] = 1.0;
  Vec lambda(s);
  if (!solve_linear(s, rows, rhsv, &lambda)) return false;
  Vec x(n);
  double mc = std::numeric_limits<double>::infinity();
  for (int j = 0; j < s; ++j) {
    x += pts[idx[j]] * lambda[j];
    mc = std::min(mc, lambda[j]);
  }
  *out = x;
  *min_coord = mc;
  return true;
}

}  // namespace

double Polytope::interior_slack(const Vec& p) const {
  double s = std::numeric_limits<double>::infinity();
  for (const auto& h : halfspaces) s = std::min(s, h.b - dot(h.a, p));
  return s;
}

Vec Polytope::centroid() const {
  Vec c(n);
  for (const auto& v : vertices) c += v;
  return c * (1.0 / static_cast<double>(vertices.size()));
}

double Polytope::circumradius_about(const Vec& c) const {
  double r = 0.0;
  for (const auto& v : vertices) r = std::max(r, (v - c).norm());
  return r;
}

Polytope Polytope::translated(const Vec& t) const {
  Polytope p = *this;
  for (auto& h : p.halfspaces) h.b += dot(h.a, t);
  for (auto& v : p.vertices) v += t;
  return p;
}

Polytope Polytope::shrunk_about(const Vec& center, double factor) const {
  require(factor > 0.0 && factor <= 1.0, Errc::InvalidInput, "shrink: factor must be in (0, 1]");
  Polytope p = *this;
  for (auto& h : p.halfspaces) h.b = factor * h.b + (1.0 - factor) * dot(h.a, center);
  for (auto& v : p.vertices) v = center + (v - center) * factor;
  return p;
}

double Polytope::volume() const {
  if (n == 2) return polygon_area(vertices);
  double vol = 0.0;
  Vec c = centroid();
  for (const auto& f : halfspaces) {
    std::vector<Vec> tight;
    for (const auto& v : vertices)
      if (std::abs(dot(f.a, v) - f.b) <= kTightTol * (1.0 + std::abs(f.b))) tight.push_back(v);
    if (static_cast<int>(tight.size()) < n) continue;
    std::vector<Vec> frame = hyperplane_frame(f.a, n);
    std::vector<Vec> proj;
    proj.reserve(tight.size());
    for (const auto& v : tight) {
      Vec d = v - tight[0];
      Vec q(n - 1);
      for (int i = 0; i < n - 1; ++i) q[i] = dot(d, frame[i]);
      proj.push_back(q);
    }
    vol += (f.b - dot(f.a, c)) / n * volume_of_hull(proj, n - 1);
  }
  return vol;
}

std::vector<Halfspace> convex_hull_brute(const std::vector<Vec>& pts_in, int n) {
  require(n >= 2 && n <= kMaxDim, Errc::InvalidInput, "hull: dimension must be 2..4");
  // Dedupe input points.
  std::vector<Vec> pts;
  for (const auto& p : pts_in) {
    bool dup = false;
    for (const auto& q : pts)
      if (close(p, q, kVertexDedupe)) { dup = true; break; }
    if (!dup) pts.push_back(p);
  }
  const int m = static_cast<int>(pts.size());
  std::vector<Halfspace> facets;
  if (m < n + 1) return facets;
  for_each_subset(m, n, [&](const std::vector<int>& idx) {
    std::vector<Vec> diffs;
    diffs.reserve(n - 1);
    for (int i = 1; i < n; ++i) diffs.push_back(pts[idx[i]] - pts[idx[0]]);
    Vec normal = hyperplane_normal(diffs, n);
    double len = normal.norm();
    if (len < 1e-10) return;
    normal = normal * (1.0 / len);
    double b = dot(normal, pts[idx[0]]);
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
      double s = dot(normal, p) - b;
      hi = std::max(hi, s);
      lo = std::min(lo, s);
    }
    Halfspace h;
    if (hi <= kTightTol) {
      h.a = normal;
      h.b = b;
    } else if (lo >= -kTightTol) {
      h.a = -normal;
      h.b = -b;
    } else {
      return;  // points on both sides: not a supporting hyperplane
    }
    for (const auto& g : facets)
      if (dot(g.a, h.a) > 1.0 - kNormalDedupe && std::abs(g.b - h.b) < kTightTol) return;
    facets.push_back(h);
  });
  return facets;
}

Polytope intersect_halfspaces(const std::vector<Halfspace>& hs_in, int n,
                              const IntersectOptions& opts) {
  require(n >= 2 && n <= kMaxDim, Errc::InvalidInput, "intersect: dimension must be 2..4");
  std::vector<Halfspace> hs = dedupe_halfspaces(hs_in);
  const int m = static_cast<int>(hs.size());
  require(m >= n + 1, Errc::Construction, "intersect: too few halfspaces to bound a polytope");

  if (opts.check_bounded && !opts.assume_bounded) {
    // Probe each coordinate direction: an unbounded LP means an unbounded set.
    for (int i = 0; i < n; ++i) {
      for (double sgn : {1.0, -1.0}) {
        LpProblem lp;
        lp.num_vars = n;
        lp.c.assign(n, 0.0);
        lp.c[i] = -sgn;  // maximize sgn * x_i
        lp.free_var.assign(n, true);
        for (const auto& h : hs) lp.add_row(h.a.to_std(), Sense::Le, h.b);
        LpSolution s = solve_lp(lp);
        if (s.status == LpStatus::Unbounded)
          fail(Errc::Construction, "intersect: halfspace intersection is unbounded");
        if (s.status == LpStatus::Infeasible)
          fail(Errc::Construction, "intersect: halfspace intersection is empty");
      }
    }
  }

  // Brute-force vertex enumeration over n-subsets.
  std::vector<Vec> verts;
  for_each_subset(m, n, [&](const std::vector<int>& idx) {
    std::array<std::array<double, kMaxDim>, kMaxDim> rows{};
    std::array<double, kMaxDim> rhs{};
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) rows[i][j] = hs[idx[i]].a[j];
      rhs[i] = hs[idx[i]].b;
    }
    Vec v(n);
    if (!solve_linear(n, rows, rhs, &v)) return;
    for (const auto& h : hs)
      if (dot(h.a, v) > h.b + kGeomEps) return;
    for (const auto& u : verts)
      if (close(u, v, kVertexDedupe)) return;
    verts.push_back(v);
  });

  if (verts.empty()) fail(Errc::Construction, "intersect: no vertices (empty or degenerate input)");
  if (affine_rank(verts, n) < n)
    fail(Errc::Construction, "intersect: intersection has empty interior");

  // Keep only halfspaces tight at >= n vertices; everything else is redundant.
  Polytope poly;
  poly.n = n;
  poly.vertices = verts;
  for (const auto& h : hs) {
    int tight = 0;
    for (const auto& v : verts)
      if (std::abs(dot(h.a, v) - h.b) <= kTightTol * (1.0 + std::abs(h.b))) ++tight;
    if (tight >= n) poly.halfspaces.push_back(h);
  }
  require(static_cast<int>(poly.halfspaces.size()) >= n + 1, Errc::Construction,
          "intersect: degenerate facet structure");

  // Canonical deterministic ordering.
  std::sort(poly.vertices.begin(), poly.vertices.end(),
            [](const Vec& x, const Vec& y) { return lex_less(x, y); });
  std::sort(poly.halfspaces.begin(), poly.halfspaces.end(),
            [](const Halfspace& x, const Halfspace& y) {
              if (lex_less(x.a, y.a)) return true;
              if (lex_less(y.a, x.a)) return false;
              return x.b < y.b;
            });
  return poly;
}

double diameter_in_norm(const Polytope& p, const ConvexBody& k) {
  double d = 0.0;
  for (size_t i = 0; i < p.vertices.size(); ++i)
    for (size_t j = i + 1; j < p.vertices.size(); ++j)
      d = std::max(d, k.norm(p.vertices[i] - p.vertices[j]));
  return d;
}

double origin_distance_to_hull_enum(const std::vector<Vec>& pts, int n) {
  require(!pts.empty(), Errc::InvalidInput, "hull distance: empty point set");
  const int m = static_cast<int>(pts.size());
  double best = std::numeric_limits<double>::infinity();
  for (int s = 1; s <= std::min(m, n + 1); ++s) {
    for_each_subset(m, s, [&](const std::vector<int>& idx) {
      Vec x(n);
      double mc;
      if (!project_origin(pts, idx, n, &x, &mc)) return;
      if (mc < -1e-12) return;  // projection falls outside the subsimplex
      best = std::min(best, x.norm());
    });
  }
  return best;
}

double euclid_distance_vertex_sets(const std::vector<Vec>& pv, const std::vector<Vec>& qv, int n) {
  require(!pv.empty() && !qv.empty(), Errc::InvalidInput, "distance: empty vertex set");
  // Support-point refinement over the Minkowski difference D = P - Q:
  // maintain a simplex of difference points whose nearest-to-origin point v
  // converges to the distance; v.w/|v| with the extreme point w in direction
  // -v is a certified lower bound at every step.
  auto support = [&](const Vec& d) {
    int bi = 0;
    double bs = dot(d, pv[0]);
    for (size_t i = 1; i < pv.size(); ++i) {
      double s = dot(d, pv[i]);
      if (s > bs + 1e-15) { bs = s; bi = static_cast<int>(i); }
    }
    int bj = 0;
    double bt = dot(d, qv[0]);
    for (size_t j = 1; j < qv.size(); ++j) {
      double s = dot(d, qv[j]);
      if (s < bt - 1e-15) { bt = s; bj = static_cast<int>(j); }
    }
    return pv[bi] - qv[bj];
  };

  std::vector<Vec> simplex{pv[0] - qv[0]};
  Vec v = simplex[0];
  double best_lb = -std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 200; ++iter) {
    double ub = v.norm();
    if (ub < 1e-13) return 0.0;
    Vec w = support(-v);
    double lb = dot(v, w) / ub;
    best_lb = std::max(best_lb, lb);
    if (ub - best_lb <= 1e-12 * std::max(1.0, ub)) return ub;
    bool known = false;
    for (const auto& s : simplex)
      if (close(s, w, 1e-14)) { known = true; break; }
    if (known) break;  // no further progress possible
    simplex.push_back(w);

    // Nearest point of conv(simplex) to the origin, by subset enumeration.
    const int sm = static_cast<int>(simplex.size());
    double best_norm = std::numeric_limits<double>::infinity();
    Vec best_x(n);
    std::vector<int> best_subset;
    for (int s = 1; s <= std::min(sm, n + 1); ++s) {
      for_each_subset(sm, s, [&](const std::vector<int>& idx) {
        Vec x(n);
        double mc;
        if (!project_origin(simplex, idx, n, &x, &mc)) return;
        if (mc < -1e-12) return;
        double nr = x.norm();
        if (nr < best_norm) {
          best_norm = nr;
          best_x = x;
          best_subset = idx;
        }
      });
    }
    v = best_x;
    std::vector<Vec> reduced;
    reduced.reserve(best_subset.size());
    for (int id : best_subset) reduced.push_back(simplex[id]);
    simplex = std::move(reduced);
  }

  // Stalled before reaching the target gap. Fall back to exhaustive
  // enumeration when small enough; otherwise accept the certified bracket.
  double ub = v.norm();
  if (pv.size() * qv.size() <= 2048) {
    std::vector<Vec> diffs;
    diffs.reserve(pv.size() * qv.size());
    for (const auto& p : pv)
      for (const auto& q : qv) diffs.push_back(p - q);
    return origin_distance_to_hull_enum(diffs, n);
  }
  require(ub - best_lb <= 1e-7 * std::max(1.0, ub), Errc::Internal,
          "distance: support refinement failed to converge");
  return ub;
}

double distance_in_norm(const Polytope& p, const Polytope& q, const ConvexBody& k) {
  require(p.n == q.n && p.n == k.dim(), Errc::InvalidInput, "distance: dimension mismatch");
  if (k.kind() == BodyKind::Ball)
    return euclid_distance_vertex_sets(p.vertices, q.vertices, p.n) / k.scale();

  // Polytope norm: min t  s.t.  x in P, y in Q, x - y in t*K.
  const int n = p.n;
  LpProblem lp;
  lp.num_vars = 2 * n + 1;  // x, y, t
  lp.c.assign(lp.num_vars, 0.0);
  lp.c[2 * n] = 1.0;
  lp.free_var.assign(lp.num_vars, true);
  lp.free_var[2 * n] = false;  // t >= 0
  auto row_of = [&](const Vec& ax, const Vec& ay, double at) {
    std::vector<double> r(lp.num_vars, 0.0);
    for (int i = 0; i < n; ++i) {
      r[i] = ax.dim() ? ax[i] : 0.0;
      r[n + i] = ay.dim() ? ay[i] : 0.0;
    }
    r[2 * n] = at;
    return r;
  };
  for (const auto& h : p.halfspaces) lp.add_row(row_of(h.a, Vec(), 0.0), Sense::Le, h.b);
  for (const auto& h : q.halfspaces) lp.add_row(row_of(Vec(), h.a, 0.0), Sense::Le, h.b);
  for (const auto& h : k.facets()) lp.add_row(row_of(h.a, -h.a, -h.b), Sense::Le, 0.0);
  LpSolution s = solve_lp(lp);
  require(s.status == LpStatus::Optimal, Errc::Internal, "distance: norm LP did not solve");
  return std::max(0.0, s.value);
}

}  // namespace chromatic::geom
