#pragma once

#include <optional>
#include <vector>

#include "chromatic/body.hpp"
#include "chromatic/vec.hpp"

namespace chromatic::geom {

// Bounded full-dimensional convex polytope, dimensions 2..4. Keeps both
// representations: irredundant facet halfspaces (unit normals) and the
// vertex list. Construction validates mutual consistency.
struct Polytope {
  int n = 0;
  std::vector<Halfspace> halfspaces;
  std::vector<Vec> vertices;

  bool contains(const Vec& p, double tol = kGeomEps) const {
    for (const auto& h : halfspaces)
      if (dot(h.a, p) > h.b + tol) return false;
    return true;
  }
  // Smallest slack over facets; positive iff strictly interior.
  double interior_slack(const Vec& p) const;

  Vec centroid() const;            // vertex centroid (an interior point)
  double circumradius_about(const Vec& c) const;

  Polytope translated(const Vec& t) const;
  // Homothety about a center point with factor in (0, 1]: vertices map to
  // center + f*(v - center); facet normals unchanged, offsets recomputed.
  Polytope shrunk_about(const Vec& center, double factor) const;

  double volume() const;
};

struct IntersectOptions {
  bool check_bounded = true;     // run LP-based boundedness probes
  bool assume_bounded = false;   // caller guarantees boundedness (skips probes)
};

// Intersects halfspaces into a Polytope by brute-force vertex enumeration
// over n-subsets (n <= 4). Errors: empty interior, unbounded, degenerate.
// Input normals need not be unit; duplicates are merged. Redundant halfspaces
// (fewer than n tight vertices) are dropped from the result.
Polytope intersect_halfspaces(const std::vector<Halfspace>& hs, int n,
                              const IntersectOptions& opts = {});

// Facet halfspaces of the convex hull of a full-dimensional point set,
// by brute-force (n-1)-subset hyperplane enumeration. Unit normals.
std::vector<Halfspace> convex_hull_brute(const std::vector<Vec>& pts, int n);

// Max K-norm of v - w over vertex pairs = diameter of P in the K norm.
double diameter_in_norm(const Polytope& p, const ConvexBody& k);

// K-norm distance between two disjoint-or-touching polytopes:
//   min { ||p - q||_K : p in P, q in Q }  (0 if they intersect).
// Euclidean K: iterative support-point refinement over the Minkowski
// difference with a certified convergence gap. Polytope K: linear program
// min t s.t. p in P, q in Q, p - q in t*K.
double distance_in_norm(const Polytope& p, const Polytope& q, const ConvexBody& k);

// Exact-by-enumeration Euclidean distance from the origin to the convex hull
// of a point set: minimizes over projections onto affine hulls of all
// affinely independent subsets of size <= n+1. O(m^(n+1)); for tests and as
// a fallback oracle for small inputs.
double origin_distance_to_hull_enum(const std::vector<Vec>& pts, int n);

// Euclidean distance between P and Q through support-point refinement.
// Also usable directly on vertex sets.
double euclid_distance_vertex_sets(const std::vector<Vec>& pv, const std::vector<Vec>& qv, int n);

}  // namespace chromatic::geom
