#pragma once

#include <vector>

#include "chromatic/vec.hpp"

namespace chromatic::geom {

struct Halfspace {
  Vec a;      // unit outward normal
  double b;   // offset: the halfspace is { y : a.y <= b }
};

enum class BodyKind { Ball, Polytope };

// An origin-symmetric convex body with nonempty interior, used as the unit
// ball of a norm. Either a Euclidean ball of given radius, or the convex hull
// of a centrally symmetric vertex set (times a scale factor).
class ConvexBody {
 public:
  // Empty placeholder (dim 0); real bodies come from the factories below.
  ConvexBody() = default;

  static ConvexBody ball(int dim, double radius = 1.0);
  // Vertices must contain the exact negation of every vertex and no vertex
  // may lie in the hull of the others.
  static ConvexBody polytope(const std::vector<Vec>& vertices, double scale = 1.0);

  BodyKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double scale() const { return scale_; }

  // Minkowski functional: inf { t > 0 : v in t*K }. Positively homogeneous,
  // symmetric, convex; this is the norm whose unit ball is the body.
  double norm(const Vec& v) const;
  // Support function h_K(a) = max { a.x : x in K }.
  double support(const Vec& a) const;

  // Euclidean inradius / circumradius: r_in * B^n <= K <= r_out * B^n.
  double euclid_inradius() const { return inradius_; }
  double euclid_circumradius() const { return circumradius_; }

  // Polytope form only: scaled vertices / facet halfspaces (unit normals).
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& facets() const { return facets_; }

 private:
  BodyKind kind_ = BodyKind::Ball;
  int dim_ = 0;
  double scale_ = 1.0;
  std::vector<Vec> vertices_;       // already multiplied by scale_
  std::vector<Halfspace> facets_;   // of the scaled body
  double inradius_ = 0.0, circumradius_ = 0.0;
};

}  // namespace chromatic::geom
