#pragma once

#include <vector>

#include "chromatic/body.hpp"
#include "chromatic/vec.hpp"

namespace chromatic::lattice {

// Full-rank lattice in R^n given by basis columns.
struct Lattice {
  Mat basis;
  Mat inv;               // basis^{-1}
  double covolume = 0.0; // |det basis|
  int n = 0;
  double min_gs = 0.0;   // smallest Gram-Schmidt norm of the basis
  double par_radius = 0.0;  // circumradius of the basis parallelepiped / 2

  static Lattice make(const Mat& basis);
  Vec to_fractional(const Vec& p) const { return inv.mul(p); }
  Vec to_ambient(const Vec& f) const { return basis.mul(f); }
};

// Lattice plus k distinct translate classes; the site set is
// { x_i + w : i < k, w in Lattice }. Translates are stored reduced to the
// half-open fundamental parallelepiped.
struct Multilattice {
  Lattice base;
  std::vector<Vec> translates;  // k >= 1, first may be anywhere (reduced)

  int k() const { return static_cast<int>(translates.size()); }
  static Multilattice make(const Lattice& base, const std::vector<Vec>& translates);
};

// Quotient torus R^n / Lattice with a certified enumeration table:
// `shifts` lists all lattice vectors inside a coefficient box of radius
// `box`, sorted by Euclidean length. Any lattice vector outside the box has
// Euclidean norm >= (box+1) * min_gs = `certified_radius`, so any periodic
// minimization whose optimum provably lies within that radius is exact.
struct Torus {
  Lattice lat;
  int box = 0;
  double certified_radius = 0.0;
  std::vector<Vec> shifts;         // sorted by length, shifts[0] = 0
  std::vector<double> shift_len;   // Euclidean lengths, same order

  // query_radius: the largest Euclidean length a minimizer may need.
  static Torus make(const Lattice& lat, double query_radius);
  // Sized for K-norm distance queries: radius par * (1 + r_out/r_in) plus
  // slack, and at least 4x the body circumradius.
  static Torus for_body(const Lattice& lat, const geom::ConvexBody& k);

  // Canonical representative with fractional coordinates in [0, 1)^n.
  Vec reduce(const Vec& p) const;
  // Representative with fractional coordinates in [-1/2, 1/2)^n; Euclidean
  // norm at most lat.par_radius.
  Vec nearest_image(const Vec& p) const;

  // min over lattice w of ||p - q + w||_K. Exact: the search radius needed
  // is checked against certified_radius.
  double distance(const geom::ConvexBody& k, const Vec& p, const Vec& q) const;
  // Euclidean special case (slightly cheaper inner loop).
  double distance_euclid(const Vec& p, const Vec& q) const;
};

// Deterministic grid: all points basis * (i/res) for i in [0,res)^n, ordered
// with the first index varying fastest. Errors if res^n > 1e8 or res < 1.
std::vector<Vec> sample_grid(const Torus& t, int res);

// Shortest nonzero lattice vector in the K norm (exact via the certified
// enumeration box).
double lattice_minimum(const Lattice& lat, const geom::ConvexBody& k);

}  // namespace chromatic::lattice
