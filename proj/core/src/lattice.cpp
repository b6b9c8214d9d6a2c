#include "chromatic/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chromatic::lattice {

namespace {

// Circumradius of the fundamental parallelepiped about its corners: the max
// over sign patterns of ||sum_i eps_i b_i|| / 2. Any point of R^n is within
// this distance of a lattice point, so it bounds the covering radius.
double parallelepiped_radius(const Mat& basis) {
  const int n = basis.n;
  double best = 0.0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec s(n);
    for (int j = 0; j < n; ++j) s += basis.col(j) * ((mask >> j) & 1 ? 1.0 : -1.0);
    best = std::max(best, s.norm());
  }
  return best * 0.5;
}

}  // namespace

Lattice Lattice::make(const Mat& basis) {
  require(basis.n >= 1 && basis.n <= kMaxDim, Errc::InvalidInput, "lattice: dimension must be 1..4");
  Lattice lat;
  lat.basis = basis;
  lat.n = basis.n;
  double d = basis.det();
  require(std::abs(d) > kGeomEps, Errc::InvalidInput, "lattice: basis is singular");
  lat.covolume = std::abs(d);
  require(basis.inverse(&lat.inv), Errc::InvalidInput, "lattice: basis is singular");
  auto gs = gram_schmidt_norms(basis);
  lat.min_gs = std::numeric_limits<double>::infinity();
  for (int i = 0; i < lat.n; ++i) lat.min_gs = std::min(lat.min_gs, gs[i]);
  lat.par_radius = parallelepiped_radius(basis);
  return lat;
}

Multilattice Multilattice::make(const Lattice& base, const std::vector<Vec>& translates) {
  require(!translates.empty(), Errc::InvalidInput, "multilattice: need at least one translate");
  Multilattice ml;
  ml.base = base;
  Torus t = Torus::make(base, 2.0 * base.par_radius + 1.0);
  for (const auto& x : translates) {
    require(x.dim() == base.n, Errc::InvalidInput, "multilattice: translate dimension mismatch");
    Vec r = t.reduce(x);
    for (const auto& y : ml.translates)
      require(t.distance_euclid(r, y) > kGeomEps, Errc::InvalidInput,
              "multilattice: coincident translate classes");
    ml.translates.push_back(r);
  }
  return ml;
}

Torus Torus::make(const Lattice& lat, double query_radius) {
  Torus t;
  t.lat = lat;
  require(query_radius > 0.0 && std::isfinite(query_radius), Errc::InvalidInput,
          "torus: query radius must be positive");
  int box = std::max(3, static_cast<int>(std::ceil(query_radius / lat.min_gs)));
  require(std::pow(2.0 * box + 1.0, lat.n) < 4e6, Errc::Unsupported,
          "torus: enumeration box too large (ill-conditioned basis?)");
  t.box = box;
  t.certified_radius = (box + 1) * lat.min_gs;

  const int n = lat.n;
  std::vector<std::pair<double, Vec>> all;
  std::vector<int> z(n, -box);
  for (;;) {
    Vec w(n);
    for (int j = 0; j < n; ++j) w += lat.basis.col(j) * static_cast<double>(z[j]);
    all.emplace_back(w.norm(), w);
    int i = 0;
    while (i < n && z[i] == box) z[i++] = -box;
    if (i == n) break;
    ++z[i];
  }
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return lex_less(x.second, y.second);
  });
  t.shifts.reserve(all.size());
  t.shift_len.reserve(all.size());
  for (auto& [len, w] : all) {
    t.shifts.push_back(w);
    t.shift_len.push_back(len);
  }
  return t;
}

Torus Torus::for_body(const Lattice& lat, const geom::ConvexBody& k) {
  double aniso = k.euclid_circumradius() / k.euclid_inradius();
  double radius = lat.par_radius * (1.0 + aniso) + kGeomEps;
  radius = std::max(radius, 4.0 * k.euclid_circumradius());
  return make(lat, radius);
}

Vec Torus::reduce(const Vec& p) const {
  Vec f = lat.to_fractional(p);
  for (int i = 0; i < f.dim(); ++i) {
    f[i] -= std::floor(f[i]);
    if (f[i] >= 1.0) f[i] = 0.0;  // guard against floor(x) == x - 1 rounding
  }
  return lat.to_ambient(f);
}

Vec Torus::nearest_image(const Vec& p) const {
  Vec f = lat.to_fractional(p);
  for (int i = 0; i < f.dim(); ++i) f[i] -= std::round(f[i]);
  return lat.to_ambient(f);
}

double Torus::distance(const geom::ConvexBody& k, const Vec& p, const Vec& q) const {
  const Vec d0 = nearest_image(p - q);
  const double d0len = d0.norm();
  const double r_out = k.euclid_circumradius();
  // The optimizer w satisfies ||d0 + w|| <= r_out * ||d0+w||_K <= r_out *
  // ||d0||_K <= r_out/r_in * ||d0||, so ||w|| stays within the certified box.
  double needed = d0len * (1.0 + r_out / k.euclid_inradius());
  require(needed <= certified_radius + kGeomEps, Errc::Internal,
          "torus: enumeration radius insufficient for this query");
  double best = k.norm(d0);
  for (size_t i = 1; i < shifts.size(); ++i) {
    if ((shift_len[i] - d0len) / r_out >= best) break;  // sorted: no improvement beyond
    best = std::min(best, k.norm(d0 + shifts[i]));
  }
  return best;
}

double Torus::distance_euclid(const Vec& p, const Vec& q) const {
  const Vec d0 = nearest_image(p - q);
  const double d0len = d0.norm();
  require(2.0 * d0len <= certified_radius + kGeomEps, Errc::Internal,
          "torus: enumeration radius insufficient for this query");
  double best = d0len;
  for (size_t i = 1; i < shifts.size(); ++i) {
    if (shift_len[i] - d0len >= best) break;
    best = std::min(best, (d0 + shifts[i]).norm());
  }
  return best;
}

std::vector<Vec> sample_grid(const Torus& t, int res) {
  require(res >= 1, Errc::InvalidInput, "sample_grid: resolution must be >= 1");
  const int n = t.lat.n;
  double total = std::pow(static_cast<double>(res), n);
  require(total <= 1e8, Errc::Unsupported, "sample_grid: grid would exceed 1e8 points");
  std::vector<Vec> pts;
  pts.reserve(static_cast<size_t>(total));
  std::vector<int> idx(n, 0);
  for (;;) {
    Vec f(n);
    for (int j = 0; j < n; ++j) f[j] = static_cast<double>(idx[j]) / res;
    pts.push_back(t.lat.to_ambient(f));
    int i = 0;
    while (i < n && idx[i] == res - 1) idx[i++] = 0;
    if (i == n) break;
    ++idx[i];
  }
  return pts;
}

double lattice_minimum(const Lattice& lat, const geom::ConvexBody& k) {
  // Any vector outside the table has Euclidean norm >= certified_radius, so
  // its K norm is >= certified_radius / r_out. Grow the box until that bound
  // exceeds the best candidate found among the enumerated short vectors.
  double radius = lat.par_radius * (1.0 + k.euclid_circumradius() / k.euclid_inradius());
  for (int attempt = 0; attempt < 8; ++attempt) {
    Torus t = Torus::make(lat, radius);
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < t.shifts.size(); ++i) best = std::min(best, k.norm(t.shifts[i]));
    if (t.certified_radius / k.euclid_circumradius() > best) return best;
    radius *= 2.0;
  }
  fail(Errc::Internal, "lattice minimum: enumeration box too small");
}

}  // namespace chromatic::lattice
