#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "chromatic/coloring.hpp"
#include "chromatic/error.hpp"
#include "chromatic/parallel.hpp"
#include "chromatic/rng.hpp"

namespace chromatic::color {

namespace {

constexpr double kTwoPi = 6.2831853071795864769252867665590058;

// Gaussian direction rescaled to K-norm 1: full support on the unit K-sphere.
Vec unit_direction(Rng& rng, const geom::ConvexBody& body, int n) {
  while (true) {
    Vec v = Vec::zero(n);
    for (int i = 0; i < n; i += 2) {
      const double u1 = rng.next_double();
      const double u2 = rng.next_double();
      const double r = std::sqrt(-2.0 * std::log1p(-u1));
      v[i] = r * std::cos(kTwoPi * u2);
      if (i + 1 < n) v[i + 1] = r * std::sin(kTwoPi * u2);
    }
    const double len = body.norm(v);
    if (len > 1e-9) return v * (1.0 / len);
  }
}

// The idx-th verification pair: x uniform in the scaled fundamental domain,
// y = x + v with ||v||_K = 1. Reproducible from (seed, idx) alone.
std::pair<Vec, Vec> sample_pair(const Coloring& c, uint64_t seed, uint64_t idx) {
  Rng rng = indexed_rng(seed, idx);
  const int n = c.n();
  Vec f = Vec::zero(n);
  for (int i = 0; i < n; ++i) f[i] = rng.next_double();
  const Vec x = c.tiling.ml.base.to_ambient(f) * c.scale;
  const Vec v = unit_direction(rng, c.body, n);
  return {x, x + v};
}

StructuralReport structural_check(const Coloring& c) {
  StructuralReport st;
  const int k = c.k();

  double max_diam = 0.0;
  for (const auto& piece : c.pieces)
    max_diam = std::max(max_diam, geom::diameter_in_norm(piece, c.body));
  st.max_scaled_diameter = max_diam * c.scale;

  // Same-color separation. A color's pieces are one translate of the whole
  // piece family, so the minimum is over class pairs and lattice shifts:
  //   min dist_K(P_i1, P_i2 + w),  i1 <= i2,  w != 0 when i1 == i2,
  // and only i1 == i2 when each class is its own color.
  const lattice::Lattice& lat = c.tiling.ml.base;
  const double r_out = c.body.euclid_circumradius();
  std::vector<double> rc(k);
  double rc_max = 0.0;
  for (int i = 0; i < k; ++i) {
    rc[i] = c.pieces[i].circumradius_about(c.tiling.site(i));
    rc_max = std::max(rc_max, rc[i]);
  }
  // Upper bound on the answer: a piece and its own copy across the shortest
  // lattice vector are at most that vector's K-norm apart.
  const double min_k = lattice::lattice_minimum(lat, c.body);
  const double reach = 2.0 * lat.par_radius + 2.0 * rc_max + min_k * r_out;
  const auto torus = lattice::Torus::make(lat, reach * (1.0 + 1e-9) + 1e-6);

  double best = min_k;
  for (int i1 = 0; i1 < k; ++i1) {
    for (int i2 = i1; i2 < k; ++i2) {
      if (c.mode == Mode::CellPartition && i1 != i2) continue;
      const Vec centers = c.tiling.site(i2) - c.tiling.site(i1);
      const double clen = centers.norm();
      for (size_t si = 0; si < torus.shifts.size(); ++si) {
        if (torus.shift_len[si] > clen + rc[i1] + rc[i2] + best * r_out) break;
        if (i1 == i2 && si == 0) continue;  // the piece itself
        const Vec w = torus.shifts[si];
        if (((centers + w).norm() - rc[i1] - rc[i2]) / r_out >= best) continue;
        const double d = geom::distance_in_norm(c.pieces[i1],
                                                c.pieces[i2].translated(w), c.body);
        best = std::min(best, d);
      }
    }
  }
  st.min_scaled_separation = best * c.scale;

  st.diameter_margin = 1.0 - st.max_scaled_diameter;
  st.separation_margin = st.min_scaled_separation - 1.0;
  if (c.mode == Mode::ShrunkCover) {
    st.expected_diameter_margin = c.params.eta;
    // 2*alpha*mu*eta*scale, simplified.
    st.expected_separation_margin = c.params.eta / c.params.gamma;
  }
  st.pass = st.max_scaled_diameter < 1.0 && st.min_scaled_separation > 1.0;
  return st;
}

SampledReport sampled_check(const Coloring& c, int64_t pair_samples, uint64_t seed) {
  SampledReport rep;
  require(pair_samples >= 0, Errc::InvalidInput, "pair sample count must be nonnegative");
  rep.pairs = pair_samples;
  if (pair_samples == 0) {
    rep.pass = true;
    return rep;
  }
  enum : uint8_t { kOk = 0, kViolation = 1, kUndefined = 2 };
  std::vector<uint8_t> flags(static_cast<size_t>(pair_samples), kOk);
  parallel_for(pair_samples, [&](int64_t idx) {
    auto [x, y] = sample_pair(c, seed, static_cast<uint64_t>(idx));
    try {
      if (color_of(c, x) == color_of(c, y)) flags[idx] = kViolation;
    } catch (const Error& e) {
      if (e.code() != Errc::Certificate) throw;
      flags[idx] = kUndefined;
    }
  });
  for (int64_t idx = 0; idx < pair_samples; ++idx) {
    if (flags[idx] == kViolation) {
      ++rep.violations;
      if (rep.witnesses.size() < 10)
        rep.witnesses.push_back(sample_pair(c, seed, static_cast<uint64_t>(idx)));
    } else if (flags[idx] == kUndefined) {
      ++rep.undefined;
    }
  }
  rep.pass = rep.violations == 0 && rep.undefined == 0;
  return rep;
}

}  // namespace

VerificationReport verify_coloring(const Coloring& c, int64_t pair_samples, uint64_t seed) {
  require(!c.pieces.empty() && c.colors >= 1, Errc::InvalidInput, "coloring has no pieces");
  require(c.scale > 0.0, Errc::InvalidInput, "coloring scale must be positive");
  if (c.mode == Mode::ShrunkCover)
    require(static_cast<int>(c.translates.size()) == c.colors, Errc::InvalidInput,
            "translate count does not match the color count");
  VerificationReport rep;
  rep.structural = structural_check(c);
  rep.sampled = sampled_check(c, pair_samples, seed);
  rep.pass = rep.structural.pass && rep.sampled.pass;
  return rep;
}

}  // namespace chromatic::color
