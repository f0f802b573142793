#pragma once

#include <random>
#include <vector>

#include "ekkit/lattice.hpp"

namespace ekkit {

/// Distance from z to the nearest lattice point.
inline double lattice_distance(const Lattice& lat, cplx z) {
  auto [red, s] = reduce(lat, z);
  double best = std::abs(red);
  for (int dm = -1; dm <= 1; ++dm) {
    for (int dn = -1; dn <= 1; ++dn) {
      best = std::min(best, std::abs(red - (double(dm) * lat.omega1 +
                                            double(dn) * lat.omega2)));
    }
  }
  return best;
}

/// A random point of the fundamental cell at distance >= 0.1 * shortest
/// lattice vector from the lattice.
inline cplx sample_point(const Lattice& lat, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int tries = 0; tries < 10000; ++tries) {
    const cplx z = u(rng) * lat.omega1 + u(rng) * lat.omega2;
    if (lattice_distance(lat, z) >= 0.1 * lat.shortest) return z;
  }
  return 0.31 * lat.omega1 + 0.17 * lat.omega2;  // unreachable fallback
}

/// A random point at distance >= frac * shortest from the lattice (used by
/// finite-difference suites, whose truncation error grows near the poles).
inline cplx sample_point_far(const Lattice& lat, std::mt19937_64& rng,
                             double frac = 0.35) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int tries = 0; tries < 100000; ++tries) {
    const cplx z = u(rng) * lat.omega1 + u(rng) * lat.omega2;
    if (lattice_distance(lat, z) >= frac * lat.shortest) return z;
  }
  throw std::runtime_error("sample_point_far: rejection sampling failed");
}

/// A tuple of points whose pairwise sums and differences also stay clear of
/// the lattice (conditions identity tests and finite differences).
inline std::vector<cplx> sample_separated(const Lattice& lat,
                                          std::mt19937_64& rng, int count) {
  for (int tries = 0; tries < 10000; ++tries) {
    std::vector<cplx> pts;
    for (int k = 0; k < count; ++k) pts.push_back(sample_point(lat, rng));
    bool ok = true;
    for (int i = 0; i < count && ok; ++i) {
      for (int k = i + 1; k < count && ok; ++k) {
        ok = lattice_distance(lat, pts[i] - pts[k]) >= 0.1 * lat.shortest &&
             lattice_distance(lat, pts[i] + pts[k]) >= 0.1 * lat.shortest;
      }
    }
    if (ok) return pts;
  }
  throw std::runtime_error("sample_separated: rejection sampling failed");
}

}  // namespace ekkit
