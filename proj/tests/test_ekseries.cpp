#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdlib>

#include "ekkit/ekseries.hpp"

using namespace ekkit;

namespace {

double cerr(cplx got, cplx want) { return std::abs(got - want); }

double rerr(cplx got, cplx want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace

TEST_CASE("frozen oracle values of f*, g*, e*") {
  const cplx z{0.31, 0.17}, w{0.12, 0.44};
  {
    // [DERIVED] oracles: independent reference implementation of the series
    const Lattice lat = lattice_from_tau({0.0, 1.0});
    CHECK(rerr(f_star(1, 2, z, w, lat).value,
               {0.7019217652026897, -5.506149208167055}) < 1e-12);
    CHECK(rerr(g_star(2, 3, z, w, lat).value,
               {-554.7921653296155, -166.75191186033356}) < 1e-12);
    CHECK(rerr(ek(2, 5, z, w, lat).value,
               {-20.585332176036164, 11.815374328316118}) < 1e-12);
  }
  {
    const Lattice lat = lattice_from_tau({0.5, 1.0});
    CHECK(rerr(f_star(1, 2, z, w, lat).value,
               {0.8202732536308458, -5.623226587198534}) < 1e-12);
    CHECK(rerr(g_star(2, 3, z, w, lat).value,
               {-430.3027525865558, -188.68948198104513}) < 1e-12);
    CHECK(rerr(ek(2, 5, z, w, lat).value,
               {-20.99190036703193, 12.180769562459629}) < 1e-12);
  }
}

TEST_CASE("quasi-periodicity of f* and g*") {
  const Lattice lat = lattice_from_tau({-0.25, 1.1});
  const cplx z{0.31, 0.17}, w{0.12, 0.44};
  const cplx lam = shift_value(lat, {2, -1});
  CHECK(rerr(f_star(2, 1, z + lam, w, lat).value,
             pairing(lat, lam, w) * f_star(2, 1, z, w, lat).value) < 1e-12);
  CHECK(rerr(f_star(2, 1, z, w + lam, lat).value,
             f_star(2, 1, z, w, lat).value) < 1e-12);
  CHECK(rerr(g_star(1, 2, z + lam, w, lat).value,
             pairing(lat, lam, w) * g_star(1, 2, z, w, lat).value) < 1e-12);
  CHECK(rerr(g_star(1, 2, z, w + lam, lat).value,
             g_star(1, 2, z, w, lat).value) < 1e-12);
}

TEST_CASE("tilde variant carries the exponential prefactor") {
  const Lattice lat = lattice_from_tau({0.5, 1.0});
  const cplx z{0.31, 0.17}, w{0.12, 0.44};
  const cplx pref = std::exp(z * (w - std::conj(w)) / lat.A);
  CHECK(cerr(g_star(1, 1, z, w, lat, {}, Variant::Tilde).value,
             pref * g_star(1, 1, z, w, lat).value) < 1e-12);
  CHECK(cerr(f_star(1, 1, z, w, lat, {}, Variant::Tilde).value,
             pref * f_star(1, 1, z, w, lat).value) < 1e-12);
}

TEST_CASE("g* flip symmetry and one-variable parity") {
  const Lattice lat = lattice_from_tau({0.5, 1.0});
  const cplx z{0.31, 0.17}, w{0.12, 0.44};
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      const double sgn = ((a + b + 1) % 2 == 0) ? 1.0 : -1.0;
      CHECK(rerr(g_star(a, b, z, w, lat).value,
                 sgn * g_star(b, a, w, z, lat).value * pairing(lat, z, w)) <
            1e-11);
      // parity in the one-variable specialization
      const cplx gp = g_star(a, b, classify(lat, z), lattice_origin(), lat)
                          .value;
      const cplx gm = g_star(a, b, classify(lat, -z), lattice_origin(), lat)
                          .value;
      CHECK(rerr(gm, sgn * gp) < 1e-11);
    }
  }
}

TEST_CASE("ek domain guards") {
  const Lattice lat = lattice_from_tau({0.0, 1.0});
  const cplx z{0.31, 0.17}, w{0.12, 0.44};
  CHECK_THROWS_AS(ek(1, 0, z, w, lat), std::invalid_argument);
  const StratifiedPoint zs = classify(lat, z), ws = classify(lat, w);
  CHECK_THROWS_AS(ek_direct(1, 3, zs, ws, lat, 40.0), std::domain_error);
  CHECK_NOTHROW(ek_direct(0, 3, zs, ws, lat, 40.0));  // boundary accepted
}

TEST_CASE("ek agrees with the direct Lerch sum") {
  const Lattice lat = lattice_from_tau({0.5, 1.0});
  const StratifiedPoint z = classify(lat, {0.31, 0.17});
  const StratifiedPoint w = classify(lat, {0.12, 0.44});
  for (auto [a, b] : {std::pair{0, 4}, {1, 5}}) {
    const cplx v1 = ek(a, b, z, w, lat).value;
    const cplx v2 = ek_direct(a, b, z, w, lat, 90.0).value;
    CHECK(rerr(v1, v2) < 1e-3);
  }
  // on-lattice z stratum
  const cplx v1 = ek(0, 4, lattice_origin(), w, lat).value;
  const cplx v2 = ek_direct(0, 4, lattice_origin(), w, lat, 90.0).value;
  CHECK(rerr(v1, v2) < 1e-3);
}

TEST_CASE("parallel and serial direct sums are bitwise identical") {
  const Lattice lat = lattice_from_tau({-0.25, 1.1});
  const StratifiedPoint z = classify(lat, {0.31, 0.17});
  const StratifiedPoint w = classify(lat, {0.12, 0.44});
  for (auto [a, b] : {std::pair{0, 4}, {2, 6}}) {
    const EKValue p = ek_direct(a, b, z, w, lat, 120.0);
    const EKValue s = ek_direct_serial(a, b, z, w, lat, 120.0);
    CHECK(p.value.real() == s.value.real());
    CHECK(p.value.imag() == s.value.imag());
    CHECK(p.tail_bound == s.tail_bound);
  }
}

TEST_CASE("series metadata and failure mode") {
  const Lattice lat = lattice_from_tau({0.0, 1.0});
  const cplx z{0.31, 0.17}, w{0.12, 0.44};
  const EKValue v = f_star(0, 1, z, w, lat);
  CHECK(v.radius_used > 0.0);
  CHECK(v.radius_used <= SeriesParams{}.max_radius);
  CHECK(v.tail_bound < 1e-11);
  SeriesParams tiny;
  tiny.max_radius = 0.5;  // cannot even cover the Gaussian core
  CHECK_THROWS_AS(f_star(0, 1, z, w, lat, tiny), std::runtime_error);
}

TEST_CASE("EKKIT_THREADS is applied without error") {
  setenv("EKKIT_THREADS", "2", 1);
  apply_thread_env();
  const Lattice lat = lattice_from_tau({0.0, 1.0});
  const StratifiedPoint z = classify(lat, {0.31, 0.17});
  const StratifiedPoint w = classify(lat, {0.12, 0.44});
  const EKValue p = ek_direct(0, 4, z, w, lat, 60.0);
  const EKValue s = ek_direct_serial(0, 4, z, w, lat, 60.0);
  CHECK(p.value == s.value);
  unsetenv("EKKIT_THREADS");
  apply_thread_env();
}
