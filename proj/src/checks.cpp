#include "ekkit/checks.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ekkit/ainfinity.hpp"
#include "ekkit/classical.hpp"
#include "ekkit/ekseries.hpp"
#include "ekkit/sampling.hpp"
#include "ekkit/symrec.hpp"

namespace ekkit {

namespace {

struct CheckMeta {
  CheckId id;
  const char* name;
  double threshold;
};

constexpr CheckMeta kMeta[] = {
    {CheckId::ThmC, "thm-c", 1e-3},
    {CheckId::FuncEq, "func-eq", 1e-9},
    {CheckId::DerivE, "deriv-e", 1e-5},
    {CheckId::DerivG, "deriv-g", 1e-5},
    {CheckId::Limits, "limits", 1e-5},
    {CheckId::Quasi, "quasi", 1e-9},
    {CheckId::ZetaId, "zeta-id", 1e-9},
    {CheckId::KronId, "kron-id", 1e-8},
    {CheckId::EFLink, "e-f-link", 1e-8},
    {CheckId::ClassicalX, "classical-x", 1e-7},
    {CheckId::Quad, "quad", 1e-8},
    {CheckId::Aybe, "aybe", 1e-10},
    {CheckId::Expansion, "expansion", 1e-8},
    {CheckId::Stasheff, "stasheff", 1e-8},
    {CheckId::Cyclic, "cyclic", 1e-9},
    {CheckId::Unital, "unital", 1e-12},
    {CheckId::PerturbOracle, "perturb-oracle", 1e-9},
    {CheckId::MaurerCartan, "maurer-cartan", 1e-8},
    {CheckId::Variation, "variation", 1e-5},
    {CheckId::Corb, "corb", 1e-9},
    {CheckId::Constants, "constants", 1e-8},
};

const CheckMeta& meta(CheckId id) {
  for (const auto& m : kMeta) {
    if (m.id == id) return m;
  }
  throw std::invalid_argument("unknown check id");
}

double dfact(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

double dbinom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double ipow_sign(long e) { return (e % 2 == 0) ? 1.0 : -1.0; }

/// Stratified point from an explicit on-lattice flag (the on-lattice case is
/// always the exact representative 0 in these identity suites).
StratifiedPoint sp(const Lattice& lat, cplx v, bool on) {
  return on ? lattice_origin() : classify(lat, v);
}

cplx gv(const Lattice& lat, int a, int b, cplx z, cplx w, bool z_on = false,
        bool w_on = false, Variant variant = Variant::Plain) {
  return g_star(a, b, sp(lat, z, z_on), sp(lat, w, w_on), lat, {}, variant)
      .value;
}

cplx fv(const Lattice& lat, int m, int n, cplx z, cplx w, bool z_on = false,
        bool w_on = false) {
  return f_star(m, n, sp(lat, z, z_on), sp(lat, w, w_on), lat).value;
}

cplx ekv(const Lattice& lat, int a, int b, cplx z, cplx w, bool z_on = false,
         bool w_on = false) {
  return ek(a, b, sp(lat, z, z_on), sp(lat, w, w_on), lat).value;
}

/// Central Wirtinger finite difference d/dz (bar = false) or d/dzbar.
template <class F>
cplx wirtinger(F&& f, cplx z0, bool bar, double h = 1e-5) {
  const cplx a = f(z0 + h) - f(z0 - h);
  const cplx b = f(z0 + cplx{0.0, h}) - f(z0 - cplx{0.0, h});
  const cplx is = bar ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
  return (a + is * b) / (4.0 * h);
}

/// Neville polynomial extrapolation of (t_k, y_k) to t = 0.
cplx neville_at_zero(const std::vector<double>& t, std::vector<cplx> y) {
  const int n = int(y.size());
  for (int lev = 1; lev < n; ++lev) {
    for (int i = 0; i + lev < n; ++i) {
      y[std::size_t(i)] =
          (-t[std::size_t(i + lev)] * y[std::size_t(i)] +
           t[std::size_t(i)] * y[std::size_t(i + 1)]) /
          (t[std::size_t(i)] - t[std::size_t(i + lev)]);
    }
  }
  return y[0];
}

double rel(cplx got, cplx want) {
  return std::abs(got - want) /
         std::max({1.0, std::abs(got), std::abs(want)});
}

/// Aggregates parts with different intrinsic tolerances into one residual
/// compared against the check threshold: residual_i * threshold / tol_i.
struct Agg {
  double check_tol;
  double worst = 0.0;
  void add(double resid, double tol) {
    worst = std::max(worst, resid * (check_tol / tol));
  }
  void add(double resid) { worst = std::max(worst, resid); }
};

AinfConfig sampled_config(const Lattice& lat, const CheckEnv& env,
                          std::mt19937_64& rng) {
  const auto pts = sample_separated(lat, rng, env.r + env.s);
  std::vector<cplx> w(pts.begin(), pts.begin() + env.r);
  std::vector<cplx> z(pts.begin() + env.r, pts.end());
  return AinfConfig(lat, std::move(w), std::move(z));
}

// ---------------------------------------------------------------------------
// series-level checks
// ---------------------------------------------------------------------------

double chk_thm_c(const Lattice& lat, const CheckEnv& env,
                 std::mt19937_64& rng) {
  const double R = 80.0;
  double worst = 0.0;
  const std::pair<int, int> pairs[] = {{0, 4}, {0, 5}, {1, 5}, {2, 6}};
  for (int rep = 0; rep < 3; ++rep) {
    const auto pts = sample_separated(lat, rng, 2);
    for (auto [a, b] : pairs) {
      const cplx v1 = ekv(lat, a, b, pts[0], pts[1]);
      const cplx v2 =
          ek_direct(a, b, classify(lat, pts[0]), classify(lat, pts[1]), lat, R)
              .value;
      worst = std::max(worst, rel(v1, v2));
    }
  }
  // on-lattice z stratum
  const cplx w0 = sample_point(lat, rng);
  const cplx v1 = ekv(lat, 0, 4, 0.0, w0, /*z_on=*/true);
  const cplx v2 =
      ek_direct(0, 4, lattice_origin(), classify(lat, w0), lat, R).value;
  return std::max(worst, rel(v1, v2));
}

double chk_func_eq(const Lattice& lat, const CheckEnv& env,
                   std::mt19937_64& rng) {
  const double A = lat.A;
  double worst = 0.0;
  auto one = [&](int a, int b, cplx z, cplx w, bool z_on, bool w_on) {
    const cplx lhs = dfact(b - 1) * ekv(lat, a, b, z, w, z_on, w_on);
    const cplx rhs = std::pow(A, a - b + 1) * dfact(a) *
                     ekv(lat, b - 1, a + 1, w, z, w_on, z_on) *
                     pairing(lat, w, z);
    return rel(lhs, rhs);
  };
  for (int rep = 0; rep < 3; ++rep) {
    const auto pts = sample_separated(lat, rng, 2);
    for (int a = 0; a <= 3; ++a) {
      for (int b = 1; b <= 4; ++b) {
        worst = std::max(worst, one(a, b, pts[0], pts[1], false, false));
      }
    }
  }
  const cplx w0 = sample_point(lat, rng);
  worst = std::max(worst, one(1, 2, 0.0, w0, true, false));
  worst = std::max(worst, one(2, 2, w0, 0.0, false, true));
  return worst;
}

double chk_deriv_e(const Lattice& lat, const CheckEnv& env,
                   std::mt19937_64& rng) {
  const double A = lat.A;
  double worst = 0.0;
  const std::pair<int, int> pairs[] = {{0, 1}, {1, 2}, {2, 2}};
  for (int rep = 0; rep < 2; ++rep) {
    const cplx z = sample_point_far(lat, rng), w = sample_point_far(lat, rng);
    for (auto [a, b] : pairs) {
      // d/dz e*_{a,b} = -b e*_{a,b+1}
      const cplx dz = wirtinger(
          [&](cplx zz) { return ekv(lat, a, b, zz, w); }, z, false);
      worst = std::max(worst, rel(dz, -double(b) * ekv(lat, a, b + 1, z, w)));
      // d/dw e*_{a,b} = -A^{-1} e*_{a+1,b} + A^{-1} conj(z) e*_{a,b}
      const cplx dw = wirtinger(
          [&](cplx ww) { return ekv(lat, a, b, z, ww); }, w, false);
      const cplx want =
          (-ekv(lat, a + 1, b, z, w) + std::conj(z) * ekv(lat, a, b, z, w)) /
          A;
      worst = std::max(worst, rel(dw, want));
    }
  }
  return worst;
}

double chk_deriv_g(const Lattice& lat, const CheckEnv& env,
                   std::mt19937_64& rng) {
  const double A = lat.A;
  double worst = 0.0;
  for (int rep = 0; rep < 2; ++rep) {
    const cplx z = sample_point_far(lat, rng), w = sample_point_far(lat, rng);
    const std::pair<int, int> fpairs[] = {{0, 1}, {1, 2}, {2, 1}};
    for (auto [m, n] : fpairs) {
      auto fz = [&](cplx zz) { return fv(lat, m, n, zz, w); };
      auto fw = [&](cplx ww) { return fv(lat, m, n, z, ww); };
      // d/dz f* = -f*_{m+1,n} - n f*_{m,n+1}
      worst = std::max(
          worst, rel(wirtinger(fz, z, false),
                     -fv(lat, m + 1, n, z, w) - double(n) * fv(lat, m, n + 1, z, w)));
      // d/dw f* = f*_{m+1,n} - A^{-1} conj(z) f*
      worst = std::max(
          worst,
          rel(wirtinger(fw, w, false),
              fv(lat, m + 1, n, z, w) - std::conj(z) / A * fv(lat, m, n, z, w)));
      // A d/dzbar f* = m f*_{m-1,n} - f*_{m,n-1}   (n >= 1)
      worst = std::max(
          worst,
          rel(A * wirtinger(fz, z, true),
              double(m) * (m > 0 ? fv(lat, m - 1, n, z, w) : 0.0) -
                  fv(lat, m, n - 1, z, w)));
      // A d/dwbar f* = -f*_{m,n-1} + z f*
      worst = std::max(
          worst, rel(A * wirtinger(fw, w, true),
                     -fv(lat, m, n - 1, z, w) + z * fv(lat, m, n, z, w)));
    }
    const std::pair<int, int> gpairs[] = {{0, 0}, {1, 1}, {2, 1}};
    for (auto [a, b] : gpairs) {
      auto gz = [&](cplx zz) { return gv(lat, a, b, zz, w); };
      auto gw = [&](cplx ww) { return gv(lat, a, b, z, ww); };
      // d/dz g* = g*_{a,b+1}
      worst = std::max(worst, rel(wirtinger(gz, z, false),
                                  gv(lat, a, b + 1, z, w)));
      // A d/dzbar g* = -a g*_{a-1,b}   (generic w)
      worst = std::max(
          worst, rel(A * wirtinger(gz, z, true),
                     a > 0 ? -double(a) * gv(lat, a - 1, b, z, w) : cplx{}));
      // d/dw g* = -g*_{a+1,b} - A^{-1} conj(z) g*
      worst = std::max(
          worst,
          rel(wirtinger(gw, w, false),
              -gv(lat, a + 1, b, z, w) - std::conj(z) / A * gv(lat, a, b, z, w)));
    }
  }
  return worst;
}

double chk_limits(const Lattice& lat, const CheckEnv& env,
                  std::mt19937_64& rng) {
  const double A = lat.A;
  const cplx w = sample_point(lat, rng);
  const cplx dirv{0.3, 0.4};
  std::vector<double> ts;
  for (int k = 0; k < 5; ++k) ts.push_back(0.1 / double(1 << k));
  double worst = 0.0;
  const std::pair<int, int> pairs[] = {{0, 0}, {1, 1}, {2, 1}, {0, 2}};
  for (auto [a, b] : pairs) {
    std::vector<cplx> es, gs;
    for (double t : ts) {
      const cplx z = t * dirv;
      es.push_back(ekv(lat, a, b + 1, z, w) -
                   std::pow(std::conj(z), a) / std::pow(z, b + 1));
      gs.push_back(gv(lat, a, b, z, w) +
                   ipow_sign(a + b) * std::pow(A, -a) * dfact(b) *
                       std::pow(std::conj(z), a) / std::pow(z, b + 1));
    }
    const cplx e0 = ekv(lat, a, b + 1, 0.0, w, /*z_on=*/true);
    const cplx g0 = gv(lat, a, b, 0.0, w, /*z_on=*/true);
    worst = std::max(worst, rel(neville_at_zero(ts, es), e0));
    worst = std::max(worst, rel(neville_at_zero(ts, gs), g0));
  }
  return worst;
}

double chk_quasi(const Lattice& lat, const CheckEnv& env,
                 std::mt19937_64& rng) {
  std::uniform_int_distribution<int> shift(-2, 2);
  double worst = 0.0;
  for (int rep = 0; rep < 3; ++rep) {
    const auto pts = sample_separated(lat, rng, 2);
    const cplx z = pts[0], w = pts[1];
    long m = 0, n = 0;
    while (m == 0 && n == 0) {
      m = shift(rng);
      n = shift(rng);
    }
    const cplx lam = shift_value(lat, {m, n});
    // f*: f*(z + lam, w) = <lam, w> f*(z, w);  Lambda-periodic in w.
    worst = std::max(worst, rel(fv(lat, 1, 2, z + lam, w),
                                pairing(lat, lam, w) * fv(lat, 1, 2, z, w)));
    worst = std::max(worst, rel(fv(lat, 1, 2, z, w + lam),
                                fv(lat, 1, 2, z, w)));
    // g*: same laws.
    worst = std::max(worst, rel(gv(lat, 1, 2, z + lam, w),
                                pairing(lat, lam, w) * gv(lat, 1, 2, z, w)));
    worst = std::max(worst, rel(gv(lat, 0, 0, z, w + lam),
                                gv(lat, 0, 0, z, w)));
    // e*: periodic in w; <lam, w>^{-1} factor in z.
    worst = std::max(worst, rel(ekv(lat, 1, 2, z, w + lam),
                                ekv(lat, 1, 2, z, w)));
    worst = std::max(worst, rel(ekv(lat, 1, 2, z + lam, w),
                                ekv(lat, 1, 2, z, w) /
                                    pairing(lat, lam, w)));
  }
  return worst;
}

double chk_zeta_id(const Lattice& lat, const CheckEnv& env,
                   std::mt19937_64& rng) {
  double worst = 0.0;
  for (int rep = 0; rep < 3; ++rep) {
    const cplx z = sample_point(lat, rng);
    const cplx Zv = Z_fn(z, lat);
    worst = std::max(worst, rel(gv(lat, 0, 0, z, 0.0, false, true), -Zv));
    worst = std::max(worst, rel(ekv(lat, 0, 1, z, 0.0, false, true), Zv));
  }
  return worst;
}

cplx strip_point(cplx tau, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 0.4);
  std::uniform_real_distribution<double> a(-0.4, 0.4);
  return a(rng) + u(rng) * tau;
}

double chk_kron_id(const Lattice& lat, const CheckEnv& env,
                   std::mt19937_64& rng) {
  double worst = 0.0;
  for (int rep = 0; rep < 3; ++rep) {
    const cplx z = strip_point(env.tau, rng);
    const cplx w = -strip_point(env.tau, rng);
    const cplx gt = gv(lat, 0, 0, z, w, false, false, Variant::Tilde);
    const cplx want = -2.0 * kPi * cplx{0.0, 1.0} *
                      kronecker_F(z, -w, env.tau);
    worst = std::max(worst, rel(gt, want));
  }
  return worst;
}

double chk_e_f_link(const Lattice& lat, const CheckEnv& env,
                    std::mt19937_64& rng) {
  const double A = lat.A;
  double worst = 0.0;
  for (int rep = 0; rep < 3; ++rep) {
    const cplx z = strip_point(env.tau, rng);
    const cplx w = strip_point(env.tau, rng);
    const cplx lhs = ekv(lat, 0, 1, z, w);
    const cplx rhs = 2.0 * kPi * cplx{0.0, 1.0} *
                     std::exp(z * (w - std::conj(w)) / A) *
                     kronecker_F(z, w, env.tau);
    worst = std::max(worst, rel(lhs, rhs));
  }
  return worst;
}

double chk_classical_x(const Lattice& lat, const CheckEnv& env,
                       std::mt19937_64& rng) {
  Agg agg{meta(CheckId::ClassicalX).threshold};
  const auto eta = period_eta(lat);
  // Legendre relation.
  agg.add(std::abs(eta.eta1 * lat.omega2 - eta.eta2 * lat.omega1 -
                   2.0 * kPi * cplx{0.0, 1.0}),
          1e-10);
  // Weierstrass ODE: wp'^2 = 4 wp^3 - g2 wp - g3.
  const cplx g2 = 60.0 * eisenstein_q(lat, 4);
  const cplx g3 = 140.0 * eisenstein_q(lat, 6);
  const cplx zs = sample_point(lat, rng);
  {
    const cplx p = weier_p(zs, lat), pp = weier_p(zs, lat, 1);
    agg.add(rel(pp * pp, 4.0 * p * p * p - g2 * p - g3), 1e-7);
  }
  // eta1 = 2 zeta(omega1/2) (reduction-free Laurent evaluation).
  agg.add(rel(eta.eta1, 2.0 * weier_zeta(0.5 * lat.omega1, lat)), 1e-8);
  // g*_{0,1}(z,0) - wp(z) is z-independent; g*_{0,2}(z,0) = wp'(z).
  {
    const auto pts = sample_separated(lat, rng, 2);
    const cplx c1 = gv(lat, 0, 1, pts[0], 0.0, false, true) -
                    weier_p(pts[0], lat);
    const cplx c2 = gv(lat, 0, 1, pts[1], 0.0, false, true) -
                    weier_p(pts[1], lat);
    agg.add(rel(c1, c2), 1e-8);
    agg.add(rel(gv(lat, 0, 2, pts[0], 0.0, false, true),
                weier_p(pts[0], lat, 1)),
            1e-8);
  }
  // theta quasi-periodicity.
  {
    const cplx tau = env.tau;
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    const cplx z{u(rng), u(rng)};
    agg.add(rel(theta(z + 1.0, tau), theta(z, tau)), 1e-10);
    const cplx factor =
        std::exp(-cplx{0.0, 1.0} * kPi * tau - 2.0 * kPi * cplx{0.0, 1.0} * z);
    agg.add(rel(theta(z + tau, tau), factor * theta(z, tau)), 1e-10);
  }
  // e8 = 3/7 e4^2 (classical recursion closure).
  agg.add(rel(eisenstein_q(lat, 8),
              3.0 / 7.0 * eisenstein_q(lat, 4) * eisenstein_q(lat, 4)),
          1e-10);
  // capped direct Eisenstein sum against the q-series route.
  for (int two_k : {4, 6, 8}) {
    agg.add(rel(eisenstein(lat, two_k), eisenstein_q(lat, two_k)), 1e-6);
  }
  // e2* order dependence: the two summation orders must differ.
  const cplx d = eisenstein2_star(lat) - eisenstein2_star_swapped(lat);
  if (std::abs(d) < 1e-6) agg.add(2.0 * meta(CheckId::ClassicalX).threshold, 1e-7);
  return agg.worst;
}

double chk_quad(const Lattice& lat, const CheckEnv& env,
                std::mt19937_64& rng) {
  const auto pts = sample_separated(lat, rng, 4);
  const cplx zg = pts[0], zpg = pts[1], wg = pts[2], wpg = pts[3];
  double worst = 0.0;
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; b <= 2; ++b) {
      for (int mask = 0; mask < 16; ++mask) {
        const bool z_on = mask & 1, zp_on = mask & 2, w_on = mask & 4,
                   wp_on = mask & 8;
        const cplx z = z_on ? 0.0 : zg, zp = zp_on ? 0.0 : zpg,
                   w = w_on ? 0.0 : wg, wp = wp_on ? 0.0 : wpg;
        auto G = [&](int aa, int bb, cplx Z, cplx W, bool Zon, bool Won) {
          return gv(lat, aa, bb, Z, W, Zon, Won);
        };
        cplx lhs{};
        for (int a1 = 0; a1 <= a; ++a1) {
          const int a2 = a - a1;
          lhs += dbinom(a, a1) * G(a2, 0, z, w, z_on, w_on) *
                 G(a1, b, zp, w + wp, zp_on, w_on && wp_on);
        }
        for (int b1 = 0; b1 <= b; ++b1) {
          const int b2 = b - b1;
          lhs -= dbinom(b, b1) * G(0, b1, zp, wp, zp_on, wp_on) *
                 G(a, b2, z + zp, w, z_on && zp_on, w_on);
        }
        lhs += G(0, 0, -z, wp, z_on, wp_on) *
               G(a, b, z + zp, w + wp, z_on && zp_on, w_on && wp_on);
        cplx rhs{};
        if (b == 0 && w_on && wp_on) {
          rhs += G(a + 1, 0, z, w, z_on, w_on) / double(a + 1);
        }
        if (a == 0 && z_on && zp_on) {
          rhs -= pairing(lat, z + zp, w) / double(b + 1) *
                 G(0, b + 1, zp, wp, zp_on, wp_on);
        }
        if (w_on) rhs += G(a + 1, b, zp, wp, zp_on, wp_on) / double(a + 1);
        if (z_on) {
          rhs -= pairing(lat, z, w) * G(a, b + 1, zp, w + wp, zp_on,
                                        w_on && wp_on);
        }
        if (wp_on) rhs += G(a + 1, b, z + zp, w, z_on && zp_on, w_on);
        if (zp_on) {
          rhs -= pairing(lat, zp, w + wp) / double(b + 1) *
                 G(a, b + 1, z, w, z_on, w_on);
        }
        worst = std::max(worst, rel(lhs, rhs));
      }
    }
  }
  return worst;
}

double chk_aybe(const Lattice& lat, const CheckEnv& env,
                std::mt19937_64& rng) {
  double worst = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    const auto pts = sample_separated(lat, rng, 4);
    const cplx z = pts[0], zp = pts[1], w = pts[2], wp = pts[3];
    const cplx t1 = gv(lat, 0, 0, z, w) * gv(lat, 0, 0, zp, w + wp);
    const cplx t2 = gv(lat, 0, 0, zp, wp) * gv(lat, 0, 0, z + zp, w);
    const cplx t3 = gv(lat, 0, 0, -z, wp) * gv(lat, 0, 0, z + zp, w + wp);
    const double scale =
        std::max({1.0, std::abs(t1), std::abs(t2), std::abs(t3)});
    worst = std::max(worst, std::abs(t1 - t2 + t3) / scale);
  }
  return worst;
}

double chk_expansion(const Lattice& lat, const CheckEnv& env,
                     std::mt19937_64& rng) {
  const double A = lat.A;
  const int N = 64;
  const double rho = 0.1;
  // keep the circles of radius rho clear of the lattice
  cplx z0, w0;
  do {
    z0 = sample_point(lat, rng);
  } while (lattice_distance(lat, z0) < 0.25 * lat.shortest);
  do {
    w0 = sample_point(lat, rng);
  } while (lattice_distance(lat, w0) < 0.25 * lat.shortest);

  std::vector<std::vector<cplx>> G(N, std::vector<cplx>(N));
#pragma omp parallel for schedule(dynamic)
  for (int p = 0; p < N; ++p) {
    for (int q = 0; q < N; ++q) {
      const cplx z = rho * std::exp(2.0 * kPi * cplx{0.0, 1.0} *
                                    (double(p) / N));
      const cplx w = rho * std::exp(2.0 * kPi * cplx{0.0, 1.0} *
                                    (double(q) / N));
      G[std::size_t(p)][std::size_t(q)] =
          std::exp(((z + z0) * std::conj(w) - w * std::conj(z0)) / A) *
          gv(lat, 0, 0, z0 + z, -w0 - w);
    }
  }
  double worst = 0.0;
  for (int a = 0; a <= 2; ++a) {
    for (int b = 0; a + b <= 2; ++b) {
      cplx c{};
      for (int p = 0; p < N; ++p) {
        for (int q = 0; q < N; ++q) {
          c += G[std::size_t(p)][std::size_t(q)] *
               std::exp(-2.0 * kPi * cplx{0.0, 1.0} *
                        (double(p * b + q * a) / N));
        }
      }
      c /= double(N) * double(N) * std::pow(rho, a + b);
      const cplx ref = gv(lat, a, b, z0, -w0) / (dfact(a) * dfact(b));
      worst = std::max(worst, rel(c, ref));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// A-infinity checks
// ---------------------------------------------------------------------------

double chk_stasheff(const Lattice& lat, const CheckEnv& env,
                    std::mt19937_64& rng) {
  const AinfConfig cfg = sampled_config(lat, env, rng);
  double worst = 0.0;
  for (int n : {3, 4, 5}) {
    for (const auto& st : all_strings(cfg, n)) {
      worst = std::max(worst, stasheff_residual(cfg, st).relative());
    }
  }
  for (int n : {6, 7, 8}) {
    for (int rep = 0; rep < 20; ++rep) {
      const auto st = random_string(cfg, n, rng);
      worst = std::max(worst, stasheff_residual(cfg, st).relative());
    }
  }
  return worst;
}

double chk_cyclic(const Lattice& lat, const CheckEnv& env,
                  std::mt19937_64& rng) {
  const AinfConfig cfg = sampled_config(lat, env, rng);
  double worst = 0.0;
  for (int n : {2, 3, 4, 5}) {
    for (const auto& st : all_strings(cfg, n + 1)) {
      long degsum = 0;
      for (const auto& e : st) degsum += deg(e);
      if (degsum != n - 1) continue;
      const BasisString head(st.begin(), st.begin() + n);
      cplx lhs{};
      for (const auto& [be, cf] : mu(cfg, head)) {
        lhs += cf * pairing_E(be, st[std::size_t(n)]);
      }
      BasisString rot(st.begin() + 1, st.end());
      rot.push_back(st[0]);
      const BasisString rhead(rot.begin(), rot.begin() + n);
      cplx rhs{};
      for (const auto& [be, cf] : mu(cfg, rhead)) {
        rhs += cf * pairing_E(be, rot[std::size_t(n)]);
      }
      const double sign = ipow_sign(long(n) * (deg(st[0]) + 1));
      worst = std::max(worst, std::abs(lhs - sign * rhs) /
                                  std::max({1.0, std::abs(lhs),
                                            std::abs(rhs)}));
    }
  }
  return worst;
}

double chk_unital(const Lattice& lat, const CheckEnv& env,
                  std::mt19937_64& rng) {
  const AinfConfig cfg = sampled_config(lat, env, rng);
  double worst = 0.0;
  auto is_id = [](const BasisElement& e) {
    return e.kind == BasisElement::Kind::IdP ||
           e.kind == BasisElement::Kind::IdL;
  };
  auto unit_of = [](const ObjectLabel& o) {
    return o.is_P ? BasisElement::IdP(o.idx) : BasisElement::IdL(o.idx);
  };
  for (const auto& x : basis(cfg)) {
    // m2(Id, x) = x and m2(x, Id) = x
    for (const Combination& got :
         {mu(cfg, {unit_of(src(x)), x}), mu(cfg, {x, unit_of(tgt(x))})}) {
      Combination d = got;
      comb_add(d, {{x, 1.0}}, -1.0);
      worst = std::max(worst, comb_max(d));
    }
  }
  // m2 on theta/eta closes onto xi
  for (int i = 0; i < cfg.r(); ++i) {
    for (int j = 0; j < cfg.s(); ++j) {
      Combination d1 = mu(cfg, {BasisElement::Th(i, j), BasisElement::Et(j, i)});
      comb_add(d1, {{BasisElement::XiP(i), 1.0}}, -1.0);
      Combination d2 = mu(cfg, {BasisElement::Et(j, i), BasisElement::Th(i, j)});
      comb_add(d2, {{BasisElement::XiL(j), 1.0}}, -1.0);
      worst = std::max(worst, std::max(comb_max(d1), comb_max(d2)));
    }
  }
  // higher products vanish on strings containing an identity
  for (int n : {3, 4}) {
    for (const auto& st : all_strings(cfg, n)) {
      if (std::none_of(st.begin(), st.end(), is_id)) continue;
      worst = std::max(worst, comb_max(mu(cfg, st)));
    }
  }
  return worst;
}

double chk_perturb_oracle(const Lattice& lat, const CheckEnv& env,
                          std::mt19937_64& rng) {
  const AinfConfig cfg = sampled_config(lat, env, rng);
  double worst = 0.0;
  std::vector<std::array<int, 4>> shapes = {
      {0, 0, 0, 0}, {2, 1, 0, 1}, {1, 1, 1, 1}, {0, 2, 1, 0}};
  std::uniform_int_distribution<int> len(0, 2);
  for (int rep = 0; rep < 4; ++rep) {
    shapes.push_back({len(rng), len(rng), len(rng), len(rng)});
  }
  const std::array<int, 4> idx[] = {
      {0, 0, 1, 1}, {0, 1, 0, 1}, {1, 1, 1, 1}, {0, 0, 0, 0}};
  for (const auto& sh : shapes) {
    for (const auto& [i, j, ip, jp] : idx) {
      const auto st = type1_string(sh[0], sh[1], sh[2], sh[3], i, j, ip, jp);
      const Combination v1 = mu(cfg, st);
      const Combination v2 = perturbation_oracle(cfg, st);
      Combination d = v1;
      comb_add(d, v2, -1.0);
      worst = std::max(worst,
                       comb_max(d) / std::max(1.0, comb_max(v1)));
    }
  }
  return worst;
}

double chk_maurer_cartan(const Lattice& lat, const CheckEnv& env,
                         std::mt19937_64& rng) {
  const AinfConfig cfg = sampled_config(lat, env, rng);
  const Cochain m = mu_cochain(9);
  double worst = 0.0;
  auto probe = [&](const BasisString& st) {
    const Combination b = bracket_eval(m, m, cfg, st);
    worst = std::max(worst, comb_max(b));
  };
  for (int n : {2, 3, 4}) {
    for (const auto& st : all_strings(cfg, n)) probe(st);
  }
  for (int n : {5, 6}) {
    for (int rep = 0; rep < 25; ++rep) probe(random_string(cfg, n, rng));
  }
  return worst;
}

double chk_variation(const Lattice& lat, const CheckEnv& env,
                     std::mt19937_64& rng) {
  const AinfConfig cfg = sampled_config(lat, env, rng);
  std::uniform_int_distribution<int> pick2(0, 1);
  auto rand_shape = [&](int rest, std::array<int, 4>& sh) {
    std::uniform_int_distribution<int> p(0, rest);
    sh[0] = p(rng);
    std::uniform_int_distribution<int> p1(0, rest - sh[0]);
    sh[1] = p1(rng);
    std::uniform_int_distribution<int> p2(0, rest - sh[0] - sh[1]);
    sh[2] = p2(rng);
    sh[3] = rest - sh[0] - sh[1] - sh[2];
  };
  std::vector<BasisString> strings;
  for (int k = 0; k < 3; ++k) {
    std::uniform_int_distribution<int> nlen(4, 6);
    std::array<int, 4> sh{};
    rand_shape(nlen(rng) - 3, sh);
    strings.push_back(type1_string(sh[0], sh[1], sh[2], sh[3], pick2(rng),
                                   pick2(rng), pick2(rng), pick2(rng)));
  }
  for (int k = 0; k < 2; ++k) {
    std::uniform_int_distribution<int> nlen(4, 6);
    std::array<int, 4> sh{};
    rand_shape(nlen(rng) - 3, sh);
    strings.push_back(type2_string(sh[0], sh[1], sh[2], sh[3], pick2(rng),
                                   pick2(rng), pick2(rng), pick2(rng)));
  }
  // coincident-index strata
  strings.push_back({BasisElement::Th(0, 0), BasisElement::XiL(0),
                     BasisElement::Et(0, 0), BasisElement::Th(0, 0)});
  strings.push_back({BasisElement::XiP(1), BasisElement::Th(1, 0),
                     BasisElement::Et(0, 1), BasisElement::XiP(1),
                     BasisElement::Th(1, 1)});
  double worst = 0.0;
  for (const auto& st : strings) {
    for (int idx = 0; idx < 2; ++idx) {
      using K = VariationSpec::Kind;
      // plain derivatives, all four directions
      worst = std::max(worst,
                       variation_residual(cfg, {K::Z, idx, false}, st));
      worst = std::max(worst,
                       variation_residual(cfg, {K::Z, idx, true}, st));
      worst = std::max(worst,
                       variation_residual(cfg, {K::W, idx, false}, st));
      worst = std::max(worst,
                       variation_residual(cfg, {K::W, idx, true}, st));
      // covariant / insertion forms
      worst = std::max(worst,
                       variation_residual(cfg, {K::Z, idx, false}, st, 1e-5,
                                          VariationForm::Nabla));
      worst = std::max(worst,
                       variation_residual(cfg, {K::W, idx, false}, st, 1e-5,
                                          VariationForm::Nabla));
      worst = std::max(worst,
                       variation_residual(cfg, {K::W, idx, true}, st, 1e-5,
                                          VariationForm::Nabla));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// symbolic-reduction checks
// ---------------------------------------------------------------------------

std::map<Generator, cplx> symrec_env(const Lattice& lat, cplx z, cplx w) {
  std::map<Generator, cplx> env;
  env[Generator::g00()] = gv(lat, 0, 0, z, w);
  env[Generator::g01()] = gv(lat, 0, 1, z, w);
  for (int b = 0; b <= 2; ++b) {
    env[Generator::zb(b)] = gv(lat, 0, b, z, 0.0, false, true);
    env[Generator::wb(b)] = gv(lat, 0, b, w, 0.0, false, true);
  }
  for (int m = 0; m <= 9; ++m) {
    for (int n = 0; n <= 9; ++n) {
      if ((m + n) % 2 == 0 || m + n > 11) continue;
      env[Generator::c(m, n)] = gv(lat, m, n, 0.0, 0.0, true, true);
    }
  }
  return env;
}

double chk_corb(const Lattice& lat, const CheckEnv& env,
                std::mt19937_64& rng) {
  double worst = 0.0;
  for (int rep = 0; rep < 2; ++rep) {
    const auto pts = sample_separated(lat, rng, 2);
    const cplx z = pts[0], w = pts[1];
    const auto genv = symrec_env(lat, z, w);
    for (int a = 0; a <= 3; ++a) {
      for (int b = 0; a + b <= 5; ++b) {
        const cplx got = eval_poly(reduce_gab(a, b), genv);
        worst = std::max(worst, rel(got, gv(lat, a, b, z, w)));
        const cplx got1 = eval_poly(reduce_onevar(a, b, true), genv);
        worst = std::max(worst,
                         rel(got1, gv(lat, a, b, z, 0.0, false, true)));
      }
    }
  }
  return worst;
}

double chk_constants(const Lattice& lat, const CheckEnv& env,
                     std::mt19937_64& rng) {
  double worst = 0.0;
  auto C = [&](int m, int n) { return gv(lat, m, n, 0.0, 0.0, true, true); };
  worst = std::max(worst, rel(C(0, 1), eisenstein2_star(lat)));
  worst = std::max(worst, rel(C(0, 3), 6.0 * eisenstein_q(lat, 4)));
  worst = std::max(worst, rel(C(0, 5), 120.0 * eisenstein_q(lat, 6)));
  // parity: g*_{m,n}(0,0) vanishes for even m+n
  for (auto [m, n] : {std::pair{1, 1}, {0, 2}, {2, 2}, {1, 3}}) {
    worst = std::max(worst, std::abs(C(m, n)));
  }
  return worst;
}

using CheckFn = double (*)(const Lattice&, const CheckEnv&, std::mt19937_64&);

CheckFn dispatch(CheckId id) {
  switch (id) {
    case CheckId::ThmC: return chk_thm_c;
    case CheckId::FuncEq: return chk_func_eq;
    case CheckId::DerivE: return chk_deriv_e;
    case CheckId::DerivG: return chk_deriv_g;
    case CheckId::Limits: return chk_limits;
    case CheckId::Quasi: return chk_quasi;
    case CheckId::ZetaId: return chk_zeta_id;
    case CheckId::KronId: return chk_kron_id;
    case CheckId::EFLink: return chk_e_f_link;
    case CheckId::ClassicalX: return chk_classical_x;
    case CheckId::Quad: return chk_quad;
    case CheckId::Aybe: return chk_aybe;
    case CheckId::Expansion: return chk_expansion;
    case CheckId::Stasheff: return chk_stasheff;
    case CheckId::Cyclic: return chk_cyclic;
    case CheckId::Unital: return chk_unital;
    case CheckId::PerturbOracle: return chk_perturb_oracle;
    case CheckId::MaurerCartan: return chk_maurer_cartan;
    case CheckId::Variation: return chk_variation;
    case CheckId::Corb: return chk_corb;
    case CheckId::Constants: return chk_constants;
  }
  throw std::invalid_argument("unknown check id");
}

}  // namespace

const char* check_name(CheckId id) { return meta(id).name; }

std::optional<CheckId> check_from_name(const std::string& name) {
  for (const auto& m : kMeta) {
    if (name == m.name) return m.id;
  }
  return std::nullopt;
}

const std::vector<CheckId>& all_check_ids() {
  static const std::vector<CheckId> ids = [] {
    std::vector<CheckId> v;
    for (const auto& m : kMeta) v.push_back(m.id);
    return v;
  }();
  return ids;
}

double default_threshold(CheckId id) { return meta(id).threshold; }

const std::vector<cplx>& default_taus() {
  static const std::vector<cplx> taus = {
      {0.0, 1.0}, {0.5, 1.0}, {-0.25, 1.1}};
  return taus;
}

const std::vector<std::uint64_t>& default_seeds() {
  static const std::vector<std::uint64_t> seeds = {1, 2, 3};
  return seeds;
}

CheckReport run_check(CheckId id, const CheckEnv& env) {
  const auto t0 = std::chrono::steady_clock::now();
  const Lattice lat = lattice_from_tau(env.tau);
  std::mt19937_64 rng(env.seed * 0x9e3779b97f4a7c15ull + env.seed);
  CheckReport rep;
  rep.check = check_name(id);
  rep.tau = env.tau;
  rep.seed = env.seed;
  rep.threshold = env.tol.value_or(default_threshold(id));
  rep.residual = dispatch(id)(lat, env, rng);
  rep.pass = rep.residual < rep.threshold;
  rep.elapsed_ms = long(std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count());
  return rep;
}

std::vector<CheckReport> run_suite(const std::vector<CheckId>& checks,
                                   const std::vector<cplx>& taus,
                                   const std::vector<std::uint64_t>& seeds) {
  std::vector<CheckReport> out;
  for (CheckId id : checks) {
    for (const cplx& tau : taus) {
      for (std::uint64_t seed : seeds) {
        CheckEnv env;
        env.tau = tau;
        env.seed = seed;
        out.push_back(run_check(id, env));
      }
    }
  }
  return out;
}

namespace {

nlohmann::ordered_json report_json(const CheckReport& r, bool stable) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["tau"] = {r.tau.real(), r.tau.imag()};
  j["seed"] = r.seed;
  j["residual"] = r.residual;
  j["threshold"] = r.threshold;
  j["pass"] = r.pass;
  j["elapsed_ms"] = stable ? 0L : r.elapsed_ms;
  return j;
}

}  // namespace

std::string report_to_json(const CheckReport& r, bool stable) {
  return report_json(r, stable).dump();
}

std::string reports_to_json(const std::vector<CheckReport>& rs, bool stable) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rs) arr.push_back(report_json(r, stable));
  return arr.dump(2);
}

std::string emit_table(const TableSpec& spec) {
  const Lattice lat = lattice_from_tau(spec.tau);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::ostringstream csv;

  auto push = [&](int a, int b, const EKValue& v) {
    nlohmann::ordered_json j;
    j["a"] = a;
    j["b"] = b;
    j["value"] = {v.value.real(), v.value.imag()};
    j["radius"] = v.radius_used;
    j["tail_bound"] = v.tail_bound;
    rows.push_back(j);
    csv << a << "," << b << "," << v.value.real() << "," << v.value.imag()
        << "," << v.radius_used << "," << v.tail_bound << "\n";
  };

  csv.precision(17);
  if (spec.kind == "ek") {
    csv << "a,b,re,im,radius,tail_bound\n";
    for (int a = 0; a <= spec.amax; ++a) {
      for (int b = 1; b <= spec.bmax; ++b) {
        push(a, b, ek(a, b, spec.z, spec.w, lat));
      }
    }
  } else if (spec.kind == "gstar") {
    csv << "a,b,re,im,radius,tail_bound\n";
    for (int a = 0; a <= spec.amax; ++a) {
      for (int b = 0; b <= spec.bmax; ++b) {
        push(a, b, g_star(a, b, spec.z, spec.w, lat));
      }
    }
  } else if (spec.kind == "eisenstein") {
    csv << "two_k,re,im\n";
    for (int two_k = 4; two_k <= 2 * std::max(2, spec.bmax); two_k += 2) {
      const cplx v = eisenstein_q(lat, two_k);
      nlohmann::ordered_json j;
      j["two_k"] = two_k;
      j["value"] = {v.real(), v.imag()};
      rows.push_back(j);
      csv << two_k << "," << v.real() << "," << v.imag() << "\n";
    }
  } else {
    throw std::invalid_argument("emit_table: unknown kind " + spec.kind);
  }

  if (spec.format == "json") return rows.dump(2);
  if (spec.format == "csv") return csv.str();
  throw std::invalid_argument("emit_table: unknown format " + spec.format);
}

}  // namespace ekkit
