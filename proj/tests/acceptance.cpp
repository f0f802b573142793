// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "ekkit/ainfinity.hpp"
#include "ekkit/checks.hpp"
#include "ekkit/classical.hpp"
#include "ekkit/ekseries.hpp"
#include "ekkit/lattice.hpp"
#include "ekkit/sampling.hpp"
#include "ekkit/symrec.hpp"

using namespace ekkit;

namespace {

int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void report(int n, const char* what, double worst, double tol, double secs,
            double budget) {
  const bool ok = worst < tol && secs < budget;
  if (!ok) ++g_failures;
  std::printf("%s %2d: %-58s worst %.3g < %.0e, %5.1fs < %.0fs\n",
              ok ? "PASS" : "FAIL", n, what, worst, tol, secs, budget);
  std::fflush(stdout);
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

StratifiedPoint sp(const Lattice& lat, cplx v, bool on) {
  return on ? lattice_origin() : classify(lat, v);
}

cplx gv(const Lattice& lat, int a, int b, cplx z, cplx w, bool z_on = false,
        bool w_on = false, Variant variant = Variant::Plain) {
  return g_star(a, b, sp(lat, z, z_on), sp(lat, w, w_on), lat, {}, variant)
      .value;
}

cplx fv(const Lattice& lat, int m, int n, cplx z, cplx w) {
  return f_star(m, n, classify(lat, z), classify(lat, w), lat).value;
}

cplx ekv(const Lattice& lat, int a, int b, cplx z, cplx w, bool z_on = false,
         bool w_on = false) {
  return ek(a, b, sp(lat, z, z_on), sp(lat, w, w_on), lat).value;
}

template <class F>
cplx wirt(F&& f, cplx z0, bool bar, double h = 1e-5) {
  const cplx a = f(z0 + h) - f(z0 - h);
  const cplx b = f(z0 + cplx{0.0, h}) - f(z0 - cplx{0.0, h});
  const cplx is = bar ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
  return (a + is * b) / (4.0 * h);
}

cplx neville0(const std::vector<double>& t, std::vector<cplx> y) {
  const int n = int(y.size());
  for (int lev = 1; lev < n; ++lev) {
    for (int i = 0; i + lev < n; ++i) {
      y[i] = (-t[i + lev] * y[i] + t[i] * y[i + 1]) / (t[i] - t[i + lev]);
    }
  }
  return y[0];
}

double rel(cplx got, cplx want) {
  return std::abs(got - want) / std::max({1.0, std::abs(got), std::abs(want)});
}

const std::vector<cplx>& taus() { return default_taus(); }

std::mt19937_64 seeded(std::uint64_t s) {
  return std::mt19937_64(s * 0x9e3779b97f4a7c15ull + s);
}

AinfConfig sample_cfg(const Lattice& lat, std::mt19937_64& rng) {
  const auto pts = sample_separated(lat, rng, 4);
  return AinfConfig(lat, {pts[0], pts[1]}, {pts[2], pts[3]});
}

// 1. Theorem C vs direct Lerch sums
void crit1() {
  Timer tm;
  double worst = 0.0;
  const std::pair<int, int> pairs[] = {{0, 4}, {0, 5}, {1, 5}, {2, 6}};
  for (std::size_t ti = 0; ti < taus().size(); ++ti) {
    const Lattice lat = lattice_from_tau(taus()[ti]);
    auto rng = seeded(ti + 1);
    for (int rep = 0; rep < 4; ++rep) {
      const auto pts = sample_separated(lat, rng, 2);
      for (auto [a, b] : pairs) {
        const cplx v1 = ekv(lat, a, b, pts[0], pts[1]);
        const cplx v2 = ek_direct(a, b, classify(lat, pts[0]),
                                  classify(lat, pts[1]), lat, 80.0)
                            .value;
        worst = std::max(worst, std::abs(v1 - v2) / std::max(1.0, std::abs(v1)));
      }
    }
  }
  report(1, "Theorem-C series vs direct Lerch sums", worst, 1e-3,
         tm.seconds(), 60.0);
}

// 2. functional equation
void crit2() {
  Timer tm;
  double worst = 0.0;
  for (std::size_t ti = 0; ti < taus().size(); ++ti) {
    const Lattice lat = lattice_from_tau(taus()[ti]);
    const double A = lat.A;
    auto rng = seeded(ti + 11);
    for (int rep = 0; rep < 4; ++rep) {
      const auto pts = sample_separated(lat, rng, 2);
      for (int a = 0; a <= 4; ++a) {
        for (int b = 1; b <= 5; ++b) {
          const cplx lhs = dfact(b - 1) * ekv(lat, a, b, pts[0], pts[1]);
          const cplx rhs = std::pow(A, a - b + 1) * dfact(a) *
                           ekv(lat, b - 1, a + 1, pts[1], pts[0]) *
                           pairing(lat, pts[1], pts[0]);
          worst = std::max(worst, rel(lhs, rhs));
        }
      }
    }
  }
  report(2, "functional equation of e*_{a,b}", worst, 1e-9, tm.seconds(),
         10.0);
}

// 3. Kronecker / zeta anchors
void crit3() {
  Timer tm;
  double worst = 0.0;
  for (std::size_t ti = 0; ti < taus().size(); ++ti) {
    const cplx tau = taus()[ti];
    const Lattice lat = lattice_from_tau(tau);
    const double A = lat.A;
    auto rng = seeded(ti + 21);
    std::uniform_real_distribution<double> ub(0.1, 0.4), ua(-0.4, 0.4);
    for (int rep = 0; rep < 3; ++rep) {
      const cplx z = ua(rng) + ub(rng) * tau;
      const cplx w = ua(rng) + ub(rng) * tau;
      // e*_{0,1}(z,0) = Z(z)
      worst = std::max(worst, rel(ekv(lat, 0, 1, z, 0.0, false, true),
                                  Z_fn(z, lat)));
      // e*_{0,1}(z,w) = 2 pi i exp(A^{-1} z (w - wbar)) F(z,w)
      worst = std::max(
          worst, rel(ekv(lat, 0, 1, z, w),
                     2.0 * kPi * cplx{0.0, 1.0} *
                         std::exp(z * (w - std::conj(w)) / A) *
                         kronecker_F(z, w, tau)));
      // gtilde*_{0,0}(z,-w) = -2 pi i F(z,w)
      worst = std::max(worst,
                       rel(gv(lat, 0, 0, z, -w, false, false, Variant::Tilde),
                           -2.0 * kPi * cplx{0.0, 1.0} *
                               kronecker_F(z, w, tau)));
    }
  }
  report(3, "Kronecker-F and Z(z) anchors", worst, 1e-8, tm.seconds(), 10.0);
}

// 4. derivative suite
void crit4() {
  Timer tm;
  double worst = 0.0;
  for (std::size_t ti = 0; ti < taus().size(); ++ti) {
    const Lattice lat = lattice_from_tau(taus()[ti]);
    const double A = lat.A;
    auto rng = seeded(ti + 31);
    for (int rep = 0; rep < 2; ++rep) {
      // FD truncation error scales with high-order pole terms, so keep the
      // sample points well inside the cell
      const cplx z = sample_point_far(lat, rng), w = sample_point_far(lat, rng);
      for (int a = 0; a <= 3; ++a) {
        for (int b = 0; b <= 3; ++b) {
          // e*_{a,b} derivatives (b >= 1)
          if (b >= 1) {
            auto ez = [&](cplx zz) { return ekv(lat, a, b, zz, w); };
            auto ew = [&](cplx ww) { return ekv(lat, a, b, z, ww); };
            worst = std::max(worst, rel(wirt(ez, z, false),
                                        -double(b) * ekv(lat, a, b + 1, z, w)));
            worst = std::max(
                worst, rel(wirt(ew, w, false),
                           (-ekv(lat, a + 1, b, z, w) +
                            std::conj(z) * ekv(lat, a, b, z, w)) /
                               A));
          }
          // f*_{a,b} derivatives, der-lem (i)
          auto fz = [&](cplx zz) { return fv(lat, a, b, zz, w); };
          auto fw = [&](cplx ww) { return fv(lat, a, b, z, ww); };
          worst = std::max(worst,
                           rel(wirt(fz, z, false),
                               -fv(lat, a + 1, b, z, w) -
                                   double(b) * fv(lat, a, b + 1, z, w)));
          worst = std::max(worst,
                           rel(wirt(fw, w, false),
                               fv(lat, a + 1, b, z, w) -
                                   std::conj(z) / A * fv(lat, a, b, z, w)));
          if (b >= 1) {
            worst = std::max(
                worst,
                rel(A * wirt(fz, z, true),
                    double(a) * (a > 0 ? fv(lat, a - 1, b, z, w) : 0.0) -
                        fv(lat, a, b - 1, z, w)));
            worst = std::max(worst,
                             rel(A * wirt(fw, w, true),
                                 -fv(lat, a, b - 1, z, w) +
                                     z * fv(lat, a, b, z, w)));
          }
          // g*_{a,b} derivatives, der-lem (ii),(iv),(v)
          auto gz = [&](cplx zz) { return gv(lat, a, b, zz, w); };
          auto gw = [&](cplx ww) { return gv(lat, a, b, z, ww); };
          worst = std::max(worst, rel(wirt(gz, z, false),
                                      gv(lat, a, b + 1, z, w)));
          worst = std::max(
              worst, rel(A * wirt(gz, z, true),
                         a > 0 ? -double(a) * gv(lat, a - 1, b, z, w) : cplx{}));
          worst = std::max(worst,
                           rel(wirt(gw, w, false),
                               -gv(lat, a + 1, b, z, w) -
                                   std::conj(z) / A * gv(lat, a, b, z, w)));
        }
      }
    }
  }
  report(4, "derivative suite (e*, f*, g*)", worst, 1e-5, tm.seconds(), 30.0);
}

// 5. limit suite
void crit5() {
  Timer tm;
  double worst = 0.0;
  std::vector<double> ts;
  for (int k = 0; k < 5; ++k) ts.push_back(0.1 / double(1 << k));
  const cplx dirv{0.3, 0.4};
  for (std::size_t ti = 0; ti < taus().size(); ++ti) {
    const Lattice lat = lattice_from_tau(taus()[ti]);
    const double A = lat.A;
    auto rng = seeded(ti + 41);
    const cplx w = sample_point(lat, rng);
    for (int a = 0; a <= 2; ++a) {
      for (int b = 0; b <= 2; ++b) {
        std::vector<cplx> es, gs;
        for (double t : ts) {
          const cplx z = t * dirv;
          es.push_back(ekv(lat, a, b + 1, z, w) -
                       std::pow(std::conj(z), a) / std::pow(z, b + 1));
          gs.push_back(gv(lat, a, b, z, w) +
                       ipow_sign(a + b) * std::pow(A, -a) * dfact(b) *
                           std::pow(std::conj(z), a) / std::pow(z, b + 1));
        }
        worst = std::max(worst, rel(neville0(ts, es),
                                    ekv(lat, a, b + 1, 0.0, w, true)));
        worst = std::max(worst, rel(neville0(ts, gs),
                                    gv(lat, a, b, 0.0, w, true)));
      }
    }
  }
  report(5, "stratum limits at z = 0 (extrapolated)", worst, 1e-5,
         tm.seconds(), 10.0);
}

// 6. quadratic identity + AYBE specialization
void crit6() {
  Timer tm;
  double worst_quad = 0.0, worst_aybe = 0.0;
  for (std::size_t ti = 0; ti < taus().size(); ++ti) {
    const Lattice lat = lattice_from_tau(taus()[ti]);
    auto rng = seeded(ti + 51);
    const auto pts = sample_separated(lat, rng, 4);
    const cplx zg = pts[0], zpg = pts[1], wg = pts[2], wpg = pts[3];
    for (int a = 0; a <= 3; ++a) {
      for (int b = 0; b <= 3; ++b) {
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
            lhs += dbinom(a, a1) * G(a - a1, 0, z, w, z_on, w_on) *
                   G(a1, b, zp, w + wp, zp_on, w_on && wp_on);
          }
          for (int b1 = 0; b1 <= b; ++b1) {
            lhs -= dbinom(b, b1) * G(0, b1, zp, wp, zp_on, wp_on) *
                   G(a, b - b1, z + zp, w, z_on && zp_on, w_on);
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
            rhs -= pairing(lat, z, w) *
                   G(a, b + 1, zp, w + wp, zp_on, w_on && wp_on);
          }
          if (wp_on) rhs += G(a + 1, b, z + zp, w, z_on && zp_on, w_on);
          if (zp_on) {
            rhs -= pairing(lat, zp, w + wp) / double(b + 1) *
                   G(a, b + 1, z, w, z_on, w_on);
          }
          worst_quad = std::max(
              worst_quad, std::abs(lhs - rhs) /
                              std::max({1.0, std::abs(lhs), std::abs(rhs)}));
        }
      }
    }
    for (int rep = 0; rep < 5; ++rep) {
      const auto q = sample_separated(lat, rng, 4);
      const cplx t1 = gv(lat, 0, 0, q[0], q[2]) * gv(lat, 0, 0, q[1], q[2] + q[3]);
      const cplx t2 = gv(lat, 0, 0, q[1], q[3]) * gv(lat, 0, 0, q[0] + q[1], q[2]);
      const cplx t3 = gv(lat, 0, 0, -q[0], q[3]) *
                      gv(lat, 0, 0, q[0] + q[1], q[2] + q[3]);
      worst_aybe = std::max(worst_aybe,
                            std::abs(t1 - t2 + t3) /
                                std::max({1.0, std::abs(t1), std::abs(t2)}));
    }
  }
  const bool scaled_ok = worst_aybe < 1e-10;
  report(6, "quadratic identity, 16 stratum masks + AYBE",
         std::max(worst_quad, scaled_ok ? 0.0 : 1.0), 1e-8, tm.seconds(),
         60.0);
}

// 7. Stasheff relations + [m,m] = 0
void crit7() {
  Timer tm;
  double worst = 0.0, worst_mm = 0.0;
  int randoms = 0;
  for (std::size_t ti = 0; ti < taus().size(); ++ti) {
    const Lattice lat = lattice_from_tau(taus()[ti]);
    auto rng = seeded(ti + 61);
    const AinfConfig cfg = sample_cfg(lat, rng);
    for (int n : {3, 4, 5}) {
      for (const auto& st : all_strings(cfg, n)) {
        worst = std::max(worst, stasheff_residual(cfg, st).relative());
      }
    }
    for (int n : {6, 7, 8}) {
      for (int rep = 0; rep < 56; ++rep) {
        worst = std::max(
            worst,
            stasheff_residual(cfg, random_string(cfg, n, rng)).relative());
        ++randoms;
      }
    }
    const Cochain m = mu_cochain(9);
    for (int n : {2, 3, 4}) {
      for (const auto& st : all_strings(cfg, n)) {
        worst_mm = std::max(worst_mm, comb_max(bracket_eval(m, m, cfg, st)));
      }
    }
  }
  char buf[80];
  std::snprintf(buf, sizeof buf,
                "Stasheff len<=5 exhaustive + %d random + [m,m]", randoms);
  report(7, buf, std::max(worst, worst_mm), 1e-8, tm.seconds(), 120.0);
}

// 8. cyclicity
void crit8() {
  Timer tm;
  double worst = 0.0;
  for (std::size_t ti = 0; ti < taus().size(); ++ti) {
    const Lattice lat = lattice_from_tau(taus()[ti]);
    auto rng = seeded(ti + 71);
    const AinfConfig cfg = sample_cfg(lat, rng);
    for (int n : {2, 3, 4, 5, 6}) {
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
        worst = std::max(worst,
                         std::abs(lhs - sign * rhs) /
                             std::max({1.0, std::abs(lhs), std::abs(rhs)}));
      }
    }
  }
  report(8, "cyclic pairing symmetry, strings len <= 7", worst, 1e-9,
         tm.seconds(), 30.0);
}

// 9. mu vs perturbation oracle
void crit9() {
  Timer tm;
  double worst = 0.0;
  for (std::size_t ti = 0; ti < taus().size(); ++ti) {
    const Lattice lat = lattice_from_tau(taus()[ti]);
    auto rng = seeded(ti + 81);
    const AinfConfig cfg = sample_cfg(lat, rng);
    const std::array<int, 4> idx[] = {
        {0, 0, 1, 1}, {0, 1, 0, 1}, {1, 1, 1, 1}, {0, 0, 0, 0}};
    for (int a = 0; a <= 3; ++a) {
      for (int b = 0; b <= 3; ++b) {
        for (int c = 0; c <= 3; ++c) {
          for (int d = 0; d <= 3; ++d) {
            for (const auto& [i, j, ip, jp] : idx) {
              const auto st = type1_string(a, b, c, d, i, j, ip, jp);
              const Combination v1 = mu(cfg, st);
              const Combination v2 = perturbation_oracle(cfg, st);
              Combination diff = v1;
              comb_add(diff, v2, -1.0);
              worst = std::max(worst,
                               comb_max(diff) / std::max(1.0, comb_max(v1)));
            }
          }
        }
      }
    }
  }
  report(9, "mu vs perturbation oracle, a,b,c,d <= 3", worst, 1e-9,
         tm.seconds(), 30.0);
}

// 10. Laurent/Cauchy expansion
void crit10() {
  Timer tm;
  double worst = 0.0;
  const int N = 64;
  const double rho = 0.15;
  SeriesParams spar;
  spar.tol = 1e-13;
  for (std::size_t ti = 0; ti < taus().size(); ++ti) {
    const Lattice lat = lattice_from_tau(taus()[ti]);
    const double A = lat.A;
    auto rng = seeded(ti + 91);
    cplx z0, w0;
    do {
      z0 = sample_point(lat, rng);
    } while (lattice_distance(lat, z0) < 0.3 * lat.shortest);
    do {
      w0 = sample_point(lat, rng);
    } while (lattice_distance(lat, w0) < 0.3 * lat.shortest);
    std::vector<std::vector<cplx>> G(N, std::vector<cplx>(N));
#pragma omp parallel for schedule(dynamic)
    for (int p = 0; p < N; ++p) {
      for (int q = 0; q < N; ++q) {
        const cplx z = rho * std::exp(2.0 * kPi * cplx{0.0, 1.0} *
                                      (double(p) / N));
        const cplx w = rho * std::exp(2.0 * kPi * cplx{0.0, 1.0} *
                                      (double(q) / N));
        G[p][q] = std::exp(((z + z0) * std::conj(w) - w * std::conj(z0)) / A) *
                  g_star(0, 0, classify(lat, z0 + z), classify(lat, -w0 - w),
                         lat, spar)
                      .value;
      }
    }
    for (int a = 0; a + 0 <= 4; ++a) {
      for (int b = 0; a + b <= 4; ++b) {
        cplx c{};
        for (int p = 0; p < N; ++p) {
          for (int q = 0; q < N; ++q) {
            c += G[p][q] * std::exp(-2.0 * kPi * cplx{0.0, 1.0} *
                                    (double(p * b + q * a) / N));
          }
        }
        c /= double(N) * double(N) * std::pow(rho, a + b);
        const cplx ref = gv(lat, a, b, z0, -w0) / (dfact(a) * dfact(b));
        worst = std::max(worst, rel(c, ref));
      }
    }
  }
  report(10, "Cauchy-extracted Taylor coefficients, a+b <= 4", worst, 1e-8,
         tm.seconds(), 20.0);
}

// 11. variation equations
void crit11() {
  Timer tm;
  double worst = 0.0;
  for (std::size_t ti = 0; ti < taus().size(); ++ti) {
    const Lattice lat = lattice_from_tau(taus()[ti]);
    auto rng = seeded(ti + 101);
    const AinfConfig cfg = sample_cfg(lat, rng);
    std::uniform_int_distribution<int> pick2(0, 1);
    std::vector<BasisString> strings;
    for (int k = 0; k < 4; ++k) {
      std::uniform_int_distribution<int> nlen(4, 6);
      const int rest = nlen(rng) - 3;
      std::uniform_int_distribution<int> p(0, rest);
      const int a = p(rng);
      std::uniform_int_distribution<int> p1(0, rest - a);
      const int b = p1(rng);
      std::uniform_int_distribution<int> p2(0, rest - a - b);
      const int c = p2(rng);
      strings.push_back(type1_string(a, b, c, rest - a - b - c, pick2(rng),
                                     pick2(rng), pick2(rng), pick2(rng)));
    }
    strings.push_back({BasisElement::Th(0, 0), BasisElement::XiL(0),
                       BasisElement::Et(0, 0), BasisElement::Th(0, 0)});
    strings.push_back({BasisElement::XiP(1), BasisElement::Th(1, 0),
                       BasisElement::Et(0, 1), BasisElement::XiP(1),
                       BasisElement::Th(1, 1)});
    for (const auto& st : strings) {
      for (int idx = 0; idx < 2; ++idx) {
        using K = VariationSpec::Kind;
        for (bool conj : {false, true}) {
          worst = std::max(worst,
                           variation_residual(cfg, {K::Z, idx, conj}, st));
          worst = std::max(worst,
                           variation_residual(cfg, {K::W, idx, conj}, st));
        }
        worst = std::max(worst, variation_residual(cfg, {K::Z, idx, false},
                                                   st, 1e-5,
                                                   VariationForm::Nabla));
        worst = std::max(worst, variation_residual(cfg, {K::W, idx, false},
                                                   st, 1e-5,
                                                   VariationForm::Nabla));
        worst = std::max(worst, variation_residual(cfg, {K::W, idx, true},
                                                   st, 1e-5,
                                                   VariationForm::Nabla));
      }
    }
  }
  report(11, "variation equations (raw + nabla), type-I len <= 6", worst,
         1e-5, tm.seconds(), 120.0);
}

// 12. Corollary-B exact reductions
void crit12() {
  Timer tm;
  double worst = 0.0;
  for (std::size_t ti = 0; ti < taus().size(); ++ti) {
    const Lattice lat = lattice_from_tau(taus()[ti]);
    auto rng = seeded(ti + 111);
    std::map<Generator, cplx> base;
    for (int m = 0; m <= 9; ++m) {
      for (int n = 0; n <= 9; ++n) {
        if ((m + n) % 2 == 0 || m + n > 13) continue;
        base[Generator::c(m, n)] = gv(lat, m, n, 0.0, 0.0, true, true);
      }
    }
    worst = std::max(worst, rel(base[Generator::c(0, 1)],
                                eisenstein2_star(lat)) * 0.1);
    for (int rep = 0; rep < 5; ++rep) {
      const auto pts = sample_separated(lat, rng, 2);
      const cplx z = pts[0], w = pts[1];
      auto env = base;
      env[Generator::g00()] = gv(lat, 0, 0, z, w);
      env[Generator::g01()] = gv(lat, 0, 1, z, w);
      for (int b = 0; b <= 2; ++b) {
        env[Generator::zb(b)] = gv(lat, 0, b, z, 0.0, false, true);
        env[Generator::wb(b)] = gv(lat, 0, b, w, 0.0, false, true);
      }
      for (int a = 0; a <= 6; ++a) {
        for (int b = 0; a + b <= 6; ++b) {
          worst = std::max(worst, rel(eval_poly(reduce_gab(a, b), env),
                                      gv(lat, a, b, z, w)));
        }
      }
    }
  }
  report(12, "exact polynomial reductions, a+b <= 6, 5 points/tau", worst,
         1e-9, tm.seconds(), 60.0);
}

// 13. classical oracles
void crit13() {
  Timer tm;
  double worst = 0.0;
  // symmetric-lattice vanishing
  worst = std::max(worst,
                   std::abs(eisenstein_q(lattice_from_tau({0.0, 1.0}), 6)));
  worst = std::max(
      worst, std::abs(eisenstein_q(
                 lattice_from_tau({-0.5, std::sqrt(3.0) / 2.0}), 4)));
  double worst_loose = 0.0;
  for (std::size_t ti = 0; ti < taus().size(); ++ti) {
    const Lattice lat = lattice_from_tau(taus()[ti]);
    auto rng = seeded(ti + 121);
    const auto eta = period_eta(lat);
    worst = std::max(worst,
                     std::abs(eta.eta1 * lat.omega2 - eta.eta2 * lat.omega1 -
                              2.0 * kPi * cplx{0.0, 1.0}));
    const cplx g2 = 60.0 * eisenstein_q(lat, 4);
    const cplx g3 = 140.0 * eisenstein_q(lat, 6);
    const cplx z = sample_point(lat, rng);
    const cplx p = weier_p(z, lat), pp = weier_p(z, lat, 1);
    worst_loose = std::max(worst_loose,
                           rel(pp * pp, 4.0 * p * p * p - g2 * p - g3));
  }
  report(13, "classical oracles (e6(i), e4(omega), Legendre, wp ODE)",
         std::max(worst, worst_loose * 1e-3), 1e-10, tm.seconds(), 20.0);
}

// 14. full suite
void crit14() {
  Timer tm;
  const auto reports = run_suite(all_check_ids());
  int fails = 0;
  for (const auto& r : reports) {
    if (!r.pass) ++fails;
  }
  const double secs = tm.seconds();
  const bool ok = fails == 0 && secs < 300.0;
  if (!ok) ++g_failures;
  std::printf("%s 14: verify --all (%zu reports, %d failures)              "
              "%5.1fs < 300s\n",
              ok ? "PASS" : "FAIL", reports.size(), fails, secs);
}

}  // namespace

int main() {
  apply_thread_env();
  crit1();
  crit2();
  crit3();
  crit4();
  crit5();
  crit6();
  crit7();
  crit8();
  crit9();
  crit10();
  crit11();
  crit12();
  crit13();
  crit14();
  if (g_failures == 0) {
    std::printf("acceptance: all 14 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
