#include "ekkit/classical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace ekkit {
namespace {

cplx normalized_tau(const Lattice& lat) { return lat.omega2 / lat.omega1; }

cplx nome(const Lattice& lat) {
  return std::exp(cplx{0.0, 2.0 * kPi} * normalized_tau(lat));
}

/// eta1 of the normalized lattice Z + Z*tau via the sigma_1 q-series.
cplx eta1_normalized(const Lattice& lat) {
  const cplx q = nome(lat);
  cplx s{0.0, 0.0};
  cplx qn{1.0, 0.0};
  for (int n = 1; n <= 4000; ++n) {
    qn *= q;
    const cplx term = double(n) * qn / (1.0 - qn);
    s += term;
    if (std::abs(term) < 1e-17 && n > 8) break;
  }
  return (kPi * kPi / 3.0) * (1.0 - 24.0 * s);
}

/// e_4 and e_6 of the normalized lattice via the E_4/E_6 q-series.
void e4_e6_normalized(const Lattice& lat, cplx& e4, cplx& e6) {
  const cplx q = nome(lat);
  cplx s3{0.0, 0.0}, s5{0.0, 0.0};
  for (int n = 1; n <= 4000; ++n) {
    const cplx qn = std::pow(q, n);
    if (std::abs(qn) < 1e-19 && n > 8) break;
    cplx sig3{0.0, 0.0}, sig5{0.0, 0.0};
    for (int d = 1; d * d <= n; ++d) {
      if (n % d != 0) continue;
      const int e = n / d;
      sig3 += double(d) * double(d) * double(d);
      sig5 += std::pow(double(d), 5);
      if (e != d) {
        sig3 += double(e) * double(e) * double(e);
        sig5 += std::pow(double(e), 5);
      }
    }
    s3 += sig3 * qn;
    s5 += sig5 * qn;
  }
  const double pi4 = std::pow(kPi, 4), pi6 = std::pow(kPi, 6);
  e4 = (pi4 / 45.0) * (1.0 + 240.0 * s3);
  e6 = (2.0 * pi6 / 945.0) * (1.0 - 504.0 * s5);
}

/// Table of e_{2k}, k = 2..kmax, for the (possibly unnormalized) lattice:
/// e4/e6 from q-series, higher ones from the classical quadratic recursion.
std::vector<cplx> eisenstein_table(const Lattice& lat, int kmax) {
  std::vector<cplx> e(std::max(kmax + 1, 4), cplx{0.0, 0.0});
  cplx e4n, e6n;
  e4_e6_normalized(lat, e4n, e6n);
  e[2] = e4n / std::pow(lat.omega1, 4);
  e[3] = e6n / std::pow(lat.omega1, 6);
  for (int k = 4; k <= kmax; ++k) {
    cplx s{0.0, 0.0};
    for (int j = 2; j <= k - 2; ++j) {
      s += double((2 * j - 1) * (2 * (k - j) - 1)) * e[j] * e[k - j];
    }
    e[k] = 3.0 * s / double((2 * k + 1) * (2 * k - 1) * (k - 3));
  }
  return e;
}

/// Reduces z modulo the lattice to the translate of minimal modulus,
/// returning the reduced point and the integer shift taken out.
std::pair<cplx, LatticeShift> reduce_min_norm(const Lattice& lat, cplx z) {
  auto [red, s] = reduce(lat, z);
  cplx best = red;
  LatticeShift bs = s;
  for (int dm = -1; dm <= 1; ++dm) {
    for (int dn = -1; dn <= 1; ++dn) {
      const cplx cand = red - (double(dm) * lat.omega1 + double(dn) * lat.omega2);
      if (std::abs(cand) < std::abs(best)) {
        best = cand;
        bs = {s.m + dm, s.n + dn};
      }
    }
  }
  return {best, bs};
}

}  // namespace

cplx theta(cplx z, cplx tau, double tol) {
  const cplx ipt = cplx{0.0, 1.0} * kPi * tau;
  const cplx tpz = cplx{0.0, 2.0} * kPi * z;
  cplx s = 1.0;  // n = 0 term
  const double n_peak = std::abs(z.imag()) / tau.imag() + 2.0;
  for (int n = 1; n <= 100000; ++n) {
    const cplx quad = ipt * double(n) * double(n);
    const cplx tp = std::exp(quad + tpz * double(n));
    const cplx tm = std::exp(quad - tpz * double(n));
    s += tp + tm;
    if (std::abs(tp) + std::abs(tm) < tol / 10.0 && double(n) > n_peak) break;
  }
  return s;
}

PeriodConstants period_eta(const Lattice& lat, double /*tol*/) {
  const cplx e1n = eta1_normalized(lat);
  PeriodConstants pc;
  pc.eta1 = e1n / lat.omega1;
  pc.eta2 = (e1n * normalized_tau(lat) - cplx{0.0, 2.0 * kPi}) / lat.omega1;
  return pc;
}

cplx eisenstein(const Lattice& lat, int two_k, double tol) {
  if (two_k < 4 || two_k % 2 != 0) {
    throw std::invalid_argument("eisenstein: need even 2k >= 4");
  }
  const double C = 2.0 * kPi / (lat.area * double(two_k - 2));
  double R = std::pow(C / tol, 1.0 / double(two_k - 2));
  R = std::clamp(R, 30.0, 500.0);
  cplx s{0.0, 0.0};
  for (const cplx& lam : points_near(lat, {0.0, 0.0}, R)) {
    if (std::abs(lam) == 0.0) continue;
    s += std::pow(lam, -two_k);
  }
  return s;
}

cplx eisenstein_q(const Lattice& lat, int two_k) {
  if (two_k < 4 || two_k % 2 != 0) {
    throw std::invalid_argument("eisenstein_q: need even 2k >= 4");
  }
  return eisenstein_table(lat, two_k / 2)[two_k / 2];
}

static cplx e2star_core(const Lattice& lat, cplx outer, cplx inner, double tol) {
  // sum_{m in Z} sum_n (m*outer + n*inner)^{-2}, inner sums closed:
  //   (pi/inner)^2 / sin^2(pi m outer/inner), and pi^2/3 * inner^{-2} at m=0.
  const cplx ratio = outer / inner;
  const cplx pref = (kPi / inner) * (kPi / inner);
  cplx s = pref / 3.0;
  for (int m = 1; m <= 4000; ++m) {
    const cplx sn = std::sin(kPi * double(m) * ratio);
    const cplx term = 2.0 * pref / (sn * sn);
    s += term;
    if (std::abs(term) < tol / 10.0 && m > 3) break;
  }
  return s - std::conj(lat.omega1) / (lat.A * lat.omega1);
}

cplx eisenstein2_star(const Lattice& lat, double tol) {
  return e2star_core(lat, lat.omega2, lat.omega1, tol);
}

cplx eisenstein2_star_swapped(const Lattice& lat, double tol) {
  return e2star_core(lat, lat.omega1, lat.omega2, tol);
}

cplx weier_zeta(cplx z, const Lattice& lat, double tol) {
  auto [zr, s] = reduce_min_norm(lat, z);
  if (std::abs(zr) < 1e-12 * lat.shortest) {
    throw std::domain_error("weier_zeta: pole at a lattice point");
  }
  const auto e = eisenstein_table(lat, 120);
  cplx sum = 1.0 / zr;
  cplx zpow = zr * zr * zr;  // z^{2k-1} at k=2
  const cplx z2 = zr * zr;
  // symmetric lattices have exact zeros in the e-table, so a single small
  // term must not stop the sum
  int quiet = 0;
  for (int k = 2; k <= 120; ++k) {
    const cplx term = e[k] * zpow;
    sum -= term;
    zpow *= z2;
    quiet = (std::abs(term) < tol / 10.0) ? quiet + 1 : 0;
    if (quiet >= 3 && k > 6) break;
  }
  const auto pc = period_eta(lat, tol);
  return sum + double(s.m) * pc.eta1 + double(s.n) * pc.eta2;
}

cplx weier_p(cplx z, const Lattice& lat, int deriv, double tol) {
  auto [zr, s] = reduce_min_norm(lat, z);
  (void)s;
  if (std::abs(zr) < 1e-12 * lat.shortest) {
    throw std::domain_error("weier_p: pole at a lattice point");
  }
  const auto e = eisenstein_table(lat, 120);
  const cplx z2 = zr * zr;
  int quiet = 0;
  if (deriv == 0) {
    cplx sum = 1.0 / z2;
    cplx zpow = z2;  // z^{2k-2} at k=2
    for (int k = 2; k <= 120; ++k) {
      const cplx term = double(2 * k - 1) * e[k] * zpow;
      sum += term;
      zpow *= z2;
      quiet = (std::abs(term) < tol / 10.0) ? quiet + 1 : 0;
      if (quiet >= 3 && k > 6) break;
    }
    return sum;
  }
  cplx sum = -2.0 / (z2 * zr);
  cplx zpow = zr;  // z^{2k-3} at k=2
  for (int k = 2; k <= 120; ++k) {
    const cplx term = double((2 * k - 1) * (2 * k - 2)) * e[k] * zpow;
    sum += term;
    zpow *= z2;
    quiet = (std::abs(term) < tol / 10.0) ? quiet + 1 : 0;
    if (quiet >= 3 && k > 6) break;
  }
  return sum;
}

cplx Z_fn(cplx z, const Lattice& lat, double tol) {
  const double denom = std::imag(std::conj(lat.omega1) * lat.omega2);
  const double z2 = std::imag(std::conj(lat.omega1) * z) / denom;
  const double z1 = -std::imag(std::conj(lat.omega2) * z) / denom;
  const auto pc = period_eta(lat, tol);
  return weier_zeta(z, lat, tol) - z1 * pc.eta1 - z2 * pc.eta2;
}

cplx kronecker_F(cplx z, cplx w, cplx tau, double tol) {
  const double im = tau.imag();
  const double beta = z.imag() / im;
  const double delta = w.imag() / im;
  if (!(beta > 0.05 && beta < 0.45 && delta > 0.05 && delta < 0.45)) {
    throw std::domain_error(
        "kronecker_F: arguments outside the conservative strip "
        "beta, delta in (0.05, 0.45)");
  }
  const int N =
      static_cast<int>(std::ceil(std::log(10.0 / tol) / (2.0 * kPi * 0.05 * im))) + 2;
  const cplx tpi{0.0, 2.0 * kPi};
  cplx s{0.0, 0.0};
  for (int m = 0; m <= N; ++m) {
    for (int n = 0; n <= N; ++n) {
      s -= std::exp(tpi * (double(m) * double(n) * tau + double(m) * z + double(n) * w));
    }
  }
  for (int m = -1; m >= -N; --m) {
    for (int n = -1; n >= -N; --n) {
      const cplx t =
          std::exp(tpi * (double(m) * double(n) * tau + double(m) * z + double(n) * w));
      s += t;
      if (std::abs(t) < 1e-18) break;
    }
  }
  return s;
}

}  // namespace ekkit
