#include "ekkit/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ekkit {

Lattice make_lattice(cplx omega1, cplx omega2) {
  if (std::abs(omega1) == 0.0 || std::abs(omega2) == 0.0) {
    throw std::invalid_argument("make_lattice: zero generator");
  }
  const cplx ratio = omega2 / omega1;
  if (ratio.imag() == 0.0) {
    throw std::invalid_argument("make_lattice: collinear generators");
  }
  if (ratio.imag() < 0.0) std::swap(omega1, omega2);

  Lattice lat;
  lat.omega1 = omega1;
  lat.omega2 = omega2;
  lat.area = std::abs(std::imag(std::conj(omega1) * omega2));
  lat.A = lat.area / kPi;

  double best = std::abs(omega1);
  for (int m = -2; m <= 2; ++m) {
    for (int n = -2; n <= 2; ++n) {
      if (m == 0 && n == 0) continue;
      best = std::min(best, std::abs(double(m) * omega1 + double(n) * omega2));
    }
  }
  lat.shortest = best;
  return lat;
}

Lattice lattice_from_tau(cplx tau) { return make_lattice({1.0, 0.0}, tau); }

cplx pairing(const Lattice& lat, cplx z, cplx w) {
  return std::exp((z * std::conj(w) - w * std::conj(z)) / lat.A);
}

cplx shift_value(const Lattice& lat, const LatticeShift& s) {
  return double(s.m) * lat.omega1 + double(s.n) * lat.omega2;
}

std::pair<cplx, LatticeShift> reduce(const Lattice& lat, cplx z) {
  // Real generator coordinates via the oriented area form.
  const double denom = std::imag(std::conj(lat.omega1) * lat.omega2);
  const double y = std::imag(std::conj(lat.omega1) * z) / denom;
  const double x = -std::imag(std::conj(lat.omega2) * z) / denom;
  LatticeShift s;
  s.m = static_cast<long>(std::floor(x + 0.5));
  s.n = static_cast<long>(std::floor(y + 0.5));
  const cplx reduced = z - shift_value(lat, s);
  return {reduced, s};
}

StratifiedPoint classify(const Lattice& lat, cplx z, double snap_eps) {
  StratifiedPoint p;
  p.raw = z;
  auto [red, s] = reduce(lat, z);
  p.reduced = red;
  p.shift = s;
  const double scale = std::max(std::abs(lat.omega1), std::abs(lat.omega2));
  if (std::abs(red) < snap_eps * scale) {
    p.stratum = Stratum::OnLattice;
    p.reduced = cplx{0.0, 0.0};
  } else {
    p.stratum = Stratum::Generic;
  }
  return p;
}

StratifiedPoint lattice_origin() {
  StratifiedPoint p;
  p.stratum = Stratum::OnLattice;
  return p;
}

StratifiedPoint negate(const StratifiedPoint& p) {
  StratifiedPoint q;
  q.raw = -p.raw;
  q.stratum = p.stratum;
  q.reduced = -p.reduced;
  q.shift = {-p.shift.m, -p.shift.n};
  return q;
}

std::vector<LatticeShift> shifts_near(const Lattice& lat, cplx center, double R) {
  // Coordinate bounds from the distance between lattice lines: lines of
  // constant m are spaced area/|omega2| apart, lines of constant n by
  // area/|omega1|.
  const double denom = std::imag(std::conj(lat.omega1) * lat.omega2);
  const double yc = std::imag(std::conj(lat.omega1) * (-center)) / denom;
  const double xc = -std::imag(std::conj(lat.omega2) * (-center)) / denom;
  const double dm = R * std::abs(lat.omega2) / lat.area + 1.0;
  const double dn = R * std::abs(lat.omega1) / lat.area + 1.0;
  std::vector<LatticeShift> out;
  const long m_lo = static_cast<long>(std::floor(xc - dm));
  const long m_hi = static_cast<long>(std::ceil(xc + dm));
  const long n_lo = static_cast<long>(std::floor(yc - dn));
  const long n_hi = static_cast<long>(std::ceil(yc + dn));
  for (long m = m_lo; m <= m_hi; ++m) {
    for (long n = n_lo; n <= n_hi; ++n) {
      const cplx lam = double(m) * lat.omega1 + double(n) * lat.omega2;
      if (std::abs(lam + center) <= R) out.push_back({m, n});
    }
  }
  return out;
}

std::vector<cplx> points_near(const Lattice& lat, cplx center, double R) {
  std::vector<cplx> out;
  for (const auto& s : shifts_near(lat, center, R)) {
    out.push_back(shift_value(lat, s));
  }
  return out;
}

}  // namespace ekkit
