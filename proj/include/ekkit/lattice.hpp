#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace ekkit {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// A positively oriented lattice Z*omega1 + Z*omega2 in the complex plane.
struct Lattice {
  cplx omega1{1.0, 0.0};
  cplx omega2{0.0, 1.0};
  double area = 1.0;      ///< area of the fundamental parallelogram
  double A = 1.0;         ///< area / pi
  double shortest = 1.0;  ///< length of a shortest nonzero lattice vector
};

/// Builds a lattice, swapping generators if needed so Im(omega2/omega1) > 0.
/// Throws std::invalid_argument for degenerate (collinear or zero) generators.
Lattice make_lattice(cplx omega1, cplx omega2);

/// Convenience: the normalized lattice Z + Z*tau (Im tau > 0).
Lattice lattice_from_tau(cplx tau);

/// The unit-modulus pairing <z,w> = exp((z*conj(w) - w*conj(z)) / A).
cplx pairing(const Lattice& lat, cplx z, cplx w);

/// Integer coordinates of a lattice element m*omega1 + n*omega2.
struct LatticeShift {
  long m = 0;
  long n = 0;
};

/// The complex number m*omega1 + n*omega2.
cplx shift_value(const Lattice& lat, const LatticeShift& s);

/// Writes z = reduced + (m*omega1 + n*omega2) with reduced in the centered
/// fundamental cell (generator coordinates in [-1/2, 1/2)).
std::pair<cplx, LatticeShift> reduce(const Lattice& lat, cplx z);

enum class Stratum { OnLattice, Generic };

/// A point together with its stratum relative to the lattice.  When the
/// stratum is OnLattice the reduced representative is exactly 0.
struct StratifiedPoint {
  cplx raw{};
  Stratum stratum = Stratum::Generic;
  cplx reduced{};
  LatticeShift shift{};

  bool on_lattice() const { return stratum == Stratum::OnLattice; }
  /// delta_Lambda indicator: 1 on the lattice stratum, else 0.
  double delta() const { return on_lattice() ? 1.0 : 0.0; }
};

/// Reduces and classifies a point; |reduced| below snap_eps * max generator
/// length snaps to the exact on-lattice representative 0.
StratifiedPoint classify(const Lattice& lat, cplx z, double snap_eps = 1e-9);

/// An exact on-lattice point (reduced 0, shift 0).
StratifiedPoint lattice_origin();

/// Negation; preserves the stratum.
StratifiedPoint negate(const StratifiedPoint& p);

/// All lattice elements lambda with |lambda + center| <= R, each exactly once.
std::vector<cplx> points_near(const Lattice& lat, cplx center, double R);

/// Same, as integer coordinates.
std::vector<LatticeShift> shifts_near(const Lattice& lat, cplx center, double R);

}  // namespace ekkit
