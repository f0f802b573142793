#pragma once

#include "ekkit/lattice.hpp"

namespace ekkit {

/// Truncation controls for the Gaussian-damped lattice series.
struct SeriesParams {
  double tol = 1e-12;        ///< target absolute tolerance
  double max_radius = 60.0;  ///< safety cap on the enumeration disk
  double snap_eps = 1e-9;    ///< forwarded to classify()
};

/// Result of a truncated lattice series.
struct EKValue {
  cplx value{};
  double radius_used = 0.0;
  double tail_bound = 0.0;
};

enum class Variant { Plain, Tilde };

/// f*_{m,n}(z,w) = A^{-m} sum_{lambda != -z}
///   conj(lambda+z)^m / (lambda+z)^n * exp(-|lambda+z|^2/A) * <w,lambda>,
/// summed over adaptive shells (stop after three consecutive quiet shells).
/// The Tilde variant multiplies by exp(A^{-1} z (w - conj(w))).
EKValue f_star(int m, int n, const StratifiedPoint& z, const StratifiedPoint& w,
               const Lattice& lat, const SeriesParams& p = {},
               Variant variant = Variant::Plain);

/// g*_{a,b}(z,w) = sum_k k! [ C(a,k) f*_{a+b-k,k+1}(w,z) <z,w>
///                           + (-1)^{a+b+1} C(b,k) f*_{a+b-k,k+1}(z,w) ];
/// the Tilde variant multiplies by exp(A^{-1} z (w - conj(w))).
EKValue g_star(int a, int b, const StratifiedPoint& z, const StratifiedPoint& w,
               const Lattice& lat, const SeriesParams& p = {},
               Variant variant = Variant::Plain);

/// Eisenstein-Kronecker number via the rapidly converging series:
///   e*_{a,b}(z,w) = (-1)^{a+b} A^a/(b-1)! * g*_{a,b-1}(z,-w),  b >= 1.
EKValue ek(int a, int b, const StratifiedPoint& z, const StratifiedPoint& w,
           const Lattice& lat, const SeriesParams& p = {});

/// Direct Lerch sum over |lambda+z| <= R (absolutely convergent for
/// b >= a+3):  sum conj(lambda+z)^{a+b} / |lambda+z|^{2b} * <lambda,w>.
/// Throws std::domain_error when b < a+3.  OpenMP-parallel with a
/// deterministic (thread-count independent) reduction.
EKValue ek_direct(int a, int b, const StratifiedPoint& z,
                  const StratifiedPoint& w, const Lattice& lat, double R);

/// Serial reference implementation of the same sum (kept for testing and
/// benchmarking; bit-identical to ek_direct by construction).
EKValue ek_direct_serial(int a, int b, const StratifiedPoint& z,
                         const StratifiedPoint& w, const Lattice& lat, double R);

/// Convenience wrappers that classify plain complex arguments first.
EKValue f_star(int m, int n, cplx z, cplx w, const Lattice& lat,
               const SeriesParams& p = {}, Variant variant = Variant::Plain);
EKValue g_star(int a, int b, cplx z, cplx w, const Lattice& lat,
               const SeriesParams& p = {}, Variant variant = Variant::Plain);
EKValue ek(int a, int b, cplx z, cplx w, const Lattice& lat,
           const SeriesParams& p = {});

/// Caps OpenMP parallelism from the EKKIT_THREADS environment variable
/// (no-op when the variable is unset or OpenMP is unavailable).
void apply_thread_env();

}  // namespace ekkit
