#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ekkit/lattice.hpp"

namespace ekkit {

/// Machine-checked identity suites.  Each check evaluates one family of
/// identities at seeded sample points and returns a single aggregated
/// residual (parts with tighter intrinsic tolerances are rescaled so the
/// check passes iff every part meets its own tolerance).
enum class CheckId {
  ThmC,           ///< rapidly converging series vs direct Lerch sum
  FuncEq,         ///< functional equation of e*_{a,b}
  DerivE,         ///< Wirtinger derivative identities of e*_{a,b}
  DerivG,         ///< derivative identities of f*_{m,n} and g*_{a,b}
  Limits,         ///< value at z = 0 vs extrapolated punctured limit
  Quasi,          ///< quasi-periodicity laws of f*, g*, e*
  ZetaId,         ///< g*_{0,0}(z,0) against the Weierstrass-zeta route
  KronId,         ///< gtilde*_{0,0} against Kronecker's double series
  EFLink,         ///< e*_{0,1} against Kronecker's double series
  ClassicalX,     ///< classical cross-identities (Legendre, wp ODE, ...)
  Quad,           ///< quadratic identity across all 16 stratum masks
  Aybe,           ///< the associative Yang-Baxter identity for g*_{0,0}
  Expansion,      ///< Taylor coefficients via Cauchy/DFT vs g*_{a,b}
  Stasheff,       ///< A-infinity relations on basis strings
  Cyclic,         ///< cyclic symmetry of the pairing
  Unital,         ///< strict unitality of the products
  PerturbOracle,  ///< mu vs the combinatorial perturbation formula
  MaurerCartan,   ///< [m,m] = 0 under the Gerstenhaber bracket
  Variation,      ///< variation equations (finite differences vs brackets)
  Corb,           ///< exact polynomial reduction evaluated numerically
  Constants,      ///< g*_{a,b}(0,0) anchors (e2*, Eisenstein values)
};

const char* check_name(CheckId id);
std::optional<CheckId> check_from_name(const std::string& name);
const std::vector<CheckId>& all_check_ids();
double default_threshold(CheckId id);

/// Evaluation environment of one check run.
struct CheckEnv {
  cplx tau{0.0, 1.0};
  int r = 2;  ///< number of P-objects of the A-infinity configuration
  int s = 2;  ///< number of L-objects
  std::uint64_t seed = 1;
  std::optional<double> tol;  ///< overrides the default threshold
};

struct CheckReport {
  std::string check;
  cplx tau{};
  std::uint64_t seed = 0;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  long elapsed_ms = 0;
};

CheckReport run_check(CheckId id, const CheckEnv& env);

/// The default evaluation grid.
const std::vector<cplx>& default_taus();
const std::vector<std::uint64_t>& default_seeds();

/// Runs the given checks over the grid (deterministic order).
std::vector<CheckReport> run_suite(
    const std::vector<CheckId>& checks,
    const std::vector<cplx>& taus = default_taus(),
    const std::vector<std::uint64_t>& seeds = default_seeds());

/// JSON serialization.  `stable` zeroes elapsed_ms so that reruns in an
/// identical environment produce byte-identical output.
std::string report_to_json(const CheckReport& r, bool stable = false);
std::string reports_to_json(const std::vector<CheckReport>& rs,
                            bool stable = false);

/// Value tables.
struct TableSpec {
  std::string kind = "ek";  ///< ek | gstar | eisenstein
  int amax = 2;
  int bmax = 4;
  cplx z{0.31, 0.17};
  cplx w{0.12, 0.44};
  cplx tau{0.0, 1.0};
  std::string format = "json";  ///< json | csv
};

/// Serialized table; throws std::invalid_argument on an unknown kind/format.
std::string emit_table(const TableSpec& spec);

}  // namespace ekkit
