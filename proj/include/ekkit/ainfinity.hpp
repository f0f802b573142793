#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <vector>

#include "ekkit/ekseries.hpp"
#include "ekkit/lattice.hpp"

namespace ekkit {

/// One element of the rescaled basis of Ext*(G,G).
/// Th{i,j}: P_i -> L_j (degree 0);  Et{j,i}: L_j -> P_i (degree 1);
/// IdP/XiP carry a P-index, IdL/XiL an L-index.
struct BasisElement {
  enum class Kind : std::uint8_t { IdP, IdL, XiP, XiL, Th, Et };
  Kind kind = Kind::IdP;
  std::int16_t a = 0;  ///< first index (i for IdP/XiP/Th; j for IdL/XiL/Et)
  std::int16_t b = 0;  ///< second index (j for Th; i for Et; unused otherwise)

  auto operator<=>(const BasisElement&) const = default;

  static BasisElement IdP(int i) { return {Kind::IdP, std::int16_t(i), 0}; }
  static BasisElement IdL(int j) { return {Kind::IdL, std::int16_t(j), 0}; }
  static BasisElement XiP(int i) { return {Kind::XiP, std::int16_t(i), 0}; }
  static BasisElement XiL(int j) { return {Kind::XiL, std::int16_t(j), 0}; }
  static BasisElement Th(int i, int j) {
    return {Kind::Th, std::int16_t(i), std::int16_t(j)};
  }
  static BasisElement Et(int j, int i) {
    return {Kind::Et, std::int16_t(j), std::int16_t(i)};
  }
};

int deg(const BasisElement& e);

/// An object label: P_i or L_j.
struct ObjectLabel {
  bool is_P = true;
  int idx = 0;
  auto operator<=>(const ObjectLabel&) const = default;
};

ObjectLabel src(const BasisElement& e);
ObjectLabel tgt(const BasisElement& e);

using BasisString = std::vector<BasisElement>;
bool composable(const BasisString& st);

/// Sparse complex combination of basis elements.
using Combination = std::map<BasisElement, cplx>;

void comb_add(Combination& x, const Combination& y, cplx c = 1.0);
double comb_max(const Combination& x);

/// The A-infinity algebra configuration: lattice, parameters (w_i), (z_j).
class AinfConfig {
 public:
  AinfConfig(const Lattice& lat, std::vector<cplx> w, std::vector<cplx> z,
             SeriesParams series = {});
  AinfConfig(const AinfConfig& other);
  AinfConfig& operator=(const AinfConfig& other);

  const Lattice& lattice() const { return lat_; }
  int r() const { return int(w_.size()); }
  int s() const { return int(z_.size()); }
  cplx w(int i) const { return w_[std::size_t(i)]; }
  cplx z(int j) const { return z_[std::size_t(j)]; }

  /// Copy with one parameter replaced (used by finite differences).
  AinfConfig with_w(int i, cplx value) const;
  AinfConfig with_z(int j, cplx value) const;

  /// Cached g*_{a,b}(z_{jp} - z_j, w_{ip} - w_i); index coincidence puts the
  /// argument exactly on the lattice stratum.
  cplx g(int a, int b, int j, int jp, int i, int ip) const;

 private:
  Lattice lat_;
  std::vector<cplx> w_, z_;
  SeriesParams series_;
  mutable std::mutex mtx_;
  mutable std::map<std::array<int, 6>, cplx> cache_;
};

/// All 2r + 2s + 2rs basis elements.
std::vector<BasisElement> basis(const AinfConfig& cfg);

/// The full product m_n on a composable string (empty when zero).
/// Throws std::invalid_argument on a non-composable string.
Combination mu(const AinfConfig& cfg, const BasisString& st);

/// The cyclic pairing in the unit normalization; throws on degree mismatch.
double pairing_E(const BasisElement& x, const BasisElement& y);

/// The Stasheff relation sum on one string.
struct StasheffResult {
  double residual = 0.0;  ///< max-norm of the signed double sum
  double scale = 0.0;     ///< largest participating coefficient magnitude
  double relative() const { return residual / (scale > 1.0 ? scale : 1.0); }
};
StasheffResult stasheff_residual(const AinfConfig& cfg, const BasisString& st);

/// Independent route to mu on type-I strings (combinatorial perturbation
/// formula); throws std::invalid_argument on a shape mismatch.
Combination perturbation_oracle(const AinfConfig& cfg, const BasisString& st);

/// A sparse Hochschild cochain: evaluators per arity plus an intrinsic
/// degree (a function of the arity; shifted degree deg + arity - 1 must be
/// uniform across components).
struct Cochain {
  using Component =
      std::function<Combination(const AinfConfig&, const BasisString&)>;
  std::map<int, Component> comp;
  std::function<int(int)> intrinsic_deg;

  int shifted_degree() const;
  Combination eval(const AinfConfig& cfg, const BasisString& st) const;
};

/// The cochain bundling all products m_k, 1 <= k <= max_arity.
Cochain mu_cochain(int max_arity);

/// f circbar g evaluated on one string.
Combination circ_eval(const Cochain& f, const Cochain& g, const AinfConfig& cfg,
                      const BasisString& st);

/// The Gerstenhaber bracket [f,g] as a cochain.
Cochain gerstenhaber(const Cochain& f, const Cochain& g);

Combination bracket_eval(const Cochain& f, const Cochain& g,
                         const AinfConfig& cfg, const BasisString& st);

/// The cochains of the variation equations.
enum class BuiltinCochain { F0z, F0w, F1, F1p, F2z, F2w };
Cochain builtin_cochain(BuiltinCochain name, int index);

/// Variation equations: finite-difference derivative of mu's coefficients
/// versus the bracket right-hand side.
struct VariationSpec {
  enum class Kind { Z, W } kind = Kind::Z;
  int index = 0;
  bool conjugate = false;
};
enum class VariationForm { Raw, Nabla };
double variation_residual(const AinfConfig& cfg, const VariationSpec& param,
                          const BasisString& st, double h = 1e-5,
                          VariationForm form = VariationForm::Raw);

/// String builders and enumeration.
BasisString type1_string(int a, int b, int c, int d, int i, int j, int ip,
                         int jp);
BasisString type2_string(int a, int b, int c, int d, int j, int i, int jp,
                         int ip);
std::vector<BasisString> all_strings(const AinfConfig& cfg, int n);
BasisString random_string(const AinfConfig& cfg, int n, std::mt19937_64& rng);

}  // namespace ekkit
