#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ekkit/lattice.hpp"

namespace ekkit {

/// Named generators of the reduction ring:
///   G00 = g*_{0,0}(z,w), G01 = g*_{0,1}(z,w),
///   Z<b> = g*_{0,b}(z,0), W<b> = g*_{0,b}(w,0)  (b = 0,1,2),
///   C(m,n) = g*_{m,n}(0,0)  (constants; identically 0 when m+n is even).
struct Generator {
  enum class Cls : int { G00 = 0, G01, Z, W, C };
  Cls cls = Cls::G00;
  int m = 0;  ///< Z/W: the index b;  C: first index
  int n = 0;  ///< C: second index

  auto operator<=>(const Generator&) const = default;
  std::string name() const;

  static Generator g00() { return {Cls::G00, 0, 0}; }
  static Generator g01() { return {Cls::G01, 0, 0}; }
  static Generator zb(int b) { return {Cls::Z, b, 0}; }
  static Generator wb(int b) { return {Cls::W, b, 0}; }
  static Generator c(int m, int n) { return {Cls::C, m, n}; }
};

/// Sorted sparse exponent vector; exponents strictly positive.
using Monomial = std::vector<std::pair<Generator, int>>;

/// Total order: total degree first, then lexicographic on the sparse
/// exponent representation in generator order (deterministic).
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Exact multivariate polynomial with big-rational coefficients.
class MPoly {
 public:
  using TermMap = std::map<Monomial, mpq_class, GradedLexLess>;

  MPoly() = default;
  static MPoly zero() { return {}; }
  static MPoly constant(const mpq_class& c);
  static MPoly gen(const Generator& g);

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly scaled(const mpq_class& c) const;
  bool operator==(const MPoly& o) const { return terms_ == o.terms_; }

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  void add_term(const Monomial& mono, const mpq_class& c);

  /// Canonical text form: `coeff * G00^e1 * ... + ...` with rationals `p/q`.
  std::string to_string() const;

  /// All generators appearing in the polynomial.
  std::vector<Generator> generators() const;

 private:
  TermMap terms_;
};

/// Exact substitution; throws std::invalid_argument on a missing generator.
cplx eval_poly(const MPoly& p, const std::map<Generator, cplx>& env);

/// Exact polynomial representing g*_{a,b}(z,w) over the generator set,
/// via the canonical recursion (increase a before b).
MPoly reduce_gab(int a, int b);

/// Exact polynomial representing the one-variable value g*_{a,b}(x,0)
/// (x = z when z_side, else x = w) over {Z<b>/W<b>, C(m,n)}.
MPoly reduce_onevar(int a, int b, bool z_side);

}  // namespace ekkit
