#include "ekkit/ainfinity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ekkit {
namespace {

double factorial(int n) {
  double r = 1.0;
  for (int k = 2; k <= n; ++k) r *= double(k);
  return r;
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}

double msign(long k) { return (k % 2 == 0) ? 1.0 : -1.0; }  // (-1)^k

long choose2(long n) { return n * (n - 1) / 2; }

}  // namespace

int deg(const BasisElement& e) {
  switch (e.kind) {
    case BasisElement::Kind::IdP:
    case BasisElement::Kind::IdL:
    case BasisElement::Kind::Th:
      return 0;
    default:
      return 1;
  }
}

ObjectLabel src(const BasisElement& e) {
  switch (e.kind) {
    case BasisElement::Kind::IdP:
    case BasisElement::Kind::XiP:
    case BasisElement::Kind::Th:
      return {true, e.a};
    case BasisElement::Kind::IdL:
    case BasisElement::Kind::XiL:
    case BasisElement::Kind::Et:
      return {false, e.a};
  }
  return {};
}

ObjectLabel tgt(const BasisElement& e) {
  switch (e.kind) {
    case BasisElement::Kind::IdP:
    case BasisElement::Kind::XiP:
      return {true, e.a};
    case BasisElement::Kind::IdL:
    case BasisElement::Kind::XiL:
      return {false, e.a};
    case BasisElement::Kind::Th:
      return {false, e.b};
    case BasisElement::Kind::Et:
      return {true, e.b};
  }
  return {};
}

bool composable(const BasisString& st) {
  for (std::size_t k = 0; k + 1 < st.size(); ++k) {
    if (tgt(st[k]) != src(st[k + 1])) return false;
  }
  return true;
}

void comb_add(Combination& x, const Combination& y, cplx c) {
  for (const auto& [k, v] : y) x[k] += c * v;
}

double comb_max(const Combination& x) {
  double m = 0.0;
  for (const auto& [k, v] : x) m = std::max(m, std::abs(v));
  return m;
}

AinfConfig::AinfConfig(const Lattice& lat, std::vector<cplx> w,
                       std::vector<cplx> z, SeriesParams series)
    : lat_(lat), w_(std::move(w)), z_(std::move(z)), series_(series) {
  if (w_.empty() || z_.empty()) {
    throw std::invalid_argument("AinfConfig: need r >= 1 and s >= 1");
  }
  auto check_distinct = [&](const std::vector<cplx>& v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t k = i + 1; k < v.size(); ++k) {
        if (classify(lat_, v[i] - v[k], series_.snap_eps).on_lattice()) {
          throw std::invalid_argument(
              std::string("AinfConfig: ") + what +
              " parameters congruent modulo the lattice");
        }
      }
    }
  };
  check_distinct(w_, "w");
  check_distinct(z_, "z");
}

AinfConfig::AinfConfig(const AinfConfig& other)
    : lat_(other.lat_), w_(other.w_), z_(other.z_), series_(other.series_) {}

AinfConfig& AinfConfig::operator=(const AinfConfig& other) {
  if (this != &other) {
    lat_ = other.lat_;
    w_ = other.w_;
    z_ = other.z_;
    series_ = other.series_;
    std::lock_guard<std::mutex> lock(mtx_);
    cache_.clear();
  }
  return *this;
}

AinfConfig AinfConfig::with_w(int i, cplx value) const {
  AinfConfig c(*this);
  c.w_[std::size_t(i)] = value;
  return c;
}

AinfConfig AinfConfig::with_z(int j, cplx value) const {
  AinfConfig c(*this);
  c.z_[std::size_t(j)] = value;
  return c;
}

cplx AinfConfig::g(int a, int b, int j, int jp, int i, int ip) const {
  const std::array<int, 6> key{a, b, j, jp, i, ip};
  {
    std::lock_guard<std::mutex> lock(mtx_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const StratifiedPoint zp = (jp == j)
                                 ? lattice_origin()
                                 : classify(lat_, z_[std::size_t(jp)] - z_[std::size_t(j)],
                                            series_.snap_eps);
  const StratifiedPoint wp = (ip == i)
                                 ? lattice_origin()
                                 : classify(lat_, w_[std::size_t(ip)] - w_[std::size_t(i)],
                                            series_.snap_eps);
  const cplx v = g_star(a, b, zp, wp, lat_, series_).value;
  std::lock_guard<std::mutex> lock(mtx_);
  cache_.emplace(key, v);
  return v;
}

std::vector<BasisElement> basis(const AinfConfig& cfg) {
  std::vector<BasisElement> out;
  for (int i = 0; i < cfg.r(); ++i) {
    out.push_back(BasisElement::IdP(i));
    out.push_back(BasisElement::XiP(i));
  }
  for (int j = 0; j < cfg.s(); ++j) {
    out.push_back(BasisElement::IdL(j));
    out.push_back(BasisElement::XiL(j));
  }
  for (int i = 0; i < cfg.r(); ++i) {
    for (int j = 0; j < cfg.s(); ++j) {
      out.push_back(BasisElement::Th(i, j));
      out.push_back(BasisElement::Et(j, i));
    }
  }
  return out;
}

namespace {

/// Rescaled-basis coefficient M~(a,b,c,d) with upper indices (j,j') and
/// lower indices (i,i').
cplx Mt(const AinfConfig& cfg, int a, int b, int c, int d, int j, int jp,
        int i, int ip) {
  const int n = a + b + c + d + 3;
  return msign(choose2(n) + 1) /
         (factorial(a) * factorial(b) * factorial(c) * factorial(d)) *
         cfg.g(a + c, b + d, j, jp, i, ip);
}

bool is_id(const BasisElement& e) {
  return e.kind == BasisElement::Kind::IdP || e.kind == BasisElement::Kind::IdL;
}

}  // namespace

Combination mu(const AinfConfig& cfg, const BasisString& st) {
  if (!composable(st)) throw std::invalid_argument("mu: non-composable string");
  const int n = int(st.size());
  if (n <= 1) return {};
  if (n == 2) {
    const BasisElement &x = st[0], &y = st[1];
    if (is_id(x)) return {{y, 1.0}};
    if (is_id(y)) return {{x, 1.0}};
    if (x.kind == BasisElement::Kind::Th && y.kind == BasisElement::Kind::Et &&
        y.b == x.a) {
      return {{BasisElement::XiP(x.a), 1.0}};
    }
    if (x.kind == BasisElement::Kind::Et && y.kind == BasisElement::Kind::Th &&
        y.b == x.a) {
      return {{BasisElement::XiL(x.a), 1.0}};
    }
    return {};
  }
  for (const auto& e : st) {
    if (is_id(e)) return {};
  }
  // Locate the non-xi elements and classify the arrow pattern.
  std::vector<int> pos;
  std::string kinds;
  for (int k = 0; k < n; ++k) {
    if (st[std::size_t(k)].kind == BasisElement::Kind::Th) {
      pos.push_back(k);
      kinds += 'T';
    } else if (st[std::size_t(k)].kind == BasisElement::Kind::Et) {
      pos.push_back(k);
      kinds += 'E';
    }
  }
  auto run = [&](int lo, int hi) { return hi - lo - 1; };
  if (kinds == "TET") {
    const auto &t1 = st[std::size_t(pos[0])], &e1 = st[std::size_t(pos[1])],
               &t2 = st[std::size_t(pos[2])];
    const int a = pos[0], b = run(pos[0], pos[1]), c = run(pos[1], pos[2]),
              d = n - 1 - pos[2];
    const int i = t1.a, j = t1.b, ip = e1.b, jp = t2.b;
    return {{BasisElement::Th(i, jp), Mt(cfg, a, b, c, d, j, jp, i, ip)}};
  }
  if (kinds == "ETE") {
    const auto &e1 = st[std::size_t(pos[0])], &t1 = st[std::size_t(pos[1])],
               &e2 = st[std::size_t(pos[2])];
    const int a = pos[0], b = run(pos[0], pos[1]), c = run(pos[1], pos[2]),
              d = n - 1 - pos[2];
    const int j = e1.a, i = e1.b, jp = t1.b, ip = e2.b;
    const int nn = a + b + c + d + 3;
    const cplx coef = msign(choose2(nn) + 1) /
                      (factorial(a) * factorial(b) * factorial(c) * factorial(d)) *
                      cfg.g(b + d, c + a, jp, j, i, ip);
    return {{BasisElement::Et(j, ip), coef}};
  }
  if (kinds == "TETE") {
    const auto &t1 = st[std::size_t(pos[0])], &e1 = st[std::size_t(pos[1])],
               &t2 = st[std::size_t(pos[2])], &e2 = st[std::size_t(pos[3])];
    const int i = t1.a, j = t1.b;
    if (e2.b != i) return {};  // must close up: Hom(P_i, P_{i''}) = 0 otherwise
    const int a = pos[0], b = run(pos[0], pos[1]), c = run(pos[1], pos[2]),
              d = run(pos[2], pos[3]), e = n - 1 - pos[3];
    const int ip = e1.b, jp = t2.b;
    return {{BasisElement::IdP(i), Mt(cfg, a + e + 1, b, c, d, j, jp, i, ip)}};
  }
  if (kinds == "ETET") {
    const auto &e1 = st[std::size_t(pos[0])], &t1 = st[std::size_t(pos[1])],
               &e2 = st[std::size_t(pos[2])], &t2 = st[std::size_t(pos[3])];
    const int j = e1.a, i = e1.b;
    if (t2.b != j) return {};
    const int a = pos[0], b = run(pos[0], pos[1]), c = run(pos[1], pos[2]),
              d = run(pos[2], pos[3]), e = n - 1 - pos[3];
    const int jp = t1.b, ip = e2.b;
    const int nn = a + e + 1 + b + c + d + 3;
    const cplx coef = msign(choose2(nn) + 1) /
                      (factorial(a + e + 1) * factorial(b) * factorial(c) *
                       factorial(d)) *
                      cfg.g(b + d, c + a + e + 1, jp, j, i, ip);
    return {{BasisElement::IdL(j), coef}};
  }
  return {};
}

double pairing_E(const BasisElement& x, const BasisElement& y) {
  if (deg(x) + deg(y) != 1) {
    throw std::invalid_argument("pairing_E: degrees must sum to 1");
  }
  using K = BasisElement::Kind;
  if (x.kind == K::IdP && y.kind == K::XiP && x.a == y.a) return 1.0;
  if (x.kind == K::XiP && y.kind == K::IdP && x.a == y.a) return 1.0;
  if (x.kind == K::IdL && y.kind == K::XiL && x.a == y.a) return 1.0;
  if (x.kind == K::XiL && y.kind == K::IdL && x.a == y.a) return 1.0;
  if (x.kind == K::Th && y.kind == K::Et && x.a == y.b && x.b == y.a) return 1.0;
  if (x.kind == K::Et && y.kind == K::Th && x.a == y.b && x.b == y.a) return 1.0;
  return 0.0;
}

StasheffResult stasheff_residual(const AinfConfig& cfg, const BasisString& st) {
  const int n = int(st.size());
  Combination total;
  StasheffResult res;
  for (int ssz = 1; ssz <= n; ++ssz) {
    for (int rr = 0; rr + ssz <= n; ++rr) {
      const int tt = n - ssz - rr;
      BasisString inner(st.begin() + rr, st.begin() + rr + ssz);
      if (!composable(inner)) continue;
      const Combination mi = mu(cfg, inner);
      if (mi.empty()) continue;
      long eps = 0;
      for (int k = 0; k < rr; ++k) eps += deg(st[std::size_t(k)]);
      const double sign = msign(long(rr) + long(ssz) * tt + long(ssz) * eps);
      for (const auto& [be, cf] : mi) {
        BasisString outer(st.begin(), st.begin() + rr);
        outer.push_back(be);
        outer.insert(outer.end(), st.begin() + rr + ssz, st.end());
        if (!composable(outer)) continue;
        const Combination mo = mu(cfg, outer);
        for (const auto& [k2, v2] : mo) {
          res.scale = std::max(res.scale, std::abs(cf * v2));
        }
        comb_add(total, mo, sign * cf);
      }
    }
  }
  res.residual = comb_max(total);
  return res;
}

Combination perturbation_oracle(const AinfConfig& cfg, const BasisString& st) {
  if (!composable(st)) {
    throw std::invalid_argument("perturbation_oracle: non-composable string");
  }
  std::vector<int> pos;
  std::string kinds;
  const int n = int(st.size());
  for (int k = 0; k < n; ++k) {
    const auto kd = st[std::size_t(k)].kind;
    if (kd == BasisElement::Kind::Th) {
      pos.push_back(k);
      kinds += 'T';
    } else if (kd == BasisElement::Kind::Et) {
      pos.push_back(k);
      kinds += 'E';
    } else if (kd != BasisElement::Kind::XiP && kd != BasisElement::Kind::XiL) {
      throw std::invalid_argument("perturbation_oracle: not a type-I string");
    }
  }
  if (kinds != "TET") {
    throw std::invalid_argument("perturbation_oracle: not a type-I string");
  }
  const auto &t1 = st[std::size_t(pos[0])], &e1 = st[std::size_t(pos[1])],
             &t2 = st[std::size_t(pos[2])];
  const int a = pos[0], b = pos[1] - pos[0] - 1, c = pos[2] - pos[1] - 1,
            d = n - 1 - pos[2];
  const int i = t1.a, j = t1.b, ip = e1.b, jp = t2.b;
  const Lattice& lat = cfg.lattice();
  const double A = lat.A;
  const cplx dz = cfg.z(jp) - cfg.z(j);
  const cplx dw = cfg.w(ip) - cfg.w(i);

  SeriesParams sp;  // default tolerance; the oracle is a test route
  auto phi = [&](cplx Zv, cplx Wv, bool on, int k, int l, int p) {
    const StratifiedPoint Z = on ? lattice_origin() : classify(lat, Zv, sp.snap_eps);
    const StratifiedPoint W = classify(lat, Wv, sp.snap_eps);
    const cplx f = f_star(k + p, l + 1, Z, W, lat, sp, Variant::Tilde).value;
    return std::pow(A, double(k + p + l + 1)) / (factorial(k) * factorial(p)) * f;
  };

  cplx s1{0.0, 0.0};
  for (int a1 = 0; a1 <= a; ++a1) {
    const int a2 = a - a1;
    for (int c1 = 0; c1 <= c; ++c1) {
      const int c2 = c - c1;
      s1 += binom(a2 + b, a2) * binom(a1 + c1, a1) * binom(c2 + d, c2) *
            phi(dw, dz, ip == i, a2 + b, a1 + c1, c2 + d);
    }
  }
  cplx s2{0.0, 0.0};
  for (int b1 = 0; b1 <= b; ++b1) {
    const int b2 = b - b1;
    for (int d1 = 0; d1 <= d; ++d1) {
      const int d2 = d - d1;
      s2 += binom(c + d1, c) * binom(b2 + d2, b2) * binom(a + b1, a) *
            phi(dz, dw, jp == j, c + d1, b2 + d2, a + b1);
    }
  }
  const cplx M = msign(choose2(n) + 1) * s1 + msign(choose2(n) + n + 1) * s2;
  const cplx Mres =
      M * std::pow(A, double(-(n - 2))) * std::exp(dz * (std::conj(dw) - dw) / A);
  return {{BasisElement::Th(i, jp), Mres}};
}

int Cochain::shifted_degree() const {
  const int n0 = comp.begin()->first;
  return intrinsic_deg(n0) + n0 - 1;
}

Combination Cochain::eval(const AinfConfig& cfg, const BasisString& st) const {
  auto it = comp.find(int(st.size()));
  if (it == comp.end()) return {};
  return it->second(cfg, st);
}

Cochain mu_cochain(int max_arity) {
  Cochain c;
  for (int n = 1; n <= max_arity; ++n) {
    c.comp[n] = [](const AinfConfig& cfg, const BasisString& st) {
      return mu(cfg, st);
    };
  }
  c.intrinsic_deg = [](int n) { return 2 - n; };
  return c;
}

Combination circ_eval(const Cochain& f, const Cochain& g, const AinfConfig& cfg,
                      const BasisString& st) {
  Combination out;
  const int N = int(st.size());
  for (const auto& [m, ff] : f.comp) {
    for (const auto& [n, gf] : g.comp) {
      if (m + n - 1 != N) continue;
      const int dg = g.intrinsic_deg(n);
      for (int i = 1; i <= m; ++i) {
        BasisString seg(st.begin() + (i - 1), st.begin() + (i - 1) + n);
        if (n > 0 && !composable(seg)) continue;
        const Combination gi = gf(cfg, seg);
        if (gi.empty()) continue;
        long eps = 0;
        for (int k = 0; k < i - 1; ++k) eps += deg(st[std::size_t(k)]);
        const double sign =
            msign((eps + m - 1) * long(dg) + long(i - 1) * (n - 1));
        for (const auto& [be, cf] : gi) {
          BasisString outer(st.begin(), st.begin() + (i - 1));
          outer.push_back(be);
          outer.insert(outer.end(), st.begin() + (i - 1) + n, st.end());
          if (!composable(outer)) continue;
          comb_add(out, ff(cfg, outer), sign * cf);
        }
      }
    }
  }
  return out;
}

Combination bracket_eval(const Cochain& f, const Cochain& g,
                         const AinfConfig& cfg, const BasisString& st) {
  Combination out = circ_eval(f, g, cfg, st);
  const double sg = msign(long(f.shifted_degree()) * g.shifted_degree());
  comb_add(out, circ_eval(g, f, cfg, st), -sg);
  return out;
}

Cochain gerstenhaber(const Cochain& f, const Cochain& g) {
  Cochain out;
  const int df = f.shifted_degree(), dg = g.shifted_degree();
  for (const auto& [m, fm] : f.comp) {
    for (const auto& [n, gn] : g.comp) {
      const int N = m + n - 1;
      if (out.comp.count(N)) continue;
      out.comp[N] = [f, g](const AinfConfig& cfg, const BasisString& st) {
        return bracket_eval(f, g, cfg, st);
      };
    }
  }
  const int shifted = df + dg;
  out.intrinsic_deg = [shifted](int n) { return shifted - (n - 1); };
  return out;
}

Cochain builtin_cochain(BuiltinCochain name, int index) {
  using K = BasisElement::Kind;
  Cochain c;
  switch (name) {
    case BuiltinCochain::F0z:
      c.comp[0] = [index](const AinfConfig&, const BasisString&) -> Combination {
        return {{BasisElement::XiL(index), 1.0}};
      };
      c.intrinsic_deg = [](int) { return 1; };
      break;
    case BuiltinCochain::F0w:
      c.comp[0] = [index](const AinfConfig&, const BasisString&) -> Combination {
        return {{BasisElement::XiP(index), 1.0}};
      };
      c.intrinsic_deg = [](int) { return 1; };
      break;
    case BuiltinCochain::F1:
      c.comp[1] = [index](const AinfConfig& cfg,
                          const BasisString& st) -> Combination {
        const BasisElement& e = st[0];
        const double A = cfg.lattice().A;
        if (e.kind == K::Th && e.a == index) {
          return {{e, -std::conj(cfg.z(e.b)) / A}};
        }
        if (e.kind == K::Et && e.b == index) {
          return {{e, std::conj(cfg.z(e.a)) / A}};
        }
        return {};
      };
      c.intrinsic_deg = [](int) { return 0; };
      break;
    case BuiltinCochain::F1p:
      c.comp[1] = [index](const AinfConfig& cfg,
                          const BasisString& st) -> Combination {
        const BasisElement& e = st[0];
        if (e.kind == K::Th && e.a == index) return {{e, cfg.z(e.b)}};
        if (e.kind == K::Et && e.b == index) return {{e, -cfg.z(e.a)}};
        return {};
      };
      c.intrinsic_deg = [](int) { return 0; };
      break;
    case BuiltinCochain::F2z:
      c.comp[2] = [index](const AinfConfig&,
                          const BasisString& st) -> Combination {
        const BasisElement &x = st[0], &y = st[1];
        if (x.kind == K::XiP && y.kind == K::Th && y.b == index) {
          return {{y, -1.0}};
        }
        if (x.kind == K::Et && x.a == index && y.kind == K::XiP && y.a == x.b) {
          return {{x, 1.0}};
        }
        return {};
      };
      c.intrinsic_deg = [](int) { return -1; };
      break;
    case BuiltinCochain::F2w:
      c.comp[2] = [index](const AinfConfig&,
                          const BasisString& st) -> Combination {
        const BasisElement &x = st[0], &y = st[1];
        if (x.kind == K::Th && x.a == index && y.kind == K::XiL && y.a == x.b) {
          return {{x, 1.0}};
        }
        if (x.kind == K::XiL && y.kind == K::Et && y.b == index) {
          return {{y, 1.0}};
        }
        return {};
      };
      c.intrinsic_deg = [](int) { return -1; };
      break;
  }
  return c;
}

namespace {

Combination fd_mu(const AinfConfig& cfg, const VariationSpec& p,
                  const BasisString& st, double h) {
  const cplx base =
      (p.kind == VariationSpec::Kind::Z) ? cfg.z(p.index) : cfg.w(p.index);
  auto at = [&](cplx val) {
    const AinfConfig c = (p.kind == VariationSpec::Kind::Z)
                             ? cfg.with_z(p.index, val)
                             : cfg.with_w(p.index, val);
    return mu(c, st);
  };
  const Combination fp = at(base + h), fm = at(base - h);
  const Combination gp = at(base + cplx{0.0, h}), gm = at(base - cplx{0.0, h});
  const cplx is = p.conjugate ? cplx{0.0, 1.0} : cplx{0.0, -1.0};
  Combination out;
  comb_add(out, fp, 1.0 / (4.0 * h));
  comb_add(out, fm, -1.0 / (4.0 * h));
  comb_add(out, gp, is / (4.0 * h));
  comb_add(out, gm, -is / (4.0 * h));
  return out;
}

double comb_resid(const Combination& a, const Combination& b) {
  Combination d = a;
  comb_add(d, b, -1.0);
  const double den = std::max({1.0, comb_max(a), comb_max(b)});
  return comb_max(d) / den;
}

/// Connection coefficient of the w-direction trivialization.
cplx conn_gamma(const AinfConfig& cfg, const VariationSpec& p,
                const BasisElement& e) {
  using K = BasisElement::Kind;
  if (p.kind != VariationSpec::Kind::W) return {0.0, 0.0};
  const double A = cfg.lattice().A;
  if (!p.conjugate) {
    if (e.kind == K::Th && e.a == p.index) return -std::conj(cfg.z(e.b)) / A;
    if (e.kind == K::Et && e.b == p.index) return std::conj(cfg.z(e.a)) / A;
  } else {
    if (e.kind == K::Th && e.a == p.index) return cfg.z(e.b) / A;
    if (e.kind == K::Et && e.b == p.index) return -cfg.z(e.a) / A;
  }
  return {0.0, 0.0};
}

}  // namespace

double variation_residual(const AinfConfig& cfg, const VariationSpec& param,
                          const BasisString& st, double h, VariationForm form) {
  if (!composable(st)) {
    throw std::invalid_argument("variation_residual: non-composable string");
  }
  const int n = int(st.size());
  const double A = cfg.lattice().A;
  const Cochain m = mu_cochain(n + 3);
  Combination lhs = fd_mu(cfg, param, st, h);

  if (form == VariationForm::Nabla) {
    if (param.kind == VariationSpec::Kind::Z && !param.conjugate) {
      // nabla_z form: signed insertions of xiL_j into m_{n+1}.
      Combination rhs;
      for (int k = 1; k <= n + 1; ++k) {
        long eps = 0;
        for (int t = 0; t < k - 1; ++t) eps += deg(st[std::size_t(t)]);
        const double sg = msign(n) * msign(long(k - 1) + eps);
        BasisString outer(st.begin(), st.begin() + (k - 1));
        outer.push_back(BasisElement::XiL(param.index));
        outer.insert(outer.end(), st.begin() + (k - 1), st.end());
        if (!composable(outer)) continue;
        comb_add(rhs, mu(cfg, outer), sg);
      }
      return comb_resid(lhs, rhs);
    }
    if (param.kind == VariationSpec::Kind::W) {
      // Covariant derivative of the coefficients in the trivialization.
      const Combination base = mu(cfg, st);
      cplx tot{0.0, 0.0};
      for (const auto& e : st) tot -= conn_gamma(cfg, param, e);
      for (const auto& [be, cf] : base) {
        lhs[be] += (conn_gamma(cfg, param, be) + tot) * cf;
      }
      Combination rhs = param.conjugate
                            ? bracket_eval(m, builtin_cochain(BuiltinCochain::F2w,
                                                              param.index),
                                           cfg, st)
                            : bracket_eval(m, builtin_cochain(BuiltinCochain::F0w,
                                                              param.index),
                                           cfg, st);
      if (param.conjugate) {
        Combination scaled;
        comb_add(scaled, lhs, A);
        return comb_resid(scaled, rhs);
      }
      return comb_resid(lhs, rhs);
    }
    // nabla coincides with the plain derivative in the zbar direction.
  }

  Combination rhs;
  if (param.kind == VariationSpec::Kind::Z) {
    if (!param.conjugate) {
      rhs = bracket_eval(m, builtin_cochain(BuiltinCochain::F0z, param.index),
                         cfg, st);
    } else {
      Combination scaled;
      comb_add(scaled, lhs, A);
      lhs = std::move(scaled);
      rhs = bracket_eval(m, builtin_cochain(BuiltinCochain::F2z, param.index),
                         cfg, st);
    }
  } else {
    if (!param.conjugate) {
      rhs = bracket_eval(m, builtin_cochain(BuiltinCochain::F0w, param.index),
                         cfg, st);
      comb_add(rhs, bracket_eval(
                        m, builtin_cochain(BuiltinCochain::F1, param.index),
                        cfg, st));
    } else {
      Combination scaled;
      comb_add(scaled, lhs, A);
      lhs = std::move(scaled);
      rhs = bracket_eval(m, builtin_cochain(BuiltinCochain::F2w, param.index),
                         cfg, st);
      comb_add(rhs, bracket_eval(
                        m, builtin_cochain(BuiltinCochain::F1p, param.index),
                        cfg, st));
    }
  }
  return comb_resid(lhs, rhs);
}

BasisString type1_string(int a, int b, int c, int d, int i, int j, int ip,
                         int jp) {
  BasisString st;
  for (int k = 0; k < a; ++k) st.push_back(BasisElement::XiP(i));
  st.push_back(BasisElement::Th(i, j));
  for (int k = 0; k < b; ++k) st.push_back(BasisElement::XiL(j));
  st.push_back(BasisElement::Et(j, ip));
  for (int k = 0; k < c; ++k) st.push_back(BasisElement::XiP(ip));
  st.push_back(BasisElement::Th(ip, jp));
  for (int k = 0; k < d; ++k) st.push_back(BasisElement::XiL(jp));
  return st;
}

BasisString type2_string(int a, int b, int c, int d, int j, int i, int jp,
                         int ip) {
  BasisString st;
  for (int k = 0; k < a; ++k) st.push_back(BasisElement::XiL(j));
  st.push_back(BasisElement::Et(j, i));
  for (int k = 0; k < b; ++k) st.push_back(BasisElement::XiP(i));
  st.push_back(BasisElement::Th(i, jp));
  for (int k = 0; k < c; ++k) st.push_back(BasisElement::XiL(jp));
  st.push_back(BasisElement::Et(jp, ip));
  for (int k = 0; k < d; ++k) st.push_back(BasisElement::XiP(ip));
  return st;
}

std::vector<BasisString> all_strings(const AinfConfig& cfg, int n) {
  const auto B = basis(cfg);
  std::map<ObjectLabel, std::vector<BasisElement>> outgoing;
  std::vector<ObjectLabel> objs;
  for (int i = 0; i < cfg.r(); ++i) objs.push_back({true, i});
  for (int j = 0; j < cfg.s(); ++j) objs.push_back({false, j});
  for (const auto& o : objs) {
    for (const auto& e : B) {
      if (src(e) == o) outgoing[o].push_back(e);
    }
  }
  std::vector<BasisString> out;
  BasisString cur;
  std::function<void(ObjectLabel, int)> rec = [&](ObjectLabel at, int left) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (const auto& e : outgoing[at]) {
      cur.push_back(e);
      rec(tgt(e), left - 1);
      cur.pop_back();
    }
  };
  for (const auto& o : objs) rec(o, n);
  return out;
}

BasisString random_string(const AinfConfig& cfg, int n, std::mt19937_64& rng) {
  const auto B = basis(cfg);
  BasisString st;
  std::uniform_int_distribution<std::size_t> pick(0, B.size() - 1);
  st.push_back(B[pick(rng)]);
  while (int(st.size()) < n) {
    std::vector<BasisElement> cands;
    for (const auto& e : B) {
      if (src(e) == tgt(st.back())) cands.push_back(e);
    }
    std::uniform_int_distribution<std::size_t> pick2(0, cands.size() - 1);
    st.push_back(cands[pick2(rng)]);
  }
  return st;
}

}  // namespace ekkit
