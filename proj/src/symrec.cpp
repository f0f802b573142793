#include "ekkit/symrec.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ekkit {

std::string Generator::name() const {
  switch (cls) {
    case Cls::G00:
      return "G00";
    case Cls::G01:
      return "G01";
    case Cls::Z:
      return "Z" + std::to_string(m);
    case Cls::W:
      return "W" + std::to_string(m);
    case Cls::C:
      return "C(" + std::to_string(m) + "," + std::to_string(n) + ")";
  }
  return "?";
}

bool GradedLexLess::operator()(const Monomial& a, const Monomial& b) const {
  int da = 0, db = 0;
  for (const auto& [g, e] : a) da += e;
  for (const auto& [g, e] : b) db += e;
  if (da != db) return da < db;
  return a < b;
}

MPoly MPoly::constant(const mpq_class& c) {
  MPoly p;
  p.add_term({}, c);
  return p;
}

MPoly MPoly::gen(const Generator& g) {
  MPoly p;
  p.add_term({{g, 1}}, 1);
  return p;
}

void MPoly::add_term(const Monomial& mono, const mpq_class& c) {
  if (c == 0) return;
  auto it = terms_.find(mono);
  if (it == terms_.end()) {
    terms_.emplace(mono, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

MPoly MPoly::operator-(const MPoly& o) const {
  MPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, mpq_class(-c));
  return out;
}

namespace {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly out;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      out.add_term(mono_mul(m1, m2), mpq_class(c1 * c2));
    }
  }
  return out;
}

MPoly MPoly::scaled(const mpq_class& c) const {
  MPoly out;
  for (const auto& [m, v] : terms_) out.add_term(m, mpq_class(v * c));
  return out;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (const auto& [g, e] : mono) {
      os << " * " << g.name();
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

std::vector<Generator> MPoly::generators() const {
  std::vector<Generator> out;
  for (const auto& [mono, c] : terms_) {
    for (const auto& [g, e] : mono) {
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

cplx eval_poly(const MPoly& p, const std::map<Generator, cplx>& env) {
  cplx sum{0.0, 0.0};
  for (const auto& [mono, c] : p.terms()) {
    cplx t{c.get_d(), 0.0};
    for (const auto& [g, e] : mono) {
      auto it = env.find(g);
      if (it == env.end()) {
        throw std::invalid_argument("eval_poly: missing generator " + g.name());
      }
      for (int k = 0; k < e; ++k) t *= it->second;
    }
    sum += t;
  }
  return sum;
}

namespace {

mpq_class rat(long num, long den = 1) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

mpz_class binom_z(int n, int k) {
  mpz_class r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

/// C(m,n) as a polynomial: zero when m+n is even (parity), else a generator.
MPoly Cpoly(int m, int n) {
  if ((m + n) % 2 == 0) return MPoly::zero();
  return MPoly::gen(Generator::c(m, n));
}

/// The recursion engine; memoized, shared behind a mutex.
class Reducer {
 public:
  MPoly onevar(int a, int b, bool z_side) {
    const auto key = std::make_tuple(a, b, z_side);
    auto it = onevar_.find(key);
    if (it != onevar_.end()) return it->second;
    MPoly r;
    if (a == 0 && b <= 2) {
      r = MPoly::gen(z_side ? Generator::zb(b) : Generator::wb(b));
    } else if (a >= 1) {
      // second one-variable recursion at (a-1, b):
      //   (1 + 1/a) g_{a,b} - g_{a-1,b+1} = R4(a-1,b)
      r = (rhs4(a - 1, b, z_side) + onevar(a - 1, b + 1, z_side))
              .scaled(rat(a, a + 1));
    } else {
      // a = 0, b >= 3: solve the 2x2 one-variable system at (0, b-1):
      //   x - (1/b) y = R3,   2x - y = R4   (x = g_{1,b-1}, y = g_{0,b})
      //   => y = (R4 - 2 R3) / (2/b - 1)
      const MPoly r3 = rhs3(0, b - 1, z_side);
      const MPoly r4 = rhs4(0, b - 1, z_side);
      const mpq_class det = rat(2, b) - 1;
      r = (r4 - r3.scaled(2)).scaled(mpq_class(1) / det);
    }
    onevar_.emplace(key, r);
    return r;
  }

  MPoly reduce(int a, int b) {
    const auto key = std::make_pair(a, b);
    auto it = zw_.find(key);
    if (it != zw_.end()) return it->second;
    MPoly r;
    if (a == 0 && b == 0) {
      r = MPoly::gen(Generator::g00());
    } else if (a == 0 && b == 1) {
      r = MPoly::gen(Generator::g01());
    } else if (a >= 1) {
      // two-variable system at (a-1, b) for x = g_{a,b}, y = g_{a-1,b+1}:
      //   x - y/(b+1) = R1,  x/a - y = R2
      if (a - 1 == 0 && b == 0) {
        // singular case: R1 alone with y = G01
        r = rhs1(0, 0) + MPoly::gen(Generator::g01());
      } else {
        const mpq_class det = rat(1, long(a) * (b + 1)) - 1;
        const MPoly r1 = rhs1(a - 1, b);
        const MPoly r2 = rhs2(a - 1, b);
        // x = (-R1 + R2/(b+1)) / det
        r = (r2.scaled(rat(1, b + 1)) - r1).scaled(mpq_class(1) / det);
      }
    } else {
      // a = 0, b >= 2: system at (0, b-1) for x = g_{1,b-1}, y = g_{0,b}:
      //   x - y/b = R1,  x - y = R2  =>  y = (R2 - R1) / (1/b - 1)
      const mpq_class det = rat(1, b) - 1;
      const MPoly r1 = rhs1(0, b - 1);
      const MPoly r2 = rhs2(0, b - 1);
      r = (r2 - r1).scaled(mpq_class(1) / det);
    }
    zw_.emplace(key, r);
    return r;
  }

 private:
  /// g_{a,b}(0,w) via the flip at z = 0 (pairing factor 1) and parity.
  MPoly at_zero_w(int a1, int b) {
    const MPoly p = onevar(b, a1, /*z_side=*/false);
    return ((a1 + b + 1) % 2 == 0) ? p : p.scaled(-1);
  }

  MPoly rhs1(int a, int b) {
    MPoly out;
    for (int a1 = 0; a1 <= a; ++a1) {
      const int a2 = a - a1;
      out = out + (reduce(a2, 0) * at_zero_w(a1, b))
                      .scaled(mpq_class(binom_z(a, a1)));
    }
    for (int b1 = 0; b1 <= b; ++b1) {
      const int b2 = b - b1;
      out = out - (Cpoly(0, b1) * reduce(a, b2))
                      .scaled(mpq_class(binom_z(b, b1)));
    }
    out = out - MPoly::gen(Generator::zb(0)) * reduce(a, b);
    return out;
  }

  MPoly rhs2(int a, int b) {
    MPoly out;
    for (int a1 = 0; a1 <= a; ++a1) {
      const int a2 = a - a1;
      out = out + (Cpoly(a2, 0) * reduce(a1, b))
                      .scaled(mpq_class(binom_z(a, a1)));
    }
    for (int b1 = 0; b1 <= b; ++b1) {
      const int b2 = b - b1;
      out = out - (reduce(0, b1) * onevar(a, b2, /*z_side=*/true))
                      .scaled(mpq_class(binom_z(b, b1)));
    }
    // g_{0,0}(0,w) = -g_{0,0}(w,0) = -W0
    out = out - MPoly::gen(Generator::wb(0)) * reduce(a, b);
    return out;
  }

  MPoly rhs3(int a, int b, bool z_side) {
    MPoly out;
    for (int a1 = 0; a1 <= a; ++a1) {
      const int a2 = a - a1;
      out = out + (onevar(a2, 0, z_side) * Cpoly(a1, b))
                      .scaled(mpq_class(binom_z(a, a1)));
    }
    for (int b1 = 0; b1 <= b; ++b1) {
      const int b2 = b - b1;
      out = out - (Cpoly(0, b1) * onevar(a, b2, z_side))
                      .scaled(mpq_class(binom_z(b, b1)));
    }
    // g_{0,0}(-x,0) = -g_{0,0}(x,0) by parity
    const Generator x0 = z_side ? Generator::zb(0) : Generator::wb(0);
    out = out - MPoly::gen(x0) * onevar(a, b, z_side);
    out = out - Cpoly(a + 1, b).scaled(rat(1, a + 1));
    return out;
  }

  MPoly rhs4(int a, int b, bool z_side) {
    MPoly out;
    for (int a1 = 0; a1 <= a; ++a1) {
      const int a2 = a - a1;
      out = out + (Cpoly(a2, 0) * onevar(a1, b, z_side))
                      .scaled(mpq_class(binom_z(a, a1)));
    }
    for (int b1 = 0; b1 <= b; ++b1) {
      const int b2 = b - b1;
      out = out - (onevar(0, b1, z_side) * onevar(a, b2, z_side))
                      .scaled(mpq_class(binom_z(b, b1)));
    }
    if (b == 0) out = out - Cpoly(a + 1, 0).scaled(rat(1, a + 1));
    return out;
  }

  std::map<std::tuple<int, int, bool>, MPoly> onevar_;
  std::map<std::pair<int, int>, MPoly> zw_;
};

std::mutex g_reducer_mutex;
Reducer g_reducer;

}  // namespace

MPoly reduce_gab(int a, int b) {
  std::lock_guard<std::mutex> lock(g_reducer_mutex);
  return g_reducer.reduce(a, b);
}

MPoly reduce_onevar(int a, int b, bool z_side) {
  std::lock_guard<std::mutex> lock(g_reducer_mutex);
  return g_reducer.onevar(a, b, z_side);
}

}  // namespace ekkit
