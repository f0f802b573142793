#include "ekkit/ekseries.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ekkit {
namespace {

cplx ipow(cplx base, int e) {
  cplx r{1.0, 0.0};
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

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

struct Term {
  double r;
  long m, n;
  cplx lam;
};

}  // namespace

EKValue f_star(int m, int n, const StratifiedPoint& z, const StratifiedPoint& w,
               const Lattice& lat, const SeriesParams& p, Variant variant) {
  const double A = lat.A;
  const double h = lat.shortest;
  const cplx zr = z.reduced;
  const bool skip_origin = z.on_lattice();

  double R = std::min(p.max_radius, std::sqrt(A * std::log(1e18)) + 3.0 * h);
  EKValue out;
  for (;;) {
    std::vector<Term> terms;
    for (const auto& s : shifts_near(lat, zr, R)) {
      if (skip_origin && s.m == 0 && s.n == 0) continue;
      const cplx lam = shift_value(lat, s);
      terms.push_back({std::abs(lam + zr), s.m, s.n, lam});
    }
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      if (a.r != b.r) return a.r < b.r;
      if (a.m != b.m) return a.m < b.m;
      return a.n < b.n;
    });

    cplx sum{0.0, 0.0};
    int quiet = 0;
    std::size_t idx = 0;
    bool converged = false;
    double last_max = 0.0;
    for (int shell = 0; double(shell) * h < R && idx < terms.size(); ++shell) {
      const double hi = double(shell + 1) * h;
      double shell_max = 0.0;
      while (idx < terms.size() && terms[idx].r < hi) {
        const Term& t = terms[idx++];
        const cplx u = t.lam + zr;
        const double mag =
            std::pow(t.r, double(m - n)) * std::exp(-t.r * t.r / A);
        shell_max = std::max(shell_max, mag);
        sum += ipow(std::conj(u), m) / ipow(u, n) *
               std::exp(-t.r * t.r / A) * pairing(lat, w.raw, t.lam);
      }
      last_max = shell_max;
      quiet = (shell_max < p.tol / 10.0) ? quiet + 1 : 0;
      if (quiet >= 3) {
        out.radius_used = hi;
        out.tail_bound = std::max(shell_max, p.tol / 10.0);
        converged = true;
        break;
      }
    }
    if (converged) {
      out.value = sum * std::pow(A, double(-m));
      break;
    }
    if (R >= p.max_radius) {
      throw std::runtime_error(
          "f_star: series did not reach tolerance within max_radius "
          "(last shell bound " + std::to_string(last_max) + ")");
    }
    R = std::min(p.max_radius, R + 4.0 * h);
  }

  // Quasi-periodicity factor for the exact shift taken out of z.
  if (z.shift.m != 0 || z.shift.n != 0) {
    out.value *= pairing(lat, shift_value(lat, z.shift), w.raw);
  }
  if (variant == Variant::Tilde) {
    out.value *= std::exp(z.raw * (w.raw - std::conj(w.raw)) / A);
  }
  return out;
}

EKValue g_star(int a, int b, const StratifiedPoint& z, const StratifiedPoint& w,
               const Lattice& lat, const SeriesParams& p, Variant variant) {
  EKValue out;
  const cplx pzw = pairing(lat, z.raw, w.raw);
  const double flip_sign = ((a + b) % 2 == 0) ? -1.0 : 1.0;  // (-1)^{a+b+1}
  for (int k = 0; k <= std::max(a, b); ++k) {
    const double kfac = factorial(k);
    if (k <= a) {
      EKValue f = f_star(a + b - k, k + 1, w, z, lat, p);
      out.value += binom(a, k) * kfac * f.value * pzw;
      out.tail_bound += binom(a, k) * kfac * f.tail_bound;
      out.radius_used = std::max(out.radius_used, f.radius_used);
    }
    if (k <= b) {
      EKValue f = f_star(a + b - k, k + 1, z, w, lat, p);
      out.value += flip_sign * binom(b, k) * kfac * f.value;
      out.tail_bound += binom(b, k) * kfac * f.tail_bound;
      out.radius_used = std::max(out.radius_used, f.radius_used);
    }
  }
  if (variant == Variant::Tilde) {
    out.value *= std::exp(z.raw * (w.raw - std::conj(w.raw)) / lat.A);
  }
  return out;
}

EKValue ek(int a, int b, const StratifiedPoint& z, const StratifiedPoint& w,
           const Lattice& lat, const SeriesParams& p) {
  if (b < 1) throw std::invalid_argument("ek: need b >= 1");
  EKValue g = g_star(a, b - 1, z, negate(w), lat, p);
  const double sign = ((a + b) % 2 == 0) ? 1.0 : -1.0;
  const double c = sign * std::pow(lat.A, double(a)) / factorial(b - 1);
  g.value *= c;
  g.tail_bound *= std::abs(c);
  return g;
}

static EKValue ek_direct_core(int a, int b, const StratifiedPoint& z,
                              const StratifiedPoint& w, const Lattice& lat,
                              double R, bool parallel) {
  if (b < a + 3) {
    throw std::domain_error(
        "ek_direct: requires b >= a+3 (analytic continuation required — use ek)");
  }
  const cplx zr = z.reduced;
  const bool skip_origin = z.on_lattice();
  auto shifts = shifts_near(lat, zr, R);

  // Row boundaries (constant first coordinate) for a deterministic reduction.
  std::vector<std::size_t> row_start;
  for (std::size_t i = 0; i < shifts.size(); ++i) {
    if (i == 0 || shifts[i].m != shifts[i - 1].m) row_start.push_back(i);
  }
  row_start.push_back(shifts.size());
  const long nrows = long(row_start.size()) - 1;
  std::vector<cplx> rowsum(std::max<long>(nrows, 0), cplx{0.0, 0.0});

  auto row_value = [&](long r) {
    cplx s{0.0, 0.0};
    for (std::size_t i = row_start[r]; i < row_start[r + 1]; ++i) {
      const auto& sh = shifts[i];
      if (skip_origin && sh.m == 0 && sh.n == 0) continue;
      const cplx lam = shift_value(lat, sh);
      const cplx u = lam + zr;
      s += ipow(std::conj(u), a + b) / std::pow(std::norm(u), double(b)) *
           pairing(lat, lam, w.raw);
    }
    return s;
  };

  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long r = 0; r < nrows; ++r) rowsum[r] = row_value(r);
  } else {
    for (long r = 0; r < nrows; ++r) rowsum[r] = row_value(r);
  }

  EKValue out;
  for (long r = 0; r < nrows; ++r) out.value += rowsum[r];
  // Undo the reduction shift: e*(z_red + lam0, w) picks up <lam0,w>^{-1}.
  if (z.shift.m != 0 || z.shift.n != 0) {
    out.value *= pairing(lat, w.raw, shift_value(lat, z.shift));
  }
  out.radius_used = R;
  out.tail_bound = 2.0 * kPi * std::pow(R, double(a - b + 2)) /
                   (lat.area * std::max(1, b - a - 2));
  return out;
}

EKValue ek_direct(int a, int b, const StratifiedPoint& z,
                  const StratifiedPoint& w, const Lattice& lat, double R) {
  return ek_direct_core(a, b, z, w, lat, R, true);
}

EKValue ek_direct_serial(int a, int b, const StratifiedPoint& z,
                         const StratifiedPoint& w, const Lattice& lat,
                         double R) {
  return ek_direct_core(a, b, z, w, lat, R, false);
}

EKValue f_star(int m, int n, cplx z, cplx w, const Lattice& lat,
               const SeriesParams& p, Variant variant) {
  return f_star(m, n, classify(lat, z, p.snap_eps), classify(lat, w, p.snap_eps),
                lat, p, variant);
}

EKValue g_star(int a, int b, cplx z, cplx w, const Lattice& lat,
               const SeriesParams& p, Variant variant) {
  return g_star(a, b, classify(lat, z, p.snap_eps), classify(lat, w, p.snap_eps),
                lat, p, variant);
}

EKValue ek(int a, int b, cplx z, cplx w, const Lattice& lat,
           const SeriesParams& p) {
  return ek(a, b, classify(lat, z, p.snap_eps), classify(lat, w, p.snap_eps),
            lat, p);
}

void apply_thread_env() {
#ifdef _OPENMP
  if (const char* v = std::getenv("EKKIT_THREADS")) {
    const int n = std::atoi(v);
    if (n > 0) omp_set_num_threads(n);
  }
#endif
}

}  // namespace ekkit
