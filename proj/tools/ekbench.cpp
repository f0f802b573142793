// Benchmark: OpenMP-parallel direct Lerch sum vs the serial reference.
// Verifies bitwise equality of the two reductions, then reports timings.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "ekkit/ekseries.hpp"
#include "ekkit/lattice.hpp"

int main(int argc, char** argv) {
  using namespace ekkit;
  apply_thread_env();
  double R = 400.0;
  int reps = 3;
  if (argc > 1) R = std::atof(argv[1]);
  if (argc > 2) reps = std::atoi(argv[2]);

  const Lattice lat = lattice_from_tau({0.5, 1.0});
  const StratifiedPoint z = classify(lat, {0.31, 0.17});
  const StratifiedPoint w = classify(lat, {0.12, 0.44});

  auto time_it = [&](auto&& f) {
    double best = 1e300;
    EKValue v{};
    for (int k = 0; k < reps; ++k) {
      const auto t0 = std::chrono::steady_clock::now();
      v = f();
      const auto dt = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
      if (dt < best) best = dt;
    }
    return std::pair{v, best};
  };

  int mismatches = 0;
  std::printf("%-8s %-12s %-12s %-8s %s\n", "(a,b)", "serial[ms]",
              "parallel[ms]", "speedup", "bitwise");
  for (auto [a, b] : {std::pair{0, 4}, {1, 5}, {2, 6}}) {
    const auto [vs, ts] =
        time_it([&] { return ek_direct_serial(a, b, z, w, lat, R); });
    const auto [vp, tp] = time_it([&] { return ek_direct(a, b, z, w, lat, R); });
    const bool same = vs.value.real() == vp.value.real() &&
                      vs.value.imag() == vp.value.imag();
    if (!same) ++mismatches;
    std::printf("(%d,%d)    %-12.2f %-12.2f %-8.2f %s\n", a, b, ts, tp,
                ts / tp, same ? "yes" : "NO");
  }
  return mismatches == 0 ? 0 : 1;
}
