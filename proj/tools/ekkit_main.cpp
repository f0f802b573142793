#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ekkit/checks.hpp"
#include "ekkit/classical.hpp"
#include "ekkit/ekseries.hpp"
#include "ekkit/symrec.hpp"

namespace {

using ekkit::cplx;

/// Parses "re,im" (or a plain real) into a complex number.
cplx parse_cplx(const std::string& s) {
  std::istringstream is(s);
  double re = 0.0, im = 0.0;
  char sep = 0;
  if (!(is >> re)) throw CLI::ValidationError("expected re,im: " + s);
  if (is >> sep) {
    if (sep != ',' || !(is >> im)) {
      throw CLI::ValidationError("expected re,im: " + s);
    }
  }
  return {re, im};
}

void print_value(const std::string& fn, cplx v, double radius, double tail) {
  std::printf("{\"fn\":\"%s\",\"value\":[%.17g,%.17g]", fn.c_str(), v.real(),
              v.imag());
  if (radius > 0.0) std::printf(",\"radius\":%.17g,\"tail_bound\":%.3g", radius, tail);
  std::printf("}\n");
}

int cmd_eval(const std::string& fn, int a, int b, cplx z, cplx w, cplx tau,
             double tol) {
  const ekkit::Lattice lat = ekkit::lattice_from_tau(tau);
  ekkit::SeriesParams sp;
  sp.tol = tol;
  if (fn == "f") {
    const auto v = ekkit::f_star(a, b, z, w, lat, sp);
    print_value(fn, v.value, v.radius_used, v.tail_bound);
  } else if (fn == "g") {
    const auto v = ekkit::g_star(a, b, z, w, lat, sp);
    print_value(fn, v.value, v.radius_used, v.tail_bound);
  } else if (fn == "ek") {
    const auto v = ekkit::ek(a, b, z, w, lat, sp);
    print_value(fn, v.value, v.radius_used, v.tail_bound);
  } else if (fn == "theta") {
    print_value(fn, ekkit::theta(z, tau, tol), 0.0, 0.0);
  } else if (fn == "wp") {
    print_value(fn, ekkit::weier_p(z, lat, a, tol), 0.0, 0.0);
  } else if (fn == "zeta") {
    print_value(fn, ekkit::weier_zeta(z, lat, tol), 0.0, 0.0);
  } else if (fn == "Z") {
    print_value(fn, ekkit::Z_fn(z, lat, tol), 0.0, 0.0);
  } else if (fn == "F") {
    print_value(fn, ekkit::kronecker_F(z, w, tau, tol), 0.0, 0.0);
  } else if (fn == "e2k") {
    print_value(fn, ekkit::eisenstein_q(lat, 2 * b), 0.0, 0.0);
  } else {
    std::cerr << "unknown function: " << fn << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  ekkit::apply_thread_env();
  CLI::App app{"Eisenstein-Kronecker numbers and the cyclic A-infinity "
               "structure of an elliptic curve"};
  app.require_subcommand(1);

  std::string fn = "ek", check = "", kind = "ek", format = "json", out = "";
  std::string z_s = "0.31,0.17", w_s = "0.12,0.44", tau_s = "0,1";
  int a = 0, b = 1, amax = 2, bmax = 4;
  std::uint64_t seed = 1;
  bool all = false, stable = false;
  double tol = 1e-12;
  double tol_override = -1.0;

  auto* eval = app.add_subcommand("eval", "evaluate one function");
  eval->add_option("--fn", fn, "f|g|ek|theta|wp|zeta|Z|F|e2k");
  eval->add_option("--a,--m", a, "first index");
  eval->add_option("--b,--n", b, "second index");
  eval->add_option("--z", z_s, "z as re,im");
  eval->add_option("--w", w_s, "w as re,im");
  eval->add_option("--tau", tau_s, "tau as re,im");
  eval->add_option("--tol", tol, "series tolerance");

  auto* verify = app.add_subcommand("verify", "run identity checks");
  verify->add_option("--check", check, "check name");
  verify->add_flag("--all", all, "run the full suite");
  verify->add_option("--tau", tau_s, "tau as re,im (single-check mode)");
  verify->add_option("--seed", seed, "sample seed (single-check mode)");
  verify->add_option("--tol", tol_override, "threshold override");
  verify->add_flag("--stable", stable, "zero elapsed_ms for reproducible output");

  auto* table = app.add_subcommand("table", "emit a value table");
  table->add_option("--kind", kind, "ek|gstar|eisenstein");
  table->add_option("--amax", amax, "maximum a");
  table->add_option("--bmax", bmax, "maximum b");
  table->add_option("--z", z_s, "z as re,im");
  table->add_option("--w", w_s, "w as re,im");
  table->add_option("--tau", tau_s, "tau as re,im");
  table->add_option("--format", format, "json|csv");
  table->add_option("--out", out, "output file (default stdout)");

  auto* corb = app.add_subcommand("corb",
                                  "exact polynomial reduction of g*_{a,b}");
  corb->add_option("--a", a, "first index")->required();
  corb->add_option("--b", b, "second index")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (eval->parsed()) {
      return cmd_eval(fn, a, b, parse_cplx(z_s), parse_cplx(w_s),
                      parse_cplx(tau_s), tol);
    }
    if (verify->parsed()) {
      std::vector<ekkit::CheckReport> reports;
      if (all) {
        reports = ekkit::run_suite(ekkit::all_check_ids());
      } else {
        const auto id = ekkit::check_from_name(check);
        if (!id) {
          std::cerr << "unknown check: " << check << "\n";
          return 2;
        }
        ekkit::CheckEnv env;
        env.tau = parse_cplx(tau_s);
        env.seed = seed;
        if (tol_override > 0.0) env.tol = tol_override;
        reports.push_back(ekkit::run_check(*id, env));
      }
      std::cout << ekkit::reports_to_json(reports, stable) << "\n";
      for (const auto& r : reports) {
        if (!r.pass) return 1;
      }
      return 0;
    }
    if (table->parsed()) {
      ekkit::TableSpec spec;
      spec.kind = kind;
      spec.amax = amax;
      spec.bmax = bmax;
      spec.z = parse_cplx(z_s);
      spec.w = parse_cplx(w_s);
      spec.tau = parse_cplx(tau_s);
      spec.format = format;
      const std::string text = ekkit::emit_table(spec);
      if (out.empty()) {
        std::cout << text;
      } else {
        std::ofstream os(out);
        os << text;
      }
      return 0;
    }
    if (corb->parsed()) {
      std::cout << ekkit::reduce_gab(a, b).to_string() << "\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
