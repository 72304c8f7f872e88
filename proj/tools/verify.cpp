#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "cli.hpp"
#include "qnmcav/dos.hpp"
#include "qnmcav/errors.hpp"
#include "qnmcav/feynman.hpp"
#include "qnmcav/greens.hpp"
#include "qnmcav/quantization.hpp"
#include "qnmcav/thermal.hpp"
#include "qnmcav/universe.hpp"

namespace qnmcav::cli {

namespace {

struct Check {
  std::string name;
  std::function<json()> run;
};

json result(double residual, double tolerance, json extra = json::object()) {
  json j;
  j["residual"] = residual;
  j["tolerance"] = tolerance;
  j["pass"] = residual < tolerance;
  for (auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

json skipped(const std::string& why) { return {{"skipped", why}, {"pass", true}}; }

std::vector<double> unit_grid(double a) { return {0.1 * a, 0.3 * a, 0.5 * a, 0.7 * a, 0.9 * a}; }

std::vector<Check> identity_checks(const CavityProfile& p, int jmax) {
  const double a = p.a;
  const double scale = std::numbers::pi / p.optical_length();
  std::vector<Check> c;
  if (auto rod = as_rod(p)) {
    c.push_back({"spectrum_closed_form", [p, rod] {
                   auto s = qnm_spectrum(p, 21);
                   double worst = 0.0;
                   for (int j = -20; j <= 20; ++j) {
                     cplx ref = rod_qnm_frequency(*rod, j);
                     worst = std::max(worst, std::abs(s.mode(j).omega - ref) / std::abs(ref));
                   }
                   return result(worst, 1e-10, {{"modes", 41}});
                 }});
  }
  c.push_back({"orthonormality", [p, jmax] {
                 const int n = std::max(1, jmax);
                 auto s = qnm_spectrum(p, n);
                 std::vector<QnmMode> modes = s.representatives();
                 double wmax = 0.0;
                 for (const auto& m : modes) wmax = std::max(wmax, std::abs(m.omega));
                 auto grid = make_field_grid(p, wmax, 8);
                 double diag = 0.0;
                 for (const auto& m : modes) {
                   auto f = mode_field_pair(m, p, grid);
                   diag = std::max(diag, std::abs(bilinear_product(f, f, p) - 2.0 * m.omega) / std::abs(2.0 * m.omega));
                 }
                 double off = check_orthogonality(modes, p);
                 return result(std::max(diag, off), 1e-8,
                               {{"modes", n}, {"diagonal", diag}, {"offdiagonal", n > 1 ? json(off) : json(nullptr)}});
               }});
  c.push_back({"dissipation_identity", [p, a, scale] {
                 double worst = 0.0;
                 for (double x : unit_grid(a))
                   for (double y : unit_grid(a))
                     for (double k : {0.35, 0.8, 1.3, 2.1, 3.4})
                       worst = std::max(worst, verify_dissipation_identity(p, x, y, k * scale));
                 return result(worst, 1e-10, {{"grid", "5x5x5"}});
               }});
  c.push_back({"qnm_sum_convergence", [p, a] {
                 auto s = qnm_spectrum(p, 400);
                 double r100 = verify_qnm_sum_identity(s, 0.37 * a, 0.37 * a, 100).averaged;
                 double r400 = verify_qnm_sum_identity(s, 0.37 * a, 0.37 * a, 400).averaged;
                 return result(r400 / r100, 0.5, {{"residual_100", r100}, {"residual_400", r400}});
               }});
  c.push_back({"dos_propagator_link", [p, a, scale] {
                 double worst = 0.0;
                 for (double x : unit_grid(a))
                   for (double k : {0.2, 0.7, 1.1, 1.9, 3.3}) {
                     double w = k * scale;
                     double d = local_dos_exact(p, x, w);
                     double viaD = -2.0 * w / std::numbers::pi * feynman_exact(p, x, x, w).imag();
                     worst = std::max(worst, std::abs(d - viaD));
                   }
                 return result(worst, 1e-8, {{"grid", "5x5"}});
               }});
  c.push_back({"energy_balance", [p] {
                 auto s = qnm_spectrum(p, 6);
                 double worst = 0.0;
                 for (int j = 0; j <= 5; ++j) worst = std::max(worst, energy_balance_check(s.mode(j), p).residual);
                 json extra = {{"modes", 6}};
                 if (p.n0() != 1.0) extra["note"] = "flux scaled by the outside impedance";
                 return result(worst, 1e-8, extra);
               }});
  if (auto rod = as_rod(p)) {
    c.push_back({"correlator_equivalence", [p, rod, a, scale] {
                   auto s = qnm_spectrum(p, 200);
                   double worst = 0.0;
                   for (double beta : {1.0, std::numeric_limits<double>::infinity()}) {
                     ThermalState th(beta);
                     for (double x : {0.2 * a, 0.5 * a, 0.8 * a})
                       for (double y : {0.3 * a, 0.6 * a, 0.9 * a})
                         for (double k : {0.45, 1.3, 2.6}) {
                           double w = k * scale;
                           cplx ref = correlator_closed_rod(*rod, x, y, w, th);
                           cplx d = correlator_diagonal(s, x, y, w, th).value;
                           cplx nd = correlator_nondiagonal(s, x, y, w, th).value;
                           double m = std::abs(ref);
                           worst = std::max({worst, std::abs(d - ref) / m, std::abs(nd - ref) / m, std::abs(d - nd) / m});
                         }
                   }
                   return result(worst, 1e-3, {{"grid", "3x3x3"}, {"terms", 200}});
                 }});
  }
  return c;
}

std::vector<Check> commutator_checks(const CavityProfile& p, int jmax) {
  return {{"commutator_dual_forms", [p, jmax] {
             auto s = qnm_spectrum(p, std::max(1, jmax + 1));
             auto rows = commutator_table(s, p, jmax);
             double worst = 0.0;
             json table = json::array();
             for (const auto& r : rows) {
               double d = std::abs(r.integral - r.surface);
               worst = std::max(worst, d);
               table.push_back({r.j, r.k, r.integral.real(), r.integral.imag(), r.surface.real(), r.surface.imag()});
             }
             return result(worst, 1e-8,
                           {{"jmax", jmax},
                            {"pairs", rows.size()},
                            {"columns", {"j", "k", "integral_re", "integral_im", "surface_re", "surface_im"}},
                            {"table", table}});
           }}};
}

std::vector<Check> oracle_checks(const CavityProfile& p) {
  auto rod = as_rod(p);
  if (!rod) return {{"mu_oracle", [] { return skipped("only defined for a uniform rod"); }}};
  const double gamma = std::abs(rod_qnm_frequency(*rod, 0).imag());
  const double Lambda = std::max(200.0 * p.a, 8.0 / gamma);
  return {{"mu_correlator", [rod, Lambda] {
             auto u = universe_modes_between(*rod, Lambda, 0.0, 4.5 * std::numbers::pi / (rod->n * rod->a));
             ThermalState th(1.0);
             double worst = 0.0;
             const double s = std::numbers::pi / (rod->n * rod->a);
             for (double k : {0.4, 0.5, 0.8, 1.6, 3.5}) {
               double w = k * s;
               cplx ex = correlator_closed_rod(*rod, 0.5 * rod->a, 0.5 * rod->a, w, th);
               worst = std::max(worst, std::abs(mu_correlator(u, 0.5 * rod->a, 0.5 * rod->a, w, th) - ex) / std::abs(ex));
             }
             return result(worst, 1e-2, {{"Lambda", Lambda}, {"estimator", "local_spacing"}});
           }},
          {"mu_dos", [p, rod, Lambda] {
             auto u = universe_modes_between(*rod, Lambda, 0.0, 4.5 * std::numbers::pi / (rod->n * rod->a));
             double worst = 0.0;
             const double s = std::numbers::pi / (rod->n * rod->a);
             for (double k : {0.4, 0.5, 0.8, 1.6, 3.5}) {
               double w = k * s;
               double ex = local_dos_exact(p, 0.5 * rod->a, w);
               worst = std::max(worst, std::abs(mu_dos(u, 0.5 * rod->a, w) - ex) / std::abs(ex));
             }
             return result(worst, 2e-2, {{"Lambda", Lambda}, {"estimator", "local_spacing"}});
           }}};
}

}  // namespace

VerifyOutcome verify(const CavityProfile& p, const std::string& suite, int jmax, int threads) {
  VerifyOutcome o;
  o.report["suite"] = suite;
  o.report["jmax"] = jmax;
  o.report["profile"] = json::parse(profile_to_json(p));
  auto violations = validate(p);
  if (!violations.empty()) {
    o.report["violations"] = json::array();
    for (auto v : violations) o.report["violations"].push_back(to_string(v));
    o.report["pass"] = false;
    o.exit_code = 2;
    return o;
  }
  if (suite != "all" && suite != "identities" && suite != "commutators" && suite != "oracle")
    throw Error(ErrorCode::InvalidInput, "unknown suite " + suite);
  if (jmax < 1) throw Error(ErrorCode::InvalidInput, "jmax must be >= 1");
  std::vector<Check> checks;
  auto add = [&](std::vector<Check> more) { checks.insert(checks.end(), more.begin(), more.end()); };
  if (suite == "all" || suite == "identities") add(identity_checks(p, jmax));
  if (suite == "all" || suite == "commutators") add(commutator_checks(p, jmax));
  if (suite == "all" || suite == "oracle") add(oracle_checks(p));

  auto results = parallel_map(checks.size(), threads, [&](std::size_t i) {
    json j;
    j["check"] = checks[i].name;
    try {
      json r = checks[i].run();
      for (auto& [k, v] : r.items()) j[k] = v;
    } catch (const Error& e) {
      j["error"] = e.what();
      j["pass"] = false;
    }
    return j;
  });
  bool pass = true;
  o.report["checks"] = json::array();
  for (auto& r : results) {
    pass = pass && r["pass"].get<bool>();
    o.report["checks"].push_back(std::move(r));
  }
  o.report["pass"] = pass;
  o.exit_code = pass ? 0 : 1;
  return o;
}

}  // namespace qnmcav::cli
