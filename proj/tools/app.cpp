#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

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

struct Options {
  std::string config_path;
  int jmax = 20;
  double tol = 1e-13;
  double x = 0.5, y = 0.5;
  bool x_set = false, y_set = false;
  std::vector<double> omega, t;
  std::string omega_range, t_range;
  std::string method = "exact";
  int nterms = 0;
  int matsubara = 0;
  std::string beta = "1";
  std::string form;
  std::string source = "exact";
  bool unit_weight = false;
  int j = 0;
  std::string check;
  std::string force_path;
  std::string a0 = "0,0";
  std::string rod;
  double Lambda = 200.0;
  std::string compare = "correlator";
  std::string betas = "0.5,1,2";
  std::string out_dir = ".";
  std::string suite = "all";
  bool all = false, commutators = false;
  int verify_jmax = 8;
};

std::vector<double> grid_from(const std::vector<double>& list, const std::string& range) {
  if (!range.empty()) return parse_range(range);
  return list;
}

void apply_config_file(RunConfig& c, const std::string& path, bool profile_given) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot read config " + path);
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("config JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "config must be a JSON object");
  for (auto& [k, v] : j.items())
    if (k != "profile" && k != "series" && k != "threads")
      throw Error(ErrorCode::InvalidInput, "unknown config key " + k);
  try {
    if (j.contains("profile") && !profile_given) c.profile_source = j["profile"].dump();
    if (j.contains("threads")) c.threads = j["threads"].get<int>();
    if (j.contains("series")) {
      const auto& s = j["series"];
      for (auto& [k, v] : s.items())
        if (k != "qnm_terms" && k != "matsubara_terms" && k != "tolerance" && k != "tail_policy" && k != "extrapolate")
          throw Error(ErrorCode::InvalidInput, "unknown series key " + k);
      c.series.qnm_terms = s.value("qnm_terms", c.series.qnm_terms);
      c.series.matsubara_terms = s.value("matsubara_terms", c.series.matsubara_terms);
      c.series.tolerance = s.value("tolerance", c.series.tolerance);
      c.series.extrapolate = s.value("extrapolate", c.series.extrapolate);
      if (s.contains("tail_policy")) {
        auto tp = s["tail_policy"].get<std::string>();
        if (tp == "none")
          c.series.tail_policy = TailPolicy::None;
        else if (tp == "geometric")
          c.series.tail_policy = TailPolicy::GeometricEstimate;
        else
          throw Error(ErrorCode::InvalidInput, "tail_policy must be none or geometric");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("config JSON: ") + e.what());
  }
}

void require_points(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw Error(ErrorCode::InvalidInput, std::string("no ") + what + " points given");
}

int cmd_spectrum(RunConfig& c, const Options& o, std::ostream& out) {
  if (o.jmax < 0) throw Error(ErrorCode::InvalidInput, "jmax must be >= 0");
  c.params = {{"jmax", o.jmax}, {"tol", o.tol}};
  auto s = qnm_spectrum(c.profile, o.jmax + 2, o.tol);
  std::vector<QnmMode> modes;
  for (int j = -o.jmax; j <= o.jmax; ++j) {
    try {
      modes.push_back(s.mode(j));
    } catch (const Error&) {
    }
  }
  double wmax = 0.0;
  for (const auto& m : modes) wmax = std::max(wmax, std::abs(m.omega));
  auto grid = make_field_grid(c.profile, wmax, 8);
  Table t{{"j", "re_omega", "im_omega", "f_a_re", "f_a_im", "norm_residual"}, {}, {}};
  t.rows = parallel_map(modes.size(), c.threads, [&](std::size_t i) {
    const auto& m = modes[i];
    auto f = mode_field_pair(m, c.profile, grid);
    double r = std::abs(bilinear_product(f, f, c.profile) - 2.0 * m.omega) / std::abs(2.0 * m.omega);
    return std::vector<double>{double(m.j), m.omega.real(), m.omega.imag(), m.f_a.real(), m.f_a.imag(), r};
  });
  emit(render(t, c), c, out);
  return 0;
}

int cmd_greens(RunConfig& c, const Options& o, std::ostream& out) {
  const double y = o.y_set ? o.y : o.x;
  auto w = grid_from(o.omega, o.omega_range);
  auto ts = grid_from(o.t, o.t_range);
  if (w.empty() == ts.empty()) throw Error(ErrorCode::InvalidInput, "give exactly one of --omega and --t");
  if (o.method != "exact" && o.method != "qnm") throw Error(ErrorCode::InvalidInput, "method must be exact or qnm");
  const bool time = !ts.empty();
  if (time && o.method == "exact") throw Error(ErrorCode::InvalidInput, "the exact method is frequency-domain only");
  if (o.nterms > 0) c.series.qnm_terms = o.nterms;
  check_config(c.series);
  c.params = {{"x", o.x}, {"y", y}, {"method", o.method}};
  Spectrum s;
  if (o.method == "qnm") s = qnm_spectrum(c.profile, c.series.qnm_terms);
  const auto& pts = time ? ts : w;
  Table t{{"x", "y", time ? "t" : "omega", "re", "im", "tail_estimate"}, {}, {}};
  t.rows = parallel_map(pts.size(), c.threads, [&](std::size_t i) {
    SeriesResult r;
    if (o.method == "exact")
      r.value = retarded_green_exact(c.profile, o.x, y, pts[i]);
    else if (time)
      r = retarded_green_qnm_time(s, o.x, y, pts[i], c.series);
    else
      r = retarded_green_qnm_freq(s, o.x, y, pts[i], c.series);
    return std::vector<double>{o.x, y, pts[i], r.value.real(), r.value.imag(), r.tail_estimate};
  });
  emit(render(t, c), c, out);
  return 0;
}

int cmd_correlate(RunConfig& c, const Options& o, std::ostream& out) {
  const double beta = parse_beta(o.beta);
  const double y = o.y_set ? o.y : o.x;
  const std::string form = o.form.empty() ? "diagonal" : o.form;
  const bool time = form == "realtime" || form == "subtracted";
  if (!time && form != "diagonal" && form != "nondiagonal" && form != "closed")
    throw Error(ErrorCode::InvalidInput, "unknown correlator form " + form);
  auto pts = time ? grid_from(o.t, o.t_range) : grid_from(o.omega, o.omega_range);
  require_points(pts, time ? "--t" : "--omega");
  if (!(time ? o.omega.empty() && o.omega_range.empty() : o.t.empty() && o.t_range.empty()))
    throw Error(ErrorCode::InvalidInput, time ? "form " + form + " takes --t" : "form " + form + " takes --omega");
  if (o.nterms > 0) c.series.qnm_terms = o.nterms;
  if (o.matsubara > 0) c.series.matsubara_terms = o.matsubara;
  check_config(c.series);
  c.params = {{"beta", o.beta}, {"form", form}, {"x", o.x}, {"y", y}};
  ThermalState th(beta);
  std::optional<DielectricRod> rod;
  Spectrum s;
  if (form == "closed") {
    rod = as_rod(c.profile);
    if (!rod) throw Error(ErrorCode::InvalidInput, "the closed form needs a rod profile");
  } else {
    s = qnm_spectrum(c.profile, c.series.qnm_terms);
  }
  std::optional<RealtimeCorrelator> rt;
  if (form == "realtime") rt.emplace(s, c.profile, o.x, y, th, c.series);
  Table t{{"beta", "x", "y", time ? "t" : "omega", "re", "im", "tail_estimate"}, {}, {}};
  t.rows = parallel_map(pts.size(), c.threads, [&](std::size_t i) {
    SeriesResult r;
    const double v = pts[i];
    if (form == "diagonal")
      r = correlator_diagonal(s, o.x, y, v, th, c.series);
    else if (form == "nondiagonal")
      r = correlator_nondiagonal(s, o.x, y, v, th, c.series);
    else if (form == "closed")
      r.value = correlator_closed_rod(*rod, o.x, y, v, th);
    else if (form == "subtracted")
      r = subtracted_correlator(s, o.x, y, v, th, c.series);
    else {
      r.value = (*rt)(v);
      r.tail_estimate = rt->matsubara_tail(v);
    }
    return std::vector<double>{beta, o.x, y, v, r.value.real(), r.value.imag(), r.tail_estimate};
  });
  emit(render(t, c), c, out);
  return 0;
}

int cmd_dos(RunConfig& c, const Options& o, std::ostream& out) {
  if (o.nterms > 0) c.series.qnm_terms = o.nterms;
  check_config(c.series);
  if (o.unit_weight) {
    c.params = {{"unit_weight", true}, {"j", o.j}};
    auto s = qnm_spectrum(c.profile, std::max(o.j + 3, 4));
    auto u = unit_weight_integral(c.profile, s, o.j);
    json j;
    j["j"] = u.j;
    j["weight"] = u.weight;
    j["window"] = {{"center", u.window.center}, {"halfwidth", u.window.halfwidth}};
    j["error_budget"] = u.error_budget;
    j["config"] = config_json(c);
    emit(j.dump(2) + "\n", c, out);
    return 0;
  }
  auto pts = grid_from(o.omega, o.omega_range);
  require_points(pts, "--omega-range");
  const std::string& src = o.source;
  if (src != "exact" && src != "diagonal" && src != "nondiagonal" && src != "lorentzian")
    throw Error(ErrorCode::InvalidInput, "unknown DOS source " + src);
  c.params = {{"x", o.x}, {"source", src}};
  Spectrum s;
  if (src != "exact") s = qnm_spectrum(c.profile, c.series.qnm_terms);
  Table t{{"x", "omega", "dos", "tail_estimate"}, {}, {}};
  t.rows = parallel_map(pts.size(), c.threads, [&](std::size_t i) {
    const double w = pts[i];
    SeriesResult r;
    if (src == "exact") {
      r.value = local_dos_exact(c.profile, o.x, w);
    } else if (src == "diagonal") {
      r = local_dos_diagonal(s, o.x, w, c.series);
    } else if (src == "nondiagonal") {
      r = local_dos_nondiagonal(s, o.x, w, c.series);
    } else {
      double sum = 0.0;
      for (const auto& m : s.representatives()) sum += dos_resonance_approx(ResonanceKind::Lorentzian, m, o.x, w);
      r.value = sum;
    }
    return std::vector<double>{o.x, w, r.value.real(), r.tail_estimate};
  });
  emit(render(t, c), c, out);
  return 0;
}

PropagatorForm parse_form(const std::string& f) {
  if (f == "nondiagonal") return PropagatorForm::Nondiagonal;
  if (f == "diagonal") return PropagatorForm::Diagonal;
  if (f == "diagonal-alt") return PropagatorForm::DiagonalAlt;
  if (f == "closed") return PropagatorForm::ClosedRod;
  if (f == "exact") return PropagatorForm::Exact;
  throw Error(ErrorCode::InvalidInput, "unknown propagator form " + f);
}

int cmd_propagator(RunConfig& c, const Options& o, std::ostream& out) {
  if (o.nterms > 0) c.series.qnm_terms = o.nterms;
  check_config(c.series);
  if (!o.check.empty()) {
    if (o.check != "ra") throw Error(ErrorCode::InvalidInput, "only --check ra is available");
    const double x = o.x_set ? o.x : 0.9 * c.profile.a;
    auto pts = o.omega_range.empty() ? parse_range("0.005:5:1000") : parse_range(o.omega_range);
    c.params = {{"check", "ra"}, {"j", o.j}, {"x", x}};
    auto s = qnm_spectrum(c.profile, std::max(o.j + 2, 2));
    auto m = s.mode(o.j);
    auto rows = parallel_map(pts.size(), c.threads, [&](std::size_t i) {
      auto ra = check_retarded_advanced(c.profile, m, x, pts[i]);
      double im_ra = resonance_approx_D(ResonanceApprox::Ra, m, x, pts[i]).imag();
      double im_rap = resonance_approx_D(ResonanceApprox::RaPrime, m, x, pts[i]).imag();
      return std::array<double, 5>{ra.full, ra.ra, ra.ra_prime, im_ra, im_rap};
    });
    std::array<double, 5> mx{0, 0, 0, -1e300, -1e300};
    for (const auto& r : rows)
      for (int k = 0; k < 5; ++k) mx[k] = std::max(mx[k], r[k]);
    json j;
    j["check"] = "retarded_advanced";
    j["j"] = o.j;
    j["x"] = x;
    j["omega_points"] = pts.size();
    j["max_residual"] = {{"full", mx[0]}, {"ra", mx[1]}, {"ra_prime", mx[2]}};
    j["max_im"] = {{"ra", mx[3]}, {"ra_prime", mx[4]}};
    j["ra_prime_relation_violated"] = mx[2] > 1e-3;
    j["ra_prime_positive_im"] = mx[4] > 0.0;
    j["pass"] = mx[0] < 1e-12 && mx[1] < 1e-12 && mx[3] <= 0.0 && mx[2] > 1e-3 && mx[4] > 0.0;
    j["config"] = config_json(c);
    emit(j.dump(2) + "\n", c, out);
    return j["pass"].get<bool>() ? 0 : 1;
  }
  const std::string fname = o.form.empty() ? "exact" : o.form;
  const auto form = parse_form(fname);
  auto pts = grid_from(o.omega, o.omega_range);
  require_points(pts, "--omega-range");
  const double y = o.y_set ? o.y : o.x;
  c.params = {{"form", fname}, {"x", o.x}, {"y", y}};
  Spectrum s;
  if (form != PropagatorForm::ClosedRod && form != PropagatorForm::Exact)
    s = qnm_spectrum(c.profile, c.series.qnm_terms);
  Table t{{"x", "y", "omega", "re", "im", "tail_estimate"}, {}, {}};
  t.rows = parallel_map(pts.size(), c.threads, [&](std::size_t i) {
    auto r = feynman(form, s, c.profile, o.x, y, pts[i], c.series);
    return std::vector<double>{o.x, y, pts[i], r.value.real(), r.value.imag(), r.tail_estimate};
  });
  emit(render(t, c), c, out);
  return 0;
}

ForceSignal read_force(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot read force file " + path);
  std::vector<double> ts;
  ForceSignal sig;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (ts.empty()) continue;
      throw Error(ErrorCode::InvalidInput, "non-numeric force row: " + line);
    }
    if (v.size() < 2 || v.size() > 3) throw Error(ErrorCode::InvalidInput, "force rows are t,re_b[,im_b]");
    ts.push_back(v[0]);
    sig.b.emplace_back(v[1], v.size() == 3 ? v[2] : 0.0);
  }
  if (ts.size() < 2) throw Error(ErrorCode::InvalidInput, "force signal needs at least two samples");
  sig.t0 = ts[0];
  sig.dt = (ts.back() - ts[0]) / (ts.size() - 1);
  if (!(sig.dt > 0)) throw Error(ErrorCode::InvalidInput, "force times must increase");
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (std::abs(ts[i] - (sig.t0 + i * sig.dt)) > 1e-9 * std::max(1.0, std::abs(ts.back())))
      throw Error(ErrorCode::GridMismatch, "force samples must be uniformly spaced");
  return sig;
}

int cmd_drive(RunConfig& c, const Options& o, std::ostream& out) {
  if (o.force_path.empty()) throw Error(ErrorCode::InvalidInput, "--force is required");
  auto sig = read_force(o.force_path);
  std::vector<double> a0;
  {
    std::stringstream ss(o.a0);
    std::string cell;
    try {
      while (std::getline(ss, cell, ',')) a0.push_back(std::stod(cell));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "--a0 must be re,im");
    }
  }
  if (a0.size() != 2) throw Error(ErrorCode::InvalidInput, "--a0 must be re,im");
  c.params = {{"j", o.j}, {"force", o.force_path}, {"a0", o.a0}};
  auto s = qnm_spectrum(c.profile, std::max(std::abs(o.j) + 2, 2));
  auto resp = driven_mode_response(s.mode(o.j), sig, cplx(a0[0], a0[1]));
  Table t{{"t", "re_a", "im_a"}, {}, {"residual: " + format_double(resp.residual)}};
  for (std::size_t i = 0; i < resp.t.size(); ++i) t.rows.push_back({resp.t[i], resp.a[i].real(), resp.a[i].imag()});
  emit(render(t, c), c, out);
  return 0;
}

int cmd_oracle(RunConfig& c, const Options& o, std::ostream& out) {
  DielectricRod rod;
  if (!o.rod.empty()) {
    rod = parse_rod(o.rod);
    c.profile = make_dielectric_rod(rod.n, rod.n0, rod.a);
  } else if (auto r = as_rod(c.profile)) {
    rod = *r;
  } else {
    throw Error(ErrorCode::InvalidInput, "the oracle needs a rod");
  }
  if (o.compare != "correlator" && o.compare != "dos") throw Error(ErrorCode::InvalidInput, "compare correlator or dos");
  const double x = o.x * rod.a;
  const double y = (o.y_set ? o.y : o.x) * rod.a;
  const double w = o.omega.empty() ? 1.0 : o.omega.front();
  const double beta = parse_beta(o.beta);
  c.params = {{"Lambda", o.Lambda}, {"compare", o.compare}, {"x", x}, {"y", y}, {"omega", w}, {"beta", o.beta}};
  auto u = universe_modes_between(rod, o.Lambda, 0.0, 1.5 * std::abs(w) + 20.0 * std::numbers::pi / o.Lambda);
  json j;
  j["quantity"] = o.compare;
  if (o.compare == "correlator") {
    ThermalState th(beta);
    cplx q = correlator_closed_rod(rod, x, y, w, th);
    cplx m = mu_correlator(u, x, y, w, th);
    j["qnm_value"] = q.real();
    j["mu_value"] = m.real();
    j["rel_err"] = std::abs(m - q) / std::abs(q);
  } else {
    double q = local_dos_exact(c.profile, x, w);
    double m = mu_dos(u, x, w);
    j["qnm_value"] = q;
    j["mu_value"] = m;
    j["rel_err"] = std::abs(m - q) / std::abs(q);
  }
  j["config"] = config_json(c);
  emit(j.dump(2) + "\n", c, out);
  return 0;
}

int cmd_figures(RunConfig& c, const Options& o, std::ostream& out) {
  DielectricRod rod{5, 1, 1};
  if (!o.rod.empty())
    rod = parse_rod(o.rod);
  else if (auto r = as_rod(c.profile))
    rod = *r;
  c.profile = make_dielectric_rod(rod.n, rod.n0, rod.a);
  std::vector<double> betas;
  {
    std::stringstream ss(o.betas);
    std::string cell;
    while (std::getline(ss, cell, ',')) betas.push_back(parse_beta(cell));
  }
  if (betas.empty()) throw Error(ErrorCode::InvalidInput, "empty beta list");
  check_config(c.series);
  c.params = {{"betas", o.betas}};
  auto f = figure_data(rod, betas, c.series, c.threads);
  std::filesystem::create_directories(o.out_dir);
  auto write = [&](const std::string& name, const std::string& axis, const std::vector<double>& grid,
                   const std::vector<std::vector<double>>& data) {
    Table t;
    t.columns.push_back(axis);
    for (double b : betas) t.columns.push_back("beta=" + (std::isinf(b) ? std::string("inf") : format_double(b)));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::vector<double> row{grid[i]};
      for (const auto& d : data) row.push_back(d[i]);
      t.rows.push_back(std::move(row));
    }
    RunConfig fc = c;
    fc.format = "csv";
    fc.out_path = (std::filesystem::path(o.out_dir) / name).string();
    emit(render(t, fc), fc, out);
  };
  write("fig1.csv", "x", f.x, f.fig1);
  write("fig2.csv", "t", f.t, f.fig2);
  json summary;
  summary["files"] = {"fig1.csv", "fig2.csv"};
  summary["series"] = json::array();
  for (std::size_t b = 0; b < betas.size(); ++b) {
    auto it = std::max_element(f.fig1[b].begin(), f.fig1[b].end());
    json e;
    e["beta"] = std::isinf(betas[b]) ? json("inf") : json(betas[b]);
    e["fig1_peak_x"] = f.x[it - f.fig1[b].begin()];
    e["fig2_detrended_extrema"] = count_detrended_extrema(f.t, f.fig2[b]);
    summary["series"].push_back(e);
  }
  summary["config"] = config_json(c);
  RunConfig sc = c;
  emit(summary.dump(2) + "\n", sc, out);
  return 0;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasinormal-mode toolkit for an open one-dimensional scalar cavity", "qnmcav"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  Options o;
  auto* profile_opt = app.add_option("--profile", c.profile_source, "profile JSON file, inline JSON, or rod n,n0,a");
  app.add_option("--config", o.config_path, "JSON with profile, series and threads entries");
  auto* threads_opt = app.add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--out", c.out_path, "output file (stdout by default); csv or json selects the format");
  auto* format_opt = app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* sp = app.add_subcommand("spectrum", "QNM frequencies and surface values");
  sp->add_option("--jmax", o.jmax);
  sp->add_option("--tol", o.tol);

  auto add_xy = [&](CLI::App* s) {
    s->add_option("--x", o.x)->each([&](const std::string&) { o.x_set = true; });
    s->add_option("--y", o.y)->each([&](const std::string&) { o.y_set = true; });
  };
  auto add_omega = [&](CLI::App* s) {
    s->add_option("--omega", o.omega)->delimiter(',');
    s->add_option("--omega-range", o.omega_range, "lo:hi:n");
  };
  auto add_t = [&](CLI::App* s) {
    s->add_option("--t", o.t)->delimiter(',');
    s->add_option("--t-range", o.t_range, "lo:hi:n");
  };

  auto* gr = app.add_subcommand("greens", "retarded Green function");
  add_xy(gr);
  add_omega(gr);
  add_t(gr);
  gr->add_option("--method", o.method);
  gr->add_option("--nterms", o.nterms);

  auto* co = app.add_subcommand("correlate", "thermal correlation function");
  add_xy(co);
  add_omega(co);
  add_t(co);
  co->add_option("--beta", o.beta, "inverse temperature or inf");
  co->add_option("--form", o.form)->check(CLI::IsMember({"diagonal", "nondiagonal", "closed", "realtime", "subtracted"}));
  co->add_option("--nterms", o.nterms);
  co->add_option("--matsubara", o.matsubara);

  auto* ds = app.add_subcommand("dos", "local density of states");
  ds->add_option("--x", o.x);
  add_omega(ds);
  ds->add_option("--source", o.source)->check(CLI::IsMember({"exact", "diagonal", "nondiagonal", "lorentzian"}));
  ds->add_option("--nterms", o.nterms);
  ds->add_flag("--unit-weight", o.unit_weight);
  ds->add_option("--j", o.j);

  auto* pr = app.add_subcommand("propagator", "zero-temperature Feynman propagator");
  add_xy(pr);
  add_omega(pr);
  pr->add_option("--form", o.form);
  pr->add_option("--nterms", o.nterms);
  pr->add_option("--check", o.check);
  pr->add_option("--j", o.j);

  auto* dr = app.add_subcommand("drive", "driven mode amplitude");
  dr->add_option("--force", o.force_path, "CSV with t,re_b[,im_b]");
  dr->add_option("--j", o.j);
  dr->add_option("--a0", o.a0, "initial amplitude re,im");

  auto* orc = app.add_subcommand("oracle", "compare against the box-quantized universe");
  orc->add_option("--rod", o.rod, "n,n0,a");
  orc->add_option("--Lambda", o.Lambda);
  orc->add_option("--compare", o.compare)->check(CLI::IsMember({"correlator", "dos"}));
  orc->add_option("--x", o.x, "position in units of a");
  orc->add_option("--y", o.y, "position in units of a")->each([&](const std::string&) { o.y_set = true; });
  orc->add_option("--omega", o.omega)->delimiter(',');
  orc->add_option("--beta", o.beta);

  auto* fg = app.add_subcommand("figures", "equal-space correlation data files");
  fg->add_option("--rod", o.rod, "n,n0,a");
  fg->add_option("--betas", o.betas, "comma separated, inf allowed");
  fg->add_option("--out-dir", o.out_dir);

  auto* vf = app.add_subcommand("verify", "run the identity suites");
  vf->add_option("--suite", o.suite)->check(CLI::IsMember({"all", "identities", "commutators", "oracle"}));
  vf->add_flag("--all", o.all);
  vf->add_flag("--commutators", o.commutators);
  vf->add_option("--jmax", o.verify_jmax);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (c.out_path == "csv" || c.out_path == "json") {
      if (!format_opt->count()) c.format = c.out_path;
      c.out_path.clear();
    }
    if (!o.config_path.empty()) {
      const int cli_threads = c.threads;
      apply_config_file(c, o.config_path, profile_opt->count() > 0);
      if (threads_opt->count()) c.threads = cli_threads;
      if (c.threads < 1) throw Error(ErrorCode::InvalidInput, "threads must be >= 1");
    }
    c.command = app.get_subcommands().front()->get_name();
    c.profile = load_profile(c.profile_source);

    if (c.command == "verify") {
      std::string suite = o.all ? "all" : (o.commutators ? "commutators" : o.suite);
      auto r = verify(c.profile, suite, o.verify_jmax, c.threads);
      emit(r.report.dump(2) + "\n", c, out);
      if (r.exit_code == 2) err << "invalid profile\n";
      return r.exit_code;
    }
    if (c.command != "oracle" && c.command != "figures") require_valid(c.profile);
    if (c.command == "spectrum") return cmd_spectrum(c, o, out);
    if (c.command == "greens") return cmd_greens(c, o, out);
    if (c.command == "correlate") return cmd_correlate(c, o, out);
    if (c.command == "dos") return cmd_dos(c, o, out);
    if (c.command == "propagator") return cmd_propagator(c, o, out);
    if (c.command == "drive") return cmd_drive(c, o, out);
    if (c.command == "oracle") return cmd_oracle(c, o, out);
    if (c.command == "figures") return cmd_figures(c, o, out);
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qnmcav::cli
