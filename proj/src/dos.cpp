#include "qnmcav/dos.hpp"

#include <cmath>
#include <numbers>

#include "qnmcav/errors.hpp"
#include "qnmcav/greens.hpp"
#include "qnmcav/thermal.hpp"

namespace qnmcav {

namespace {
constexpr double kPi = std::numbers::pi;
}

double local_dos_exact(const CavityProfile& p, double x, double omega) {
  if (!(omega > 0.0)) throw Error(ErrorCode::InvalidInput, "local DOS needs omega > 0");
  return -(2.0 * omega / kPi) * retarded_green_exact(p, x, x, omega).imag();
}

SeriesResult local_dos_diagonal(const Spectrum& s, double x, double omega, const SeriesConfig& cfg) {
  check_config(cfg);
  auto r = pair_sum(
      s, cfg.qnm_terms,
      [&](const QnmMode& m) {
        cplx f = m.value(x);
        return f * f / (m.omega * (m.omega - omega));
      },
      cfg.tail_policy, cfg.extrapolate);
  r.value = omega / kPi * r.value.imag();
  r.tail_estimate *= omega / kPi;
  return r;
}

SeriesResult local_dos_nondiagonal(const Spectrum& s, double x, double omega, const SeriesConfig& cfg) {
  if (s.size() == 0) return {};
  auto chi = chi_series(s, x, omega, cfg);
  double c = s.representatives()[0].n0 * omega * omega / (2.0 * kPi);
  SeriesResult r;
  r.value = c * std::norm(chi.value);
  r.terms_used = chi.terms_used;
  r.tail_estimate = c * 2.0 * std::abs(chi.value) * chi.tail_estimate;
  return r;
}

double local_dos(DosSource src, const Spectrum& s, const CavityProfile& p, double x, double omega,
                 const SeriesConfig& cfg) {
  switch (src) {
    case DosSource::Exact:
      return local_dos_exact(p, x, omega);
    case DosSource::Diagonal:
      return local_dos_diagonal(s, x, omega, cfg).value.real();
    case DosSource::Nondiagonal:
      return local_dos_nondiagonal(s, x, omega, cfg).value.real();
  }
  return 0.0;
}

double dos_resonance_approx(ResonanceKind kind, const QnmMode& m, double x, double omega) {
  cplx f = m.value(x);
  if (kind == ResonanceKind::Diagonal) return omega / kPi * (f * f / (m.omega * (m.omega - omega))).imag();
  double dr = omega - m.omega.real(), g = m.omega.imag();
  return m.n0 * std::norm(m.f_a * f) / (2.0 * kPi * (dr * dr + g * g));
}

ResonanceWindow default_window(const Spectrum& s, int j, double widths) {
  QnmMode m = s.mode(j);
  double c = m.omega.real(), h = widths * std::abs(m.omega.imag());
  for (int k : {j - 1, j + 1}) {
    double other;
    try {
      other = s.mode(k).omega.real();
    } catch (const Error&) {
      continue;
    }
    if (other != c) h = std::min(h, 0.5 * std::abs(other - c));
  }
  return {c, h};
}

void check_window(const Spectrum& s, int j, const ResonanceWindow& w) {
  for (const auto& m : s.all_modes()) {
    if (m.j == j) continue;
    if (std::abs(m.omega.real() - w.center) <= w.halfwidth)
      throw Error(ErrorCode::WindowOverlap, "resonance window contains mode " + std::to_string(m.j));
  }
}

double interior_intensity(const QnmMode& m, const CavityProfile& p) {
  QuadRule r = segment_rule(p, std::abs(m.omega), 4);
  return integrate(r, [&](double x) { return rho_at(p, x, Side::Inside) * std::norm(m.value(x)); });
}

UnitWeight unit_weight_integral(const CavityProfile& p, const Spectrum& s, int j, std::optional<ResonanceWindow> w) {
  QnmMode m = s.mode(j);
  ResonanceWindow win = w ? *w : default_window(s, j);
  check_window(s, j, win);
  const double g = std::abs(m.omega.imag());
  const double lo = std::max(win.center - win.halfwidth, 0.0), hi = win.center + win.halfwidth;
  if (!(hi > lo)) throw Error(ErrorCode::InvalidInput, "empty resonance window");
  // x-integral of rho d_lorentzian factorizes into the interior intensity
  const double amp = m.n0 * std::norm(m.f_a) * interior_intensity(m, p) / (2.0 * kPi);
  double err = 0.0;
  auto lor = [&](double om) {
    double d = om - m.omega.real();
    return amp / (d * d + g * g);
  };
  std::vector<double> br{lo};
  for (double k : {-5.0, -1.0, 0.0, 1.0, 5.0}) {
    double b = win.center + k * g;
    if (b > lo && b < hi) br.push_back(b);
  }
  br.push_back(hi);
  double inside = integrate_adaptive_pieces(lor, br, 1e-12, &err);
  // lorentzian mass outside [lo, hi]
  double outside = amp / g * (kPi - std::atan((hi - m.omega.real()) / g) + std::atan((lo - m.omega.real()) / g));
  UnitWeight u;
  u.j = j;
  u.in_window = inside;
  u.weight = inside + outside;
  u.window = win;
  u.error_budget = outside + err;
  return u;
}

double surface_ratio(const QnmMode& m) { return m.n0 * std::norm(m.f_a) / (2.0 * std::abs(m.omega.imag())); }

double second_sum_rule_check(const CavityProfile& p, double x, double omega_max) {
  if (!(omega_max > 0.0)) throw Error(ErrorCode::InvalidInput, "omega_max must be positive");
  std::vector<double> br;
  const double step = 0.25;
  for (double w = 0.0; w < omega_max; w += step) br.push_back(w);
  br.push_back(omega_max);
  double integral = integrate_adaptive_pieces(
      [&](double w) { return w <= 0.0 ? 0.0 : local_dos_exact(p, x, w); }, br, 1e-10);
  double expected = omega_max / (kPi * std::sqrt(rho_at(p, x, Side::Inside)));
  return std::abs(integral - expected) / expected;
}

double lorentzian_deviation(const CavityProfile& p, const Spectrum& s, int j, double x) {
  QnmMode m = s.mode(j);
  ResonanceWindow win = default_window(s, j);
  const double peak = dos_resonance_approx(ResonanceKind::Lorentzian, m, x, m.omega.real());
  double worst = 0.0;
  const int n = 401;
  for (int i = 0; i < n; ++i) {
    double om = win.center - win.halfwidth + 2.0 * win.halfwidth * i / (n - 1);
    if (om <= 0.0) continue;
    double diff = local_dos_exact(p, x, om) - dos_resonance_approx(ResonanceKind::Lorentzian, m, x, om);
    worst = std::max(worst, std::abs(diff) / peak);
  }
  return worst;
}

}  // namespace qnmcav
