#include "qnmcav/thermal.hpp"

#include <cmath>
#include <numbers>

#include "qnmcav/errors.hpp"
#include "qnmcav/greens.hpp"
#include "qnmcav/special.hpp"

namespace qnmcav {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

double theta(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? 0.0 : 0.5); }

// omega/(1 - exp(-beta omega)) for complex omega, regular at 0.
cplx omega_bose_c(const ThermalState& th, cplx w) {
  if (th.is_zero_temperature()) return w * theta(w.real());
  if (std::abs(th.beta() * w) < 1e-8) return 1.0 / th.beta() + 0.5 * w;
  return w * th.bose(w);
}

}  // namespace

ThermalState::ThermalState(double beta) : beta_(beta) {
  if (!(beta > 0.0)) throw Error(ErrorCode::InvalidInput, "beta must be positive or infinite");
}

cplx ThermalState::bose(cplx w) const {
  if (std::abs(w) < 1e-6) throw Error(ErrorCode::PoleAt, "Bose factor at omega = 0");
  if (is_zero_temperature()) return theta(w.real());
  if (std::abs(w.real()) < 1e-6) {
    double m = std::round(w.imag() * beta_ / (2.0 * kPi));
    if (m != 0.0 && std::abs(w - cplx(0.0, 2.0 * kPi * m / beta_)) < 1e-6)
      throw Error(ErrorCode::PoleAt, "Bose factor at a Matsubara frequency");
  }
  cplx bw = beta_ * w;
  if (bw.real() < -700.0) return -std::exp(bw);
  return 1.0 / (1.0 - std::exp(-bw));
}

double ThermalState::omega_bose(double w) const {
  if (is_zero_temperature()) return w * theta(w);
  double bw = beta_ * w;
  if (std::abs(bw) < 1e-8) return 1.0 / beta_ + 0.5 * w;
  return w / (-std::expm1(-bw));
}

cplx ThermalState::occupation(cplx w) const {
  if (is_zero_temperature()) return w.real() > 0.0 ? 0.0 : (w.real() < 0.0 ? -1.0 : -0.5);
  cplx bw = beta_ * w;
  if (bw.real() > 700.0) return std::exp(-bw);
  return 1.0 / (std::exp(bw) - 1.0);
}

double ThermalState::matsubara(int m) const {
  if (is_zero_temperature()) throw Error(ErrorCode::InvalidInput, "no Matsubara frequencies at T=0");
  return 2.0 * kPi * m / beta_;
}

double force_spectral_density(double omega, const ThermalState& th) {
  if (omega == 0.0) throw Error(ErrorCode::PoleAt, "force spectral density needs omega != 0");
  return 2.0 * th.omega_bose(omega);
}

SeriesResult correlator_diagonal(const Spectrum& s, double x, double y, double omega, const ThermalState& th,
                                 const SeriesConfig& cfg, DiagonalVariant v) {
  check_config(cfg);
  auto term = [&](const QnmMode& m) -> cplx {
    cplx ff = m.value(x) * m.value(y), wj = m.omega;
    if (v == DiagonalVariant::Standard) return ff / (wj * (omega * omega - wj * wj));
    return ff / (2.0 * wj * wj) * (1.0 / (omega - wj) - 1.0 / (omega + wj));
  };
  auto r = pair_sum(s, cfg.qnm_terms, term, cfg.tail_policy, cfg.extrapolate);
  cplx pref = I * th.omega_bose(omega);
  r.value *= pref;
  r.tail_estimate *= std::abs(pref);
  return r;
}

SeriesResult chi_series(const Spectrum& s, double x, double omega, const SeriesConfig& cfg) {
  check_config(cfg);
  return pair_sum(
      s, cfg.qnm_terms, [&](const QnmMode& m) { return m.f_a * m.value(x) / (m.omega * (m.omega - omega)); },
      cfg.tail_policy, cfg.extrapolate);
}

SeriesResult correlator_nondiagonal(const Spectrum& s, double x, double y, double omega, const ThermalState& th,
                                    const SeriesConfig& cfg) {
  if (s.size() == 0) return {};
  auto cx = chi_series(s, x, omega, cfg);
  auto cy = chi_series(s, y, -omega, cfg);
  double A = s.representatives()[0].n0 * th.omega_bose(omega) / 2.0;
  SeriesResult r;
  r.value = A * cx.value * cy.value;
  r.terms_used = cx.terms_used;
  r.tail_estimate = std::abs(A) * (std::abs(cy.value) * cx.tail_estimate + std::abs(cx.value) * cy.tail_estimate);
  return r;
}

cplx correlator_closed_rod(const DielectricRod& rod, double x, double y, double omega, const ThermalState& th) {
  const double n = rod.n, n0 = rod.n0;
  auto s_over_w = [&](double u) { return std::abs(omega) < 1e-12 ? n * u : std::sin(n * omega * u) / omega; };
  double sa = std::sin(n * omega * rod.a), ca = std::cos(n * omega * rod.a);
  double D = n0 * n0 * sa * sa + n * n * ca * ca;
  return 2.0 * n0 * s_over_w(x) * s_over_w(y) * th.omega_bose(omega) / D;
}

cplx driven_coefficient_correlator(const QnmMode& j, const QnmMode& k, cplx omega, const ThermalState& th) {
  return j.n0 * omega_bose_c(th, omega) * j.f_a * k.f_a /
         (2.0 * j.omega * k.omega * (j.omega - omega) * (k.omega + omega));
}

ResumCheck fourier_resum_check(cplx alpha, double z, int n_terms) {
  if (!(z > 0.0 && z < 2.0)) throw Error(ErrorCode::InvalidInput, "fourier_resum_check needs 0 < z < 2");
  if (!(alpha.real() > 0.0)) throw Error(ErrorCode::InvalidInput, "fourier_resum_check needs Re alpha > 0");
  cplx exact = 2.0 * I * std::exp(-alpha * z) / (1.0 - std::exp(-2.0 * alpha));
  auto term = [&](int j) { return std::exp(I * (j * kPi * z)) / (j * kPi - I * alpha); };
  cplx partial = term(0), mean = partial;
  for (int k = 1; k <= n_terms; ++k) {
    partial += term(k) + term(-k);
    mean += partial;
  }
  mean /= static_cast<double>(n_terms + 1);
  return {std::abs(mean - exact), std::abs(partial - exact)};
}

cplx mode_weight_C(const QnmMode& m, double t, const ThermalState& th, const SeriesConfig& cfg,
                   double* matsubara_tail) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidInput, "mode_weight_C needs t > 0");
  if (matsubara_tail) *matsubara_tail = 0.0;
  if (th.is_zero_temperature()) return 0.0;
  const cplx w = m.omega;
  const double beta = th.beta();
  cplx c = 0.5 * std::exp(-I * w * t) * (th.occupation(w) + theta(-w.real()));
  cplx sum = 0.0, last = 0.0;
  const double step = 2.0 * kPi / beta;
  int mm = 1;
  for (; mm <= cfg.matsubara_terms; ++mm) {
    double mu = step * mm;
    last = mu * std::exp(-mu * t) / (mu * mu + w * w);
    sum += last;
    if (mu * t > 40.0 || std::abs(last) < 1e-17 * std::abs(sum)) break;
  }
  if (matsubara_tail && mm > cfg.matsubara_terms) {
    double r = std::exp(-step * t);
    *matsubara_tail = std::abs(last) * r / (1.0 - r) / beta;
  }
  c += I / beta * sum;
  cplx z = I * w * t;
  c -= I / (4.0 * kPi) * (std::exp(z) * exp_integral_E1(z) + std::exp(-z) * exp_integral_E1(-z));
  return c;
}

SeriesResult subtracted_correlator(const Spectrum& s, double x, double y, double t, const ThermalState& th,
                                   const SeriesConfig& cfg) {
  check_config(cfg);
  if (th.is_zero_temperature()) return {0.0, 0, 0.0};
  const int n = std::min<int>(cfg.qnm_terms, static_cast<int>(s.size()));
  PairAccumulator acc(n);
  double mtail = 0.0;
  for (int i = 0; i < n; ++i) {
    const QnmMode& m = s.representatives()[i];
    double tl = 0.0;
    cplx c = mode_weight_C(m, t, th, cfg, &tl);
    cplx term = m.value(x) * m.value(y) * c / m.omega;
    double wgt = 2.0 * pair_weight(m);
    acc.add(wgt * term.real());
    mtail += wgt * std::abs(m.value(x) * m.value(y) / m.omega) * tl;
  }
  auto r = acc.finish(cfg.tail_policy, cfg.extrapolate);
  r.tail_estimate += mtail;
  return r;
}

RealtimeCorrelator::RealtimeCorrelator(const Spectrum& s, const CavityProfile& p, double x, double y,
                                       const ThermalState& th, const SeriesConfig& cfg)
    : beta_(th.beta()) {
  check_config(cfg);
  if (th.is_zero_temperature()) throw Error(ErrorCode::InvalidInput, "real-time correlator needs finite beta");
  const int n = std::min<int>(cfg.qnm_terms, static_cast<int>(s.size()));
  for (int i = 0; i < n; ++i) {
    const QnmMode& r = s.representatives()[i];
    auto add = [&](const QnmMode& m) {
      cplx ff = m.value(x) * m.value(y) / (2.0 * m.omega);
      poles_.push_back({m.omega, ff * th.bose(m.omega), ff * th.occupation(m.omega)});
    };
    add(r);
    if (!r.is_imaginary()) add(r.partner(s.partner_index(r.j)));
  }
  const double L = p.optical_length() + p.n0() * p.a;
  for (int m = 1; m <= cfg.matsubara_terms; ++m) {
    double mu = th.matsubara(m);
    if (mu * L > 300.0) break;
    mats_.push_back(retarded_green_exact(p, x, y, cplx(0.0, -mu)) - retarded_green_exact(p, x, y, cplx(0.0, mu)));
  }
}

cplx RealtimeCorrelator::operator()(double t) const {
  if (t == 0.0) throw Error(ErrorCode::InvalidInput, "real-time correlator needs t != 0");
  const double at = std::abs(t);
  cplx s = 0.0;
  for (const auto& q : poles_) s += (t > 0.0 ? q.weight_pos : q.weight_neg) * std::exp(-I * q.omega * at);
  const double step = 2.0 * kPi / beta_;
  for (std::size_t m = 0; m < mats_.size(); ++m) {
    double e = std::exp(-step * (m + 1) * at);
    if (e < 1e-18) break;
    s += e / beta_ * mats_[m];
  }
  return s;
}

double RealtimeCorrelator::matsubara_tail(double t) const {
  const double step = 2.0 * kPi / beta_;
  double mu = step * (mats_.size() + 1);
  double r = std::exp(-step * std::abs(t));
  // |G(-i mu) - G(i mu)| is bounded by ~1/mu for large mu
  return std::exp(-mu * std::abs(t)) / (beta_ * mu) / (1.0 - r);
}

cplx correlator_realtime(const Spectrum& s, const CavityProfile& p, double x, double y, double t,
                         const ThermalState& th, const SeriesConfig& cfg) {
  return RealtimeCorrelator(s, p, x, y, th, cfg)(t);
}

cplx mode_weight_C0(cplx w, const ThermalState& th) {
  if (th.is_zero_temperature()) return 0.0;
  cplx z = I * th.beta() * w / (2.0 * kPi);
  return I / (2.0 * kPi) * log_minus_digamma(z);
}

cplx mode_weight_minus_C2(cplx w, const ThermalState& th) {
  if (th.is_zero_temperature()) return 0.0;
  const double b = th.beta();
  return I * kPi / (6.0 * b * b) + w * w * mode_weight_C0(w, th);
}

EnergyDensity energy_density_U(const Spectrum& s, const CavityProfile& p, double x, const ThermalState& th,
                               const SeriesConfig& cfg) {
  check_config(cfg);
  if (th.is_zero_temperature()) return {0.0, 0.0, true};
  const int n = std::min<int>(cfg.qnm_terms, static_cast<int>(s.size()));
  const double rho = rho_at(p, x, Side::Inside);
  double total = 0.0, half = 0.0;
  for (int i = 0; i < n; ++i) {
    const QnmMode& m = s.representatives()[i];
    cplx f = m.value(x), df = m.derivative(x);
    cplx term = (rho * f * f * mode_weight_minus_C2(m.omega, th) + df * df * mode_weight_C0(m.omega, th)) / m.omega;
    total += pair_weight(m) * term.real();  // 1/2 * 2Re
    if (i + 1 == n / 2) half = total;
  }
  return {total, half, std::abs(total - half) <= cfg.tolerance * std::abs(total)};
}

Tensor2 tensor_correlator(cplx F, double rho_x, double rho_y, double omega) {
  return {F, I * omega * rho_y * F, -I * omega * rho_x * F, omega * omega * rho_x * rho_y * F};
}

Tensor2 tensor_correlator(const Spectrum& s, const CavityProfile& p, double x, double y, double omega,
                          const ThermalState& th, const SeriesConfig& cfg) {
  cplx F = correlator_nondiagonal(s, x, y, omega, th, cfg).value;
  return tensor_correlator(F, rho_at(p, x, Side::Inside), rho_at(p, y, Side::Inside), omega);
}

cplx tensor_projection(const CavityProfile& p, const std::function<cplx(double, double)>& F, double omega,
                       const QnmMode& j, const QnmMode& k, int min_panels) {
  double scale = std::max({std::abs(omega), std::abs(j.omega), std::abs(k.omega)});
  QuadRule r = segment_rule(p, scale, min_panels);
  const std::size_t n = r.x.size();
  const double a = p.a, n0 = p.n0();
  std::vector<cplx> fj(n), fk(n), hj(n), hk(n), Fxa(n), Fay(n);
  std::vector<double> rho(n);
  for (std::size_t i = 0; i < n; ++i) {
    rho[i] = rho_at(p, r.x[i], Side::Inside);
    fj[i] = j.value(r.x[i]);
    fk[i] = k.value(r.x[i]);
    hj[i] = -I * rho[i] * j.omega * fj[i];
    hk[i] = -I * rho[i] * k.omega * fk[i];
    Fxa[i] = F(r.x[i], a);
    Fay[i] = F(a, r.x[i]);
  }
  const cplx fja = j.f_a, fka = k.f_a;
  cplx area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx row = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      cplx Fv = F(r.x[i], r.x[l]);
      auto P = tensor_correlator(Fv, rho[i], rho[l], omega);
      row += r.w[l] * (P[0] * hj[i] * hk[l] + P[1] * hj[i] * fk[l] + P[2] * fj[i] * hk[l] + P[3] * fj[i] * fk[l]);
    }
    area += r.w[i] * row;
  }
  cplx line_x = 0.0, line_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // y = a: Q21(x,a) = hj(x) fk(a), Q11(x,a) = fj(x) fk(a)
    line_x += r.w[i] * (Fxa[i] * hj[i] * fka + (-I * omega * rho[i] * Fxa[i]) * fj[i] * fka);
    // x = a: Q12(a,y) = fj(a) hk(y), Q11(a,y) = fj(a) fk(y)
    line_y += r.w[i] * (Fay[i] * fja * hk[i] + (I * omega * rho[i] * Fay[i]) * fja * fk[i]);
  }
  cplx point = F(a, a) * fja * fka;
  cplx form = -(area + n0 * (line_x + line_y) + n0 * n0 * point);
  return form / (4.0 * j.omega * k.omega);
}

}  // namespace qnmcav
