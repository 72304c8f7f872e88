#include "qnmcav/greens.hpp"

#include <cmath>

#include "qnmcav/errors.hpp"

namespace qnmcav {

namespace {

const cplx I(0.0, 1.0);

void check_inside(const CavityProfile& p, double x) {
  if (!(x >= 0.0 && x <= p.a)) throw Error(ErrorCode::InvalidInput, "position outside [0,a]");
}

void check_pole(const HomogeneousSolutions& h, const CavityProfile& p) {
  auto fa = h.f(p.a);
  double scale = std::abs(fa.du) + p.n0() * std::abs(h.omega() * fa.u);
  if (std::abs(h.reduced_wronskian()) < 1e-12 * scale)
    throw Error(ErrorCode::NearPole, "frequency coincides with a QNM");
}

}  // namespace

cplx retarded_green_exact(const CavityProfile& p, double x, double y, cplx omega) {
  check_inside(p, x);
  check_inside(p, y);
  HomogeneousSolutions h(p, omega);
  check_pole(h, p);
  return h.f(std::min(x, y)).u * h.g(std::max(x, y)).u / h.wronskian();
}

cplx retarded_green_exact_dxdy(const CavityProfile& p, double x, cplx omega) {
  check_inside(p, x);
  HomogeneousSolutions h(p, omega);
  check_pole(h, p);
  return h.f(x).du * h.g(x).du / h.wronskian();
}

SeriesResult retarded_green_qnm_time(const Spectrum& s, double x, double y, double t, const SeriesConfig& cfg) {
  check_config(cfg);
  if (t < 0.0) throw Error(ErrorCode::InvalidInput, "retarded_green_qnm_time: t < 0");
  auto r = pair_sum(
      s, cfg.qnm_terms,
      [&](const QnmMode& m) { return m.value(x) * m.value(y) / (2.0 * I * m.omega) * std::exp(-I * m.omega * t); },
      cfg.tail_policy, cfg.extrapolate);
  if (cfg.tail_policy != TailPolicy::None && r.tail_estimate > cfg.tolerance)
    throw Error(ErrorCode::TailTooLarge, "retarded_green_qnm_time tail " + std::to_string(r.tail_estimate));
  return r;
}

SeriesResult retarded_green_qnm_freq(const Spectrum& s, double x, double y, cplx omega, const SeriesConfig& cfg) {
  check_config(cfg);
  return pair_sum(
      s, cfg.qnm_terms,
      [&](const QnmMode& m) { return m.value(x) * m.value(y) / (2.0 * m.omega * (omega - m.omega)); },
      cfg.tail_policy, cfg.extrapolate);
}

double verify_dissipation_identity(const CavityProfile& p, double x, double y, double omega) {
  check_inside(p, x);
  check_inside(p, y);
  HomogeneousSolutions hp(p, omega), hm(p, -omega);
  check_pole(hp, p);
  check_pole(hm, p);
  auto G = [&](const HomogeneousSolutions& h, double u, double v) {
    return h.f(std::min(u, v)).u * h.g(std::max(u, v)).u / h.wronskian();
  };
  // x,y <= a so G(x, a+) = f(x) g(a) / W with g(a) = exp(i n0 omega a).
  cplx lhs = G(hp, x, y) - G(hm, x, y);
  cplx rhs = (2.0 * p.n0() * omega / I) * G(hp, x, p.a) * G(hm, y, p.a);
  double scale = std::max({std::abs(G(hp, x, y)), std::abs(G(hm, x, y)), std::abs(rhs), 1e-300});
  return std::abs(lhs - rhs) / scale;
}

IdentityResidual verify_qnm_sum_identity(const Spectrum& s, double x, double y, int n_terms) {
  auto term = [&](const QnmMode& m) { return m.value(x) * m.value(y) / m.omega; };
  auto r = pair_sum(s, n_terms, term);
  cplx avg = pair_sum_cesaro(s, n_terms, term);
  return {std::abs(r.value), std::abs(avg), r.tail_estimate};
}

}  // namespace qnmcav
