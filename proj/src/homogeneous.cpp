#include "qnmcav/homogeneous.hpp"

#include <cmath>

namespace qnmcav {

namespace {

// sin(k s)/k and its k-derivative, stable as k s -> 0.
struct Sinc {
  cplx S, dS;
};

Sinc sinc_terms(cplx k, double s) {
  cplx ks = k * s;
  if (std::abs(ks) < 1e-3) {
    cplx z2 = ks * ks;
    return {s * (1.0 - z2 / 6.0 + z2 * z2 / 120.0), -k * s * s * s / 3.0 * (1.0 - z2 / 10.0)};
  }
  cplx S = std::sin(ks) / k;
  return {S, (s * std::cos(ks) - S) / k};
}

}  // namespace

FieldValue propagate(FieldValue in, double sqrt_rho, cplx omega, double s) {
  cplx k = sqrt_rho * omega;
  cplx c = std::cos(k * s);
  cplx S = sinc_terms(k, s).S;
  return {in.u * c + in.du * S, -in.u * k * k * S + in.du * c};
}

HomogeneousSolutions::HomogeneousSolutions(const CavityProfile& p, cplx omega) : p_(&p), omega_(omega) {
  const std::size_t n = p.segments.size();
  f_left_.resize(n);
  g_right_.resize(n);
  FieldValue cur{0.0, 1.0};
  for (std::size_t i = 0; i < n; ++i) {
    f_left_[i] = cur;
    cur = propagate(cur, std::sqrt(p.segments[i].rho), omega, p.segment_end(i) - p.segments[i].x0);
  }
  const FieldValue fa = cur;
  const double n0 = p.n0();
  cplx e = std::exp(cplx(0, 1) * n0 * omega * p.a);
  FieldValue g{e, cplx(0, 1) * n0 * omega * e};
  for (std::size_t i = n; i-- > 0;) {
    g_right_[i] = g;
    g = propagate(g, std::sqrt(p.segments[i].rho), omega, p.segments[i].x0 - p.segment_end(i));
  }
  Wr_ = cplx(0, 1) * n0 * omega * fa.u - fa.du;
  W_ = e * Wr_;
}

FieldValue HomogeneousSolutions::f(double x) const {
  std::size_t i = p_->segment_index(x);
  return propagate(f_left_[i], std::sqrt(p_->segments[i].rho), omega_, x - p_->segments[i].x0);
}

FieldValue HomogeneousSolutions::g(double x) const {
  std::size_t i = p_->segment_index(x);
  return propagate(g_right_[i], std::sqrt(p_->segments[i].rho), omega_, x - p_->segment_end(i));
}

WronskianEval reduced_wronskian(const CavityProfile& p, cplx omega) {
  FieldValue f{0.0, 1.0}, df{0.0, 0.0};
  for (std::size_t i = 0; i < p.segments.size(); ++i) {
    double c0 = std::sqrt(p.segments[i].rho);
    double s = p.segment_end(i) - p.segments[i].x0;
    cplx k = c0 * omega;
    cplx cs = std::cos(k * s), sn = std::sin(k * s);
    Sinc t = sinc_terms(k, s);
    // d/domega of the transfer entries
    cplx dcs = -c0 * s * sn;
    cplx dS = c0 * t.dS;
    cplx k2S = k * k * t.S;
    cplx dk2S = c0 * (2.0 * k * t.S + k * k * t.dS);
    FieldValue nf{f.u * cs + f.du * t.S, -f.u * k2S + f.du * cs};
    FieldValue ndf{df.u * cs + f.u * dcs + df.du * t.S + f.du * dS,
                   -df.u * k2S - f.u * dk2S + df.du * cs + f.du * dcs};
    f = nf;
    df = ndf;
  }
  const cplx in0 = cplx(0, 1) * p.n0();
  WronskianEval r;
  r.fa = f;
  r.dfa = df;
  r.w = in0 * omega * f.u - f.du;
  r.dw = in0 * f.u + in0 * omega * df.u - df.du;
  return r;
}

}  // namespace qnmcav
