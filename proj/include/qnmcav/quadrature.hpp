#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <complex>
#include <functional>
#include <vector>

#include "qnmcav/profile.hpp"

namespace qnmcav {

using cplx = std::complex<double>;

struct QuadRule {
  std::vector<double> x;
  std::vector<double> w;
};

// 20-point Gauss-Legendre on each of `panels` equal pieces of [lo, hi].
void append_gauss_panels(QuadRule& rule, double lo, double hi, int panels);

// Segment-aware rule on [0, a]: no panel crosses a density edge. Panel count per
// segment grows with the local phase |sqrt(rho)·omega_scale|·length.
QuadRule segment_rule(const CavityProfile& p, double omega_scale, int min_panels = 2);

template <class F>
auto integrate(const QuadRule& r, F&& f) {
  using R = decltype(f(0.0));
  R s{};
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(r.x[i]);
  return s;
}

// Adaptive Gauss-Kronrod (real or complex integrand); `hi` may be +infinity.
template <class F>
auto integrate_adaptive(F&& f, double lo, double hi, double tol = 1e-12, double* err = nullptr,
                        unsigned max_depth = 18) {
  double e = 0;
  auto v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, max_depth, tol, &e);
  if (err) *err = e;
  return v;
}

// Adaptive integral split at the given interior break points.
template <class F>
auto integrate_adaptive_pieces(F&& f, const std::vector<double>& breaks, double tol = 1e-12,
                               double* err = nullptr) {
  using R = decltype(f(0.0));
  R s{};
  double etot = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double e = 0;
    s += integrate_adaptive(f, breaks[i], breaks[i + 1], tol, &e);
    etot += e;
  }
  if (err) *err = etot;
  return s;
}

}  // namespace qnmcav
