#pragma once

#include <complex>
#include <vector>

#include "qnmcav/profile.hpp"

namespace qnmcav {

using cplx = std::complex<double>;

struct FieldValue {
  cplx u;   // value
  cplx du;  // x-derivative
};

// Propagates (u, u') a distance s through uniform density rho at frequency omega.
FieldValue propagate(FieldValue in, double sqrt_rho, cplx omega, double s);

// f: nodal solution, f(0)=0, f'(0)=1. g: outgoing solution, g(x)=exp(i n0 omega x) for x>=a.
// W = f g' - f' g is independent of x.
class HomogeneousSolutions {
 public:
  HomogeneousSolutions(const CavityProfile& p, cplx omega);

  FieldValue f(double x) const;
  FieldValue g(double x) const;
  cplx wronskian() const { return W_; }
  // i n0 omega f(a) - f'(a): same zeros as W without the exp(i n0 omega a) factor.
  cplx reduced_wronskian() const { return Wr_; }
  cplx omega() const { return omega_; }

 private:
  const CavityProfile* p_;
  cplx omega_;
  std::vector<FieldValue> f_left_;   // f at each segment's left edge
  std::vector<FieldValue> g_right_;  // g at each segment's right edge
  cplx W_, Wr_;
};

struct WronskianEval {
  cplx w;       // reduced Wronskian
  cplx dw;      // d/d omega
  FieldValue fa;   // f(a), f'(a) with f'(0)=1
  FieldValue dfa;  // omega-derivatives of f(a), f'(a)
};

WronskianEval reduced_wronskian(const CavityProfile& p, cplx omega);

}  // namespace qnmcav
