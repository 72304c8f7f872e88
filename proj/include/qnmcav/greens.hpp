#pragma once

#include <complex>

#include "qnmcav/homogeneous.hpp"
#include "qnmcav/profile.hpp"
#include "qnmcav/series.hpp"
#include "qnmcav/spectrum.hpp"

namespace qnmcav {

// f(min) g(max) / W.
cplx retarded_green_exact(const CavityProfile& p, double x, double y, cplx omega);

// d^2 G / dx dy at x = y, approached with x on the nodal side.
cplx retarded_green_exact_dxdy(const CavityProfile& p, double x, cplx omega);

SeriesResult retarded_green_qnm_time(const Spectrum& s, double x, double y, double t,
                                     const SeriesConfig& cfg = {});

SeriesResult retarded_green_qnm_freq(const Spectrum& s, double x, double y, cplx omega,
                                     const SeriesConfig& cfg = {});

double verify_dissipation_identity(const CavityProfile& p, double x, double y, double omega);

struct IdentityResidual {
  double residual;   // |partial sum| at N
  double averaged;   // |Cesaro mean of pair partial sums|
  double tail_estimate;
};

// sum_j f_j(x) f_j(y) / omega_j, which vanishes for a complete set.
IdentityResidual verify_qnm_sum_identity(const Spectrum& s, double x, double y, int n_terms);

}  // namespace qnmcav
