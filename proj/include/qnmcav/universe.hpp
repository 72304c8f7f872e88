#pragma once

#include <vector>

#include "qnmcav/profile.hpp"
#include "qnmcav/thermal.hpp"

namespace qnmcav {

struct UniverseConfig {
  double Lambda = 200.0;
  int mode_count = 200;
};

// Box mode on [0, Lambda] with psi(0) = psi(Lambda) = 0 and unit rho-weighted norm:
// psi = norm sin(n nu x) inside, norm [A sin(n0 nu s) + B cos(n0 nu s)] outside, s = x - a.
struct UniverseMode {
  double nu = 0.0;
  double norm = 0.0;
  double A = 0.0;
  double B = 0.0;
};

struct UniverseSpectrum {
  DielectricRod rod;
  double Lambda = 0.0;
  std::vector<UniverseMode> modes;  // increasing nu

  double psi(const UniverseMode& m, double x) const;
};

// First `mode_count` modes above zero.
UniverseSpectrum universe_modes(const DielectricRod& rod, const UniverseConfig& cfg);
// All modes with lo < nu < hi.
UniverseSpectrum universe_modes_between(const DielectricRod& rod, double Lambda, double lo, double hi);

// Mode density used to turn the discrete sum into a spectral function:
// BoxDensity uses n0 Lambda / pi, LocalSpacing uses 1 / (nu_{l+1} - nu_{l-1}) * 2.
enum class MuEstimator { LocalSpacing, BoxDensity };

// pi rho_modes psi(x,|w|) psi(y,|w|) / [w (1 - e^{-beta w})], with psi^2 / spacing interpolated at |w|.
cplx mu_correlator(const UniverseSpectrum& u, double x, double y, double omega, const ThermalState& th,
                   MuEstimator est = MuEstimator::LocalSpacing);
// rho_modes psi(x,w)^2
double mu_dos(const UniverseSpectrum& u, double x, double omega, MuEstimator est = MuEstimator::LocalSpacing);
// Sum over modes of int_0^a rho psi^2.
double mu_interior_weight(const UniverseSpectrum& u);
int mu_mode_count(const UniverseSpectrum& u, double omega_max);

}  // namespace qnmcav
