#pragma once

#include <utility>
#include <vector>

#include "qnmcav/spectrum.hpp"
#include "qnmcav/thermal.hpp"

namespace qnmcav {

struct CommutatorValue {
  int j = 0;
  int k = 0;
  cplx value;
};

// [a_j, a_k]; with creation = true, [a_j^dagger, a_k] through the j -> -j substitution.
cplx commutator_integral(const QnmMode& j, const QnmMode& k, const CavityProfile& p, bool creation = false);
cplx commutator_surface(const QnmMode& j, const QnmMode& k, bool creation = false);

struct CommutatorRow {
  int j = 0;
  int k = 0;
  cplx integral;
  cplx surface;
};
std::vector<CommutatorRow> commutator_table(const Spectrum& s, const CavityProfile& p, int jmax);

struct AlphaPair {
  cplx alpha;
  cplx alpha_dagger;
};
AlphaPair alpha_map(const QnmMode& j, cplx a_j, cplx a_minus_j);
// [alpha_j^dagger, alpha_j] from the surface form.
cplx alpha_commutator(const QnmMode& j);

struct EnergyBalance {
  double energy = 0.0;
  double flux = 0.0;
  double residual = 0.0;
};
EnergyBalance energy_balance_check(const QnmMode& m, const CavityProfile& p);

struct ForceSignal {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<cplx> b;
};

struct DrivenResponse {
  std::vector<double> t;
  std::vector<cplx> a;
  double residual = 0.0;  // max |a' + i w a - c b| / max(|w a|, |c b|), five-point stencil
};
DrivenResponse driven_mode_response(const QnmMode& m, const ForceSignal& force, cplx a0);

// (1/2pi) int [C_jk(w) - C_kj(w)] dw with C_jk the driven-coefficient correlator.
cplx antisymmetrized_commutator(const QnmMode& j, const QnmMode& k, const ThermalState& th, double tol = 1e-10);

}  // namespace qnmcav
