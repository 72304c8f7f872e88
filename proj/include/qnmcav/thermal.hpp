#pragma once

#include <array>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "qnmcav/profile.hpp"
#include "qnmcav/series.hpp"
#include "qnmcav/spectrum.hpp"

namespace qnmcav {

class ThermalState {
 public:
  explicit ThermalState(double beta);
  static ThermalState zero_temperature() { return ThermalState(std::numeric_limits<double>::infinity()); }

  double beta() const { return beta_; }
  bool is_zero_temperature() const { return std::isinf(beta_); }
  // 1/(1 - exp(-beta omega)); raises PoleAt within 1e-6 of 0 or of +-i mu_m.
  cplx bose(cplx omega) const;
  double bose(double omega) const { return bose(cplx(omega)).real(); }
  // omega/(1 - exp(-beta omega)), continuous through omega = 0.
  double omega_bose(double omega) const;
  // 1/(exp(beta omega) - 1) for complex omega.
  cplx occupation(cplx omega) const;
  double matsubara(int m) const;

 private:
  double beta_;
};

double force_spectral_density(double omega, const ThermalState& th);

enum class DiagonalVariant { Standard, PartialFraction };

SeriesResult correlator_diagonal(const Spectrum& s, double x, double y, double omega, const ThermalState& th,
                                 const SeriesConfig& cfg = {}, DiagonalVariant v = DiagonalVariant::Standard);

// chi(x, omega) = sum_j f_j(a) f_j(x) / (omega_j (omega_j - omega))
SeriesResult chi_series(const Spectrum& s, double x, double omega, const SeriesConfig& cfg = {});

SeriesResult correlator_nondiagonal(const Spectrum& s, double x, double y, double omega, const ThermalState& th,
                                    const SeriesConfig& cfg = {});

cplx correlator_closed_rod(const DielectricRod& rod, double x, double y, double omega, const ThermalState& th);

// <a~_j(omega) a_k>: n0 omega f_j(a) f_k(a) / [2 (1-e^{-beta omega}) omega_j omega_k (omega_j - omega)(omega_k + omega)]
cplx driven_coefficient_correlator(const QnmMode& j, const QnmMode& k, cplx omega, const ThermalState& th);

struct ResumCheck {
  double residual;
  double raw_residual;  // symmetric partial sum without averaging
};
ResumCheck fourier_resum_check(cplx alpha, double z, int n_terms);

cplx mode_weight_C(const QnmMode& m, double t, const ThermalState& th, const SeriesConfig& cfg = {},
                   double* matsubara_tail = nullptr);

SeriesResult subtracted_correlator(const Spectrum& s, double x, double y, double t, const ThermalState& th,
                                   const SeriesConfig& cfg = {});

// Precomputes the t-independent pieces of F(x,y,t) for repeated evaluation.
class RealtimeCorrelator {
 public:
  RealtimeCorrelator(const Spectrum& s, const CavityProfile& p, double x, double y, const ThermalState& th,
                     const SeriesConfig& cfg = {});
  cplx operator()(double t) const;
  double matsubara_tail(double t) const;

 private:
  struct Pole {
    cplx omega, weight_pos, weight_neg;
  };
  std::vector<Pole> poles_;
  std::vector<cplx> mats_;  // G(-i mu) - G(i mu)
  double beta_;
};

cplx correlator_realtime(const Spectrum& s, const CavityProfile& p, double x, double y, double t,
                         const ThermalState& th, const SeriesConfig& cfg = {});

// C_j(0) and -C_j''(0) in closed form.
cplx mode_weight_C0(cplx omega_j, const ThermalState& th);
cplx mode_weight_minus_C2(cplx omega_j, const ThermalState& th);

struct EnergyDensity {
  double value;
  double half_terms_value;  // same sum truncated at N/2
  bool tail_converged;      // |value - half_terms_value| below cfg.tolerance * |value|
};
EnergyDensity energy_density_U(const Spectrum& s, const CavityProfile& p, double x, const ThermalState& th,
                               const SeriesConfig& cfg = {});

using Tensor2 = std::array<cplx, 4>;  // row-major (11, 12, 21, 22)

Tensor2 tensor_correlator(cplx F, double rho_x, double rho_y, double omega);
Tensor2 tensor_correlator(const Spectrum& s, const CavityProfile& p, double x, double y, double omega,
                          const ThermalState& th, const SeriesConfig& cfg = {});

// a~_jk from the product-space bilinear form applied to the tensor built from F(x,y).
cplx tensor_projection(const CavityProfile& p, const std::function<cplx(double, double)>& F, double omega,
                       const QnmMode& j, const QnmMode& k, int min_panels = 4);

}  // namespace qnmcav
