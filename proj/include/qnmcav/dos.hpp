#pragma once

#include <optional>

#include "qnmcav/series.hpp"
#include "qnmcav/spectrum.hpp"

namespace qnmcav {

enum class DosSource { Exact, Diagonal, Nondiagonal };
enum class ResonanceKind { Diagonal, Lorentzian };

double local_dos_exact(const CavityProfile& p, double x, double omega);
SeriesResult local_dos_diagonal(const Spectrum& s, double x, double omega, const SeriesConfig& cfg = {});
// Double sum evaluated through its rank-one factorization n0 omega^2 |chi(x,omega)|^2 / 2pi.
SeriesResult local_dos_nondiagonal(const Spectrum& s, double x, double omega, const SeriesConfig& cfg = {});
double local_dos(DosSource src, const Spectrum& s, const CavityProfile& p, double x, double omega,
                 const SeriesConfig& cfg = {});

double dos_resonance_approx(ResonanceKind kind, const QnmMode& m, double x, double omega);

struct ResonanceWindow {
  double center = 0.0;
  double halfwidth = 0.0;
};

// Centered on Re omega_j, 10 |Im omega_j| wide on each side, clamped to half the gap
// to the nearest neighbouring resonance.
ResonanceWindow default_window(const Spectrum& s, int j, double widths = 10.0);
// Throws WindowOverlap if the window reaches another Re omega_k.
void check_window(const Spectrum& s, int j, const ResonanceWindow& w);

// Integral over x of rho |f_j|^2 on [0, a].
double interior_intensity(const QnmMode& m, const CavityProfile& p);

struct UnitWeight {
  int j = 0;
  double weight = 0.0;     // full lorentzian weight
  double in_window = 0.0;  // part captured by quadrature inside the window
  ResonanceWindow window;
  double error_budget = 0.0;  // analytic mass outside the window plus quadrature error
};
UnitWeight unit_weight_integral(const CavityProfile& p, const Spectrum& s, int j, std::optional<ResonanceWindow> w = {});

double surface_ratio(const QnmMode& m);

double second_sum_rule_check(const CavityProfile& p, double x, double omega_max);

// max over the window of |d_exact - d_lorentzian| / peak.
double lorentzian_deviation(const CavityProfile& p, const Spectrum& s, int j, double x);

}  // namespace qnmcav
