#pragma once

#include <functional>

#include "qnmcav/series.hpp"
#include "qnmcav/spectrum.hpp"

namespace qnmcav {

// T = 0 throughout.
enum class PropagatorForm { Nondiagonal, Diagonal, DiagonalAlt, ClosedRod, Exact };

const char* to_string(PropagatorForm f);

SeriesResult feynman_nondiagonal(const Spectrum& s, double x, double y, double omega, const SeriesConfig& cfg = {});
SeriesResult feynman_diagonal(const Spectrum& s, double x, double y, double omega, const SeriesConfig& cfg = {});
SeriesResult feynman_diagonal_alt(const Spectrum& s, double x, double y, double omega, const SeriesConfig& cfg = {});
cplx feynman_closed_rod(const DielectricRod& rod, double x, double y, double omega);
// Exact Wronskian retarded function evaluated at |omega|.
cplx feynman_exact(const CavityProfile& p, double x, double y, double omega);

// Dispatch; the series forms need `s`, ClosedRod needs a rod profile.
SeriesResult feynman(PropagatorForm form, const Spectrum& s, const CavityProfile& p, double x, double y,
                     double omega, const SeriesConfig& cfg = {});

inline SeriesResult equal_space_propagator(PropagatorForm form, const Spectrum& s, const CavityProfile& p, double x,
                                           double omega, const SeriesConfig& cfg = {}) {
  return feynman(form, s, p, x, x, omega, cfg);
}

enum class ResonanceApprox { Ra, RaPrime };

cplx resonance_approx_D(ResonanceApprox kind, const QnmMode& m, double x, double omega);
// The same expressions with |omega| replaced by a complex omega (retarded continuation).
cplx resonance_approx_D_continued(ResonanceApprox kind, const QnmMode& m, double x, cplx omega);

struct RetardedAdvanced {
  double full = 0.0;
  double ra = 0.0;
  double ra_prime = 0.0;
};
// |D^R(omega) - conj D^A(omega)| with D^R, D^A the |omega| -> +omega, -omega continuations.
RetardedAdvanced check_retarded_advanced(const CavityProfile& p, const QnmMode& m, double x, double omega);

// Trapezoid rule on a circle around `center`.
cplx residue(const std::function<cplx(cplx)>& f, cplx center, double radius = 1e-3, int points = 64);

// Sum over j != partner(k) of |kernel weight| divided by the sum over all pairs, first n representatives.
double offdiagonal_mass(const Spectrum& s, int n);

}  // namespace qnmcav
