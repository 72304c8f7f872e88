#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "qnmcav/profile.hpp"
#include "qnmcav/quadrature.hpp"

namespace qnmcav {

using cplx = std::complex<double>;

// Mode labels follow the rod closed form. Without a purely imaginary mode the
// representatives are j = 0,1,2,... and the partner of j is -j-1; with one,
// j = 0 is that (self-partnered) mode, representatives are 1,2,... and the
// partner of j is -j.
enum class Labeling { HalfInteger, Integer };

struct QnmMode {
  int j = 0;
  cplx omega;
  // f(x) = A sin(sqrt(rho) omega x) + B cos(sqrt(rho) omega x) on each segment
  std::vector<std::pair<cplx, cplx>> segment_coeffs;
  std::vector<double> edges;     // segment left edges, then a
  std::vector<double> sqrt_rho;
  double n0 = 1.0;
  cplx f_a;                      // f(a), inside limit
  bool norm_applied = false;

  double a() const { return edges.back(); }
  cplx value(double x) const;
  cplx derivative(double x) const;
  bool is_imaginary() const { return omega.real() == 0.0; }
  QnmMode partner(int partner_j) const;
};

cplx rod_qnm_frequency(const DielectricRod& rod, int j);

struct SearchWindow {
  double re_min = 0.0;
  double re_max = 4.0;
  double im_depth = 0.0;  // 0 selects a depth from the interface reflection coefficients
  int max_count = 0;      // 0 means unlimited (representatives)
};

double default_im_depth(const CavityProfile& p);

class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(std::vector<QnmMode> reps, Labeling labeling);

  Labeling labeling() const { return labeling_; }
  // Representatives (Re omega >= 0) in increasing Re omega.
  const std::vector<QnmMode>& representatives() const { return reps_; }
  std::size_t size() const { return reps_.size(); }
  int partner_index(int j) const;
  QnmMode mode(int j) const;
  // Representatives plus partners, ordered by increasing Re omega.
  std::vector<QnmMode> all_modes() const;
  // First n representatives.
  Spectrum truncated(std::size_t n) const;

 private:
  std::vector<QnmMode> reps_;
  Labeling labeling_ = Labeling::HalfInteger;
};

// Weight of a representative in a paired sum: 1/2 for a self-partnered mode.
inline double pair_weight(const QnmMode& m) { return m.is_imaginary() ? 0.5 : 1.0; }

Spectrum find_qnms(const CavityProfile& p, const SearchWindow& w, double tol = 1e-13);

// Smallest window containing at least `count` representatives.
Spectrum qnm_spectrum(const CavityProfile& p, std::size_t count, double tol = 1e-13);

// Argument-principle zero count of the reduced Wronskian inside a rectangle.
int count_roots(const CavityProfile& p, double re_lo, double re_hi, double im_lo, double im_hi);

QnmMode build_mode(const CavityProfile& p, cplx omega, int j, bool normalize = true);

cplx evaluate_mode(const QnmMode& m, double x);

struct FieldGrid {
  std::vector<double> x;  // includes 0 and a
  std::vector<double> w;  // quadrature weights, zero at the end points
};

std::shared_ptr<const FieldGrid> make_field_grid(const CavityProfile& p, double omega_scale, int min_panels = 4);

struct FieldPair {
  std::shared_ptr<const FieldGrid> grid;
  std::vector<cplx> phi;
  std::vector<cplx> phi_hat;
};

// (f, -i rho omega f) sampled on the grid.
FieldPair mode_field_pair(const QnmMode& m, const CavityProfile& p, std::shared_ptr<const FieldGrid> grid);

cplx bilinear_product(const FieldPair& A, const FieldPair& B, const CavityProfile& p);

struct Projection {
  cplx value;
  bool under_resolved = false;
};

Projection project_coefficient(const QnmMode& m, const FieldPair& state, const CavityProfile& p);

double check_orthogonality(const std::vector<QnmMode>& modes, const CavityProfile& p);

}  // namespace qnmcav
