#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qnmcav/spectrum.hpp"

namespace qnmcav {

enum class TailPolicy { None, GeometricEstimate };

struct SeriesConfig {
  int qnm_terms = 200;          // representatives (each summed with its partner)
  int matsubara_terms = 4000;
  TailPolicy tail_policy = TailPolicy::GeometricEstimate;
  double tolerance = 1e-3;
  // Add the extrapolated tail to the returned value.
  bool extrapolate = true;
};

struct SeriesResult {
  cplx value;
  int terms_used = 0;
  double tail_estimate = 0.0;
};
using GreensSeriesResult = SeriesResult;

void check_config(const SeriesConfig& c);

// Partial sums of a pair-combined series; the tail is estimated by treating the
// increments over successive doublings of the cutoff as a geometric sequence.
class PairAccumulator {
 public:
  explicit PairAccumulator(int n_terms);
  void add(cplx pair_term);
  SeriesResult finish(TailPolicy policy, bool extrapolate) const;
  cplx sum() const { return sum_; }

 private:
  int n_;
  int count_ = 0;
  cplx sum_ = 0.0;
  cplx quarter_ = 0.0, half_ = 0.0;
};

// Sum over representatives j < N of term(rep) + term(partner), the partner counted
// once for self-partnered modes.
template <class Term>
SeriesResult pair_sum(const Spectrum& s, int n_terms, Term&& term, TailPolicy policy = TailPolicy::GeometricEstimate,
                      bool extrapolate = false) {
  const int n = std::min<int>(n_terms, static_cast<int>(s.size()));
  PairAccumulator acc(n);
  const auto& reps = s.representatives();
  for (int i = 0; i < n; ++i) {
    const QnmMode& m = reps[i];
    cplx t = term(m);
    if (!m.is_imaginary()) t += term(m.partner(s.partner_index(m.j)));
    acc.add(t);
  }
  return acc.finish(policy, extrapolate);
}

// Cesaro mean of the first n pair partial sums.
template <class Term>
cplx pair_sum_cesaro(const Spectrum& s, int n_terms, Term&& term) {
  const int n = std::min<int>(n_terms, static_cast<int>(s.size()));
  cplx partial = 0.0, mean = 0.0;
  const auto& reps = s.representatives();
  for (int i = 0; i < n; ++i) {
    const QnmMode& m = reps[i];
    cplx t = term(m);
    if (!m.is_imaginary()) t += term(m.partner(s.partner_index(m.j)));
    partial += t;
    mean += partial;
  }
  return n > 0 ? mean / static_cast<double>(n) : cplx(0.0);
}

}  // namespace qnmcav
