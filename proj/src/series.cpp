#include "qnmcav/series.hpp"

#include "qnmcav/errors.hpp"

namespace qnmcav {

void check_config(const SeriesConfig& c) {
  if (c.qnm_terms < 1 || c.matsubara_terms < 1) throw Error(ErrorCode::InvalidInput, "series counts must be >= 1");
  if (!(c.tolerance > 0)) throw Error(ErrorCode::InvalidInput, "series tolerance must be positive");
}

PairAccumulator::PairAccumulator(int n_terms) : n_(n_terms) {}

void PairAccumulator::add(cplx t) {
  sum_ += t;
  ++count_;
  if (count_ == n_ / 4) quarter_ = sum_;
  if (count_ == n_ / 2) half_ = sum_;
}

SeriesResult PairAccumulator::finish(TailPolicy policy, bool extrapolate) const {
  SeriesResult r{sum_, count_, 0.0};
  if (policy == TailPolicy::None || count_ < 8) return r;
  cplx d1 = sum_ - half_, d0 = half_ - quarter_;
  double a1 = std::abs(d1), a0 = std::abs(d0);
  if (a1 == 0.0) return r;
  // Geometric model only when successive doubling increments line up in phase.
  cplx ratio = a0 > 0.0 ? d1 / d0 : cplx(0.9);
  bool regular = std::abs(std::arg(ratio)) < 0.3 && std::abs(ratio) < 0.8;
  double q = regular ? std::abs(ratio) : 0.9;
  r.tail_estimate = a1 * q / (1.0 - q);
  if (extrapolate && regular) {
    r.value += d1 * (ratio / (1.0 - ratio));
    // what remains is the model error, bounded by the change it made
    r.tail_estimate = std::abs(d1 * (ratio / (1.0 - ratio))) * 0.1;
  }
  return r;
}

}  // namespace qnmcav
