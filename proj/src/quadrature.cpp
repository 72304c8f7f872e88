#include "qnmcav/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

namespace qnmcav {

namespace {
using GL = boost::math::quadrature::gauss<double, 20>;
}

void append_gauss_panels(QuadRule& rule, double lo, double hi, int panels) {
  const auto& xs = GL::abscissa();
  const auto& ws = GL::weights();
  double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    double mid = lo + (p + 0.5) * h, half = 0.5 * h;
    // Boost stores the non-negative half of the symmetric rule.
    for (std::size_t i = xs.size(); i-- > 0;) {
      if (xs[i] == 0.0) continue;
      rule.x.push_back(mid - half * xs[i]);
      rule.w.push_back(half * ws[i]);
    }
    if (xs[0] == 0.0) {
      rule.x.push_back(mid);
      rule.w.push_back(half * ws[0]);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] == 0.0) continue;
      rule.x.push_back(mid + half * xs[i]);
      rule.w.push_back(half * ws[i]);
    }
  }
}

QuadRule segment_rule(const CavityProfile& p, double omega_scale, int min_panels) {
  QuadRule r;
  for (std::size_t i = 0; i < p.segments.size(); ++i) {
    double lo = p.segments[i].x0, hi = p.segment_end(i);
    double phase = std::sqrt(p.segments[i].rho) * std::abs(omega_scale) * (hi - lo);
    int panels = std::max(min_panels, static_cast<int>(std::ceil(phase / 4.0)));
    append_gauss_panels(r, lo, hi, panels);
  }
  return r;
}

}  // namespace qnmcav
