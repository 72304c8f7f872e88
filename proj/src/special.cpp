#include "qnmcav/special.hpp"

#include <cmath>
#include <numbers>

#include "qnmcav/errors.hpp"

namespace qnmcav {

namespace {

cplx e1_series(cplx z) {
  cplx sum = 0.0, term = 1.0;
  for (int k = 1; k < 5000; ++k) {
    term *= -z / static_cast<double>(k);
    cplx add = term / static_cast<double>(k);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return -std::numbers::egamma - std::log(z) - sum;
}

// Modified Lentz evaluation of exp(-z)/(z+1- 1/(z+3- 4/(z+5- ...))).
cplx e1_continued_fraction(cplx z) {
  const double tiny = 1e-300;
  cplx b = z + 1.0;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i < 100000; ++i) {
    double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    cplx del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-z);
}

}  // namespace

cplx exp_integral_E1(cplx z) {
  if (z == 0.0) throw Error(ErrorCode::InvalidInput, "E1 at zero");
  const bool on_cut = z.imag() == 0.0 && z.real() < 0.0;
  cplx v;
  if (std::abs(z) <= 2.0 || std::abs(z) + z.real() <= 4.0)
    v = e1_series(z);
  else
    v = e1_continued_fraction(z);
  return on_cut ? cplx(v.real(), 0.0) : v;
}

cplx log_minus_digamma(cplx z) {
  // Bernoulli numbers B_2k / (2k)
  static constexpr double c[] = {1.0 / 12.0,          -1.0 / 120.0,       1.0 / 252.0,
                                 -1.0 / 240.0,        1.0 / 132.0,        -691.0 / 32760.0,
                                 1.0 / 12.0,          -3617.0 / 8160.0};
  auto asym = [&](cplx w) {
    cplx w2 = 1.0 / (w * w), p = w2, s = 0.0;
    for (double ck : c) {
      s += ck * p;
      p *= w2;
    }
    return s;
  };
  if (std::abs(z) >= 12.0) return asym(z);
  // digamma(z) = digamma(z+m) - sum 1/(z+i)
  int m = static_cast<int>(std::ceil(12.0 - std::abs(z))) + 1;
  cplx w = z + static_cast<double>(m);
  cplx psi_w = std::log(w) - 0.5 / w - asym(w);
  cplx shift = 0.0;
  for (int i = 0; i < m; ++i) shift += 1.0 / (z + static_cast<double>(i));
  return std::log(z) - 0.5 / z - (psi_w - shift);
}

}  // namespace qnmcav
