#pragma once

#include <complex>

namespace qnmcav {

using cplx = std::complex<double>;

// Principal branch, cut along the negative real axis; on the cut the principal
// value (real part) is returned.
cplx exp_integral_E1(cplx z);

// ln z - 1/(2z) - digamma(z), for Re z > 0.
cplx log_minus_digamma(cplx z);

}  // namespace qnmcav
