#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qnmcav/errors.hpp"
#include "qnmcav/greens.hpp"
#include "qnmcav/quadrature.hpp"

using namespace qnmcav;

namespace {
const cplx I(0.0, 1.0);
}

TEST_CASE("free string Green's function") {
  CavityProfile free{{{0.0, 1.0}}, 1.0, 1.0};
  cplx g = retarded_green_exact(free, 0.25, 0.5, 1.0);
  cplx ref = -std::sin(0.25) * std::exp(cplx(0, 0.5));
  CHECK(std::abs(g - ref) < 1e-14);
  CHECK(std::abs(g - cplx(-0.21712, -0.11863)) < 5e-5);
}

TEST_CASE("exact Green's function properties") {
  auto p = make_dielectric_rod(5, 1, 1);
  CavityProfile two{{{0.0, 9.0}, {0.6, 2.25}}, 1.0, 1.0};
  for (const auto* q : {&p, &two}) {
    CHECK(std::abs(retarded_green_exact(*q, 0.2, 0.8, 1.7) - retarded_green_exact(*q, 0.8, 0.2, 1.7)) < 1e-15);
    // satisfies the Green's equation jump: d/dx G jumps by 1 across x = y
    double y = 0.45, h = 1e-6;
    cplx left = (retarded_green_exact(*q, y - h, y, 2.1) - retarded_green_exact(*q, y - 2 * h, y, 2.1)) / h;
    cplx right = (retarded_green_exact(*q, y + 2 * h, y, 2.1) - retarded_green_exact(*q, y + h, y, 2.1)) / h;
    CHECK(std::abs(right - left - 1.0) < 1e-4);
  }
  for (double w = 0.05; w < 8.0; w += 0.05) CHECK(-(2 * w / std::numbers::pi) * retarded_green_exact(p, 0.3, 0.3, w).imag() >= 0.0);
  auto s = qnm_spectrum(p, 1);
  try {
    retarded_green_exact(p, 0.3, 0.4, s.mode(0).omega);
    FAIL("expected NearPole");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NearPole);
  }
}

TEST_CASE("dissipation identity") {
  auto p = make_dielectric_rod(5, 1, 1);
  CHECK(verify_dissipation_identity(p, 0.3, 0.7, 2.0) < 1e-10);
  CHECK(verify_dissipation_identity(p, 0.3, 0.7, 1e-7) < 1e-10);
  CavityProfile two{{{0.0, 9.0}, {0.6, 2.25}}, 1.0, 2.0};
  CHECK(verify_dissipation_identity(two, 0.2, 0.9, 1.3) < 1e-10);
  // surface term shrinks as the outside index grows
  auto lhs = [](double n0) {
    auto q = make_dielectric_rod(5, n0, 1);
    return std::abs(retarded_green_exact(q, 0.3, 0.7, 2.0) - retarded_green_exact(q, 0.3, 0.7, -2.0));
  };
  CHECK(lhs(100.0) / lhs(1000.0) > 9.9);
  CHECK(lhs(1000.0) / lhs(10000.0) > 9.9);
}

TEST_CASE("QNM time expansion vs Fourier inversion of the exact form") {
  auto p = make_dielectric_rod(5, 1, 1);
  const double n = 5, x = 0.5, y = 0.5, t = 1.0, eta = 2.0;
  // Contour shifted to Im omega = eta; the 1/omega asymptote is inverted analytically.
  auto f = [&](double nu) {
    cplx w(nu, eta);
    return std::exp(-I * nu * t) * (retarded_green_exact(p, x, y, w) + I / (2 * n * w));
  };
  std::vector<double> br;
  for (int k = -400; k <= 400; ++k) br.push_back(k * 0.5);
  cplx oracle = -1.0 / (2 * n) + std::exp(eta * t) / (2 * std::numbers::pi) * integrate_adaptive_pieces(f, br, 1e-10);
  auto s = qnm_spectrum(p, 200);
  auto r = retarded_green_qnm_time(s, x, y, t);
  CHECK(std::abs(r.value - oracle) < 1e-4);
  CHECK(std::abs(r.value.imag()) < 1e-12);
  CHECK(r.terms_used == 200);
}

TEST_CASE("QNM frequency expansion converges to the exact form") {
  auto p = make_dielectric_rod(5, 1, 1);
  auto s = qnm_spectrum(p, 400);
  for (double w : {0.7, 1.9}) {
    cplx ex = retarded_green_exact(p, 0.3, 0.6, w);
    SeriesConfig c50, c400;
    c50.qnm_terms = 50;
    c400.qnm_terms = 400;
    c50.extrapolate = c400.extrapolate = false;
    double e50 = std::abs(retarded_green_qnm_freq(s, 0.3, 0.6, w, c50).value - ex);
    double e400 = std::abs(retarded_green_qnm_freq(s, 0.3, 0.6, w, c400).value - ex);
    CHECK(e400 < e50);
    CHECK(e400 < 1e-3 * std::abs(ex));
  }
}

TEST_CASE("completeness identity sum f f / omega = 0") {
  auto p = make_dielectric_rod(5, 1, 1);
  auto s = qnm_spectrum(p, 400);
  auto r200 = verify_qnm_sum_identity(s, 0.5, 0.5, 200);
  auto r100 = verify_qnm_sum_identity(s, 0.5, 0.5, 100);
  auto r400 = verify_qnm_sum_identity(s, 0.5, 0.5, 400);
  CHECK(r200.residual < 1e-3);
  CHECK(r400.residual < r100.residual);
  CHECK(r400.averaged < r100.averaged);
  CHECK(verify_qnm_sum_identity(s, 0.0, 0.4, 50).residual == 0.0);
}

TEST_CASE("Kramers-Kronig on a finite window") {
  auto p = make_dielectric_rod(5, 1, 1);
  const double w0 = 1.0, L = 150.0, x = 0.4;
  double im0 = retarded_green_exact(p, x, x, w0).imag();
  auto f = [&](double w) {
    return (retarded_green_exact(p, x, x, w).imag() - im0) / (w - w0 == 0.0 ? 1e-300 : w - w0);
  };
  std::vector<double> br;
  for (double b = -L; b <= L + 1e-9; b += 0.25) br.push_back(b);
  double pv = integrate_adaptive_pieces(f, br, 1e-9) + im0 * std::log((L - w0) / (L + w0));
  double re = retarded_green_exact(p, x, x, w0).real();
  CHECK(std::abs(pv / std::numbers::pi - re) < 0.05 * std::abs(re));
}
