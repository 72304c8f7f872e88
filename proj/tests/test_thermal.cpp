#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "qnmcav/errors.hpp"
#include "qnmcav/greens.hpp"
#include "qnmcav/quadrature.hpp"
#include "qnmcav/special.hpp"
#include "qnmcav/thermal.hpp"

using namespace qnmcav;

namespace {
const cplx I(0.0, 1.0);
const double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

const Spectrum& rod5() {
  static const Spectrum s = qnm_spectrum(make_dielectric_rod(5, 1, 1), 200);
  return s;
}
}  // namespace

TEST_CASE("exponential integral") {
  // oracle: direct quadrature of the defining integral, int_1^inf e^{-zu}/u du
  for (cplx z : {cplx(1, 0), cplx(0.3, 2.0), cplx(4.0, -7.0), cplx(0.05, 0.01), cplx(12.0, 30.0)}) {
    cplx q = integrate_adaptive([&](double u) { return std::exp(-z * u) / u; }, 1.0, kInf, 1e-13);
    CHECK(std::abs(exp_integral_E1(z) - q) < 1e-11 * std::abs(q));
  }
  CHECK(std::abs(exp_integral_E1(1.0).real() - 0.219383934) < 1e-9);
  CHECK(std::abs(100.0 * std::exp(100.0) * exp_integral_E1(100.0).real() - 1.0) < 0.01);
  for (cplx z : {cplx(-2.0, 0.5), cplx(3.0, 40.0), cplx(0.001, -0.2)})
    CHECK(std::abs(std::conj(exp_integral_E1(z)) - exp_integral_E1(std::conj(z))) < 1e-14 * std::abs(exp_integral_E1(z)));
  // principal value on the negative axis: -Ei(2)
  CHECK(std::abs(exp_integral_E1(-2.0) - cplx(-4.954234356001890, 0.0)) < 1e-12);
  CHECK_THROWS_AS(exp_integral_E1(0.0), Error);
}

TEST_CASE("log minus digamma") {
  // ln z - 1/(2z) - psi(z) = 2 int_0^inf t dt / ((t^2 + z^2)(e^{2 pi t} - 1)) for Re z > 0
  for (cplx z : {cplx(0.1, 0.0), cplx(0.7, 3.0), cplx(3.0, -20.0), cplx(30.0, 2.0)}) {
    auto f = [&](double t) -> cplx { return t < 1e-12 ? cplx(0.0) : 2.0 * t / ((t * t + z * z) * std::expm1(2 * kPi * t)); };
    cplx q = integrate_adaptive_pieces(f, {0.0, 0.5, 2.0, 8.0, 40.0}, 1e-13);
    CHECK(std::abs(log_minus_digamma(z) - q) < 1e-11 * std::abs(q));
  }
}

TEST_CASE("Bose factors and force spectral density") {
  ThermalState zero(kInf), one(1.0);
  CHECK(force_spectral_density(3.0, zero) == doctest::Approx(6.0));
  CHECK(force_spectral_density(-3.0, zero) == 0.0);
  CHECK(std::abs(force_spectral_density(1e-8, one) - 2.0) < 1e-6);
  for (double w : {0.1, 1.0, 5.0, 40.0})
    CHECK(std::abs(force_spectral_density(w, one) - force_spectral_density(-w, one) - 2 * w) < 1e-12 * w);
  CHECK_THROWS_AS(force_spectral_density(0.0, one), Error);
  CHECK_THROWS_AS(one.bose(cplx(0.0, 2 * kPi)), Error);
  CHECK_THROWS_AS(ThermalState(-1.0), Error);
  CHECK(one.bose(cplx(-800.0, 0.3)) == one.bose(cplx(-800.0, 0.3)));
  CHECK(zero.bose(cplx(0.0, -0.5)) == 0.5);
}

TEST_CASE("spectral correlator forms agree") {
  const auto& s = rod5();
  DielectricRod rod{5, 1, 1};
  ThermalState zero(kInf), one(1.0);
  double closed = 2 * std::pow(std::sin(2.5), 2) / (std::pow(std::sin(5.0), 2) + 25 * std::pow(std::cos(5.0), 2));
  CHECK(std::abs(correlator_closed_rod(rod, 0.5, 0.5, 1.0, zero) - closed) < 1e-14);
  CHECK(std::abs(closed - 0.24442) < 5e-5);
  auto d = correlator_diagonal(s, 0.5, 0.5, 1.0, zero);
  CHECK(std::abs(d.value - closed) < 1e-9);
  auto nd = correlator_nondiagonal(s, 0.5, 0.5, 1.0, zero);
  CHECK(std::abs(nd.value - closed) < 1e-3);
  CHECK(std::abs(nd.value - d.value) <= nd.tail_estimate + d.tail_estimate + 1e-7);
  CHECK(correlator_diagonal(s, 0.0, 0.4, 1.0, one).value == cplx(0.0));

  double worst = 0.0;
  for (double x : {0.1, 0.3, 0.5, 0.7, 0.9})
    for (double y : {0.1, 0.3, 0.5, 0.7, 0.9})
      for (double w : {-2.3, -0.4, 0.6, 1.7, 3.1}) {
        cplx c = correlator_closed_rod(rod, x, y, w, one);
        auto a = correlator_diagonal(s, x, y, w, one);
        auto b = correlator_nondiagonal(s, x, y, w, one);
        auto pf = correlator_diagonal(s, x, y, w, one, {}, DiagonalVariant::PartialFraction);
        CHECK(std::abs(a.value - c) < 1e-8);
        CHECK(std::abs(pf.value - c) < 1e-8);
        CHECK(std::abs(a.value - correlator_diagonal(s, y, x, w, one).value) < 1e-15);
        worst = std::max(worst, std::abs(b.value - a.value) / (b.tail_estimate + a.tail_estimate + 1e-12));
      }
  CHECK(worst <= 1.0);

  // factorization of the double sum
  auto F = [&](double x, double y) { return correlator_nondiagonal(s, x, y, 1.3, one).value; };
  CHECK(std::abs(F(0.2, 0.6) * F(0.8, 0.4) - F(0.2, 0.4) * F(0.8, 0.6)) < 1e-12);
  // classical limit: proportional to temperature
  auto hot = correlator_nondiagonal(s, 0.4, 0.6, 1.0, ThermalState(0.01)).value /
             correlator_nondiagonal(s, 0.4, 0.6, 1.0, ThermalState(0.02)).value;
  CHECK(std::abs(hot.real() - 2.0) < 0.02);
}

TEST_CASE("closed rod correlator limits") {
  ThermalState one(1.0);
  DielectricRod free1{1, 1, 1}, free2{1, 1, 3.7};
  for (double w : {0.4, 2.2}) {
    cplx expect = 2 * std::sin(w * 0.3) * std::sin(w * 0.8) * one.omega_bose(w) / (w * w);
    CHECK(std::abs(correlator_closed_rod(free1, 0.3, 0.8, w, one) - expect) < 1e-14);
    CHECK(std::abs(correlator_closed_rod(free1, 0.3, 0.8, w, one) - correlator_closed_rod(free2, 0.3, 0.8, w, one)) < 1e-14);
  }
}

TEST_CASE("Fourier series resummation") {
  auto r = fourier_resum_check(0.2027, 1.0, 10000);
  CHECK(r.residual < 1e-3);
  CHECK(fourier_resum_check(0.2027, 1.0, 1000).residual > r.residual);
  CHECK(fourier_resum_check(5.0, 1.0, 10000).residual < 1e-3);
  CHECK(std::abs(2.0 * std::exp(5.0) / (std::exp(10.0) - 1.0) - 2.0 * std::exp(-5.0)) < 1e-5);
  CHECK_THROWS_AS(fourier_resum_check(1.0, 2.5, 10), Error);
}

TEST_CASE("mode weights C_j") {
  const auto& s = rod5();
  ThermalState one(1.0);
  // oracle: (i/pi) int_0^inf cos(w t) w N(w) / (w^2 - w_j^2) dw
  for (int j : {0, 1, 3, -4})
    for (double t : {0.1, 1.0}) {
      const auto& m = s.mode(j);
      double wr = std::abs(m.omega.real()), g = std::abs(m.omega.imag());
      auto f = [&](double w) -> cplx {
        return w == 0.0 ? cplx(0.0) : std::cos(w * t) * w / std::expm1(w) / (w * w - m.omega * m.omega);
      };
      cplx q = I / kPi * integrate_adaptive_pieces(f, {0.0, std::max(0.0, wr - 5 * g), wr + 1e-9, wr + 5 * g, 60.0}, 1e-11);
      CHECK(std::abs(mode_weight_C(m, t, one) - q) < 1e-10);
    }
  CHECK(std::abs(mode_weight_C(s.mode(0), 1.0, ThermalState(1e3))) < 1e-3);
  SeriesConfig a, b;
  b.matsubara_terms = 2 * a.matsubara_terms;
  CHECK(std::abs(mode_weight_C(s.mode(2), 0.1, one, a) - mode_weight_C(s.mode(2), 0.1, one, b)) < a.tolerance);
  CHECK_THROWS_AS(mode_weight_C(s.mode(2), 0.0, one), Error);
  CHECK(mode_weight_C(s.mode(2), 1.0, ThermalState(kInf)) == cplx(0.0));
}

TEST_CASE("subtracted correlator") {
  const auto& s = rod5();
  auto p = make_dielectric_rod(5, 1, 1);
  ThermalState one(1.0);
  for (double t : {0.3, 2.0}) {
    auto fs = subtracted_correlator(s, 0.3, 0.3, t, one);
    auto f = [&](double w) {
      w = std::max(w, 1e-9);
      return std::cos(w * t) * (-2 * retarded_green_exact(p, 0.3, 0.3, w).imag()) / std::expm1(w);
    };
    std::vector<double> br;
    for (double w = 0; w <= 60; w += 0.5) br.push_back(w);
    double q = integrate_adaptive_pieces(f, br, 1e-11) / kPi;
    CHECK(std::abs(fs.value.real() - q) < 1e-9);
    CHECK(std::abs(fs.value.imag()) < 1e-12);
  }
  CHECK(subtracted_correlator(s, 0.95, 0.95, 0.1, one).value.real() > subtracted_correlator(s, 0.1, 0.1, 0.1, one).value.real());
  CHECK(subtracted_correlator(s, 0.0, 0.0, 0.1, one).value == cplx(0.0));
}

TEST_CASE("real-time correlator") {
  auto p = make_dielectric_rod(2, 1, 1);
  auto s = qnm_spectrum(p, 200);
  ThermalState one(1.0);
  RealtimeCorrelator F(s, p, 0.3, 0.6, one), Fr(s, p, 0.6, 0.3, one);
  for (double t : {0.2, 1.0, 3.0}) CHECK(std::abs(F(t) - std::conj(Fr(-t))) < 1e-10);
  CHECK_THROWS_AS(F(0.0), Error);

  double gamma = -s.mode(0).omega.imag();
  CHECK(std::abs(gamma - std::log(3.0) / 4.0) < 1e-12);
  RealtimeCorrelator D(s, p, 0.5, 0.5, one);
  // round-trip period of the rod is 2 n a = 4; the envelope shrinks by e^{-4 gamma} per period
  for (double t = 5.0; t <= 6.0; t += 0.25) {
    double rate = -std::log(std::abs(D(t + 4.0)) / std::abs(D(t))) / 4.0;
    CHECK(std::abs(rate - std::min(gamma, 2 * kPi)) < 0.1 * gamma);
  }

  auto spectrum_at = [&](double w) {
    std::vector<double> br;
    for (double t = -100; t <= 100.001; t += 0.5) br.push_back(t);
    return integrate_adaptive_pieces([&](double t) { return D(t == 0.0 ? 1e-12 : t) * std::exp(I * w * t); }, br, 1e-8);
  };
  cplx up = spectrum_at(1.0), down = spectrum_at(-1.0);
  CHECK(std::abs((up / down).real() / std::exp(1.0) - 1.0) < 0.01);
  CHECK(std::abs(up - correlator_closed_rod({2, 1, 1}, 0.5, 0.5, 1.0, one)) < 1e-3 * std::abs(up));
}

TEST_CASE("energy density") {
  const auto& s = rod5();
  auto p = make_dielectric_rod(5, 1, 1);
  CHECK(energy_density_U(s, p, 0.4, ThermalState(kInf)).value == 0.0);
  SeriesConfig c50;
  c50.qnm_terms = 50;
  for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) CHECK(energy_density_U(s, p, x, ThermalState(1.0), c50).value >= 0.0);
  // oracle: (1/2pi) int [rho w^2 (-2 Im G) + (-2 Im dxdy G)] N(w) dw
  for (double beta : {0.5, 2.0}) {
    ThermalState th(beta);
    auto U = energy_density_U(s, p, 0.3, th);
    auto f = [&](double w) {
      w = std::max(w, 1e-9);
      double g = retarded_green_exact(p, 0.3, 0.3, w).imag(), dd = retarded_green_exact_dxdy(p, 0.3, w).imag();
      return (25 * w * w * (-2 * g) - 2 * dd) / std::expm1(beta * w);
    };
    std::vector<double> br;
    for (double w = 0; w <= 80 / beta; w += 0.5) br.push_back(w);
    double q = integrate_adaptive_pieces(f, br, 1e-11) / (2 * kPi);
    CHECK(std::abs(U.value - q) < 1e-3 * q);
    CHECK(std::abs(U.value - q) < std::abs(U.half_terms_value - q));
  }
}

TEST_CASE("tensor correlator and product-space projection") {
  const auto& s = rod5();
  auto p = make_dielectric_rod(5, 1, 1);
  DielectricRod rod{5, 1, 1};
  ThermalState one(1.0);
  auto T = tensor_correlator(s, p, 0.3, 0.6, 1.0, one);
  CHECK(T[0] == correlator_nondiagonal(s, 0.3, 0.6, 1.0, one).value);
  CHECK(std::abs(T[3] - 625.0 * T[0]) < 1e-12 * std::abs(T[3]));
  auto F = [&](double x, double y) { return correlator_closed_rod(rod, x, y, 1.0, one); };
  for (auto [j, k] : std::vector<std::pair<int, int>>{{0, 0}, {1, -2}, {2, 0}, {-3, 4}}) {
    cplx a = tensor_projection(p, F, 1.0, s.mode(j), s.mode(k), 8);
    cplx ref = driven_coefficient_correlator(s.mode(j), s.mode(k), 1.0, one);
    CHECK(std::abs(a - ref) < 1e-4 * std::abs(ref));
  }
  // poles only at w = w_j and w = -w_k
  const auto& j = s.mode(2);
  const auto& k = s.mode(3);
  for (double e : {1e-3, 1e-5}) {
    CHECK(std::abs(driven_coefficient_correlator(j, k, j.omega + e, one)) * e ==
          doctest::Approx(std::abs(driven_coefficient_correlator(j, k, j.omega + 0.1 * e, one)) * 0.1 * e).epsilon(1e-2));
    CHECK(std::abs(driven_coefficient_correlator(j, k, -k.omega + e, one)) * e ==
          doctest::Approx(std::abs(driven_coefficient_correlator(j, k, -k.omega + 0.1 * e, one)) * 0.1 * e).epsilon(1e-2));
  }
  CHECK(std::isfinite(std::abs(driven_coefficient_correlator(j, k, cplx(1e-9, 0.0), one))));
}
