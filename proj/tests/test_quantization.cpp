#include <doctest.h>

#include <cmath>

#include "qnmcav/errors.hpp"
#include "qnmcav/quantization.hpp"

using namespace qnmcav;

TEST_CASE("commutator dual forms") {
  CavityProfile two{{{0.0, 9.0}, {0.6, 2.25}}, 1.0, 1.0};
  for (const auto& p : {make_dielectric_rod(5, 1, 1), make_dielectric_rod(50, 1, 1), two}) {
    auto s = qnm_spectrum(p, 10);
    auto rows = commutator_table(s, p, 8);
    CHECK(rows.size() >= 16 * 16 - 16);
    for (const auto& r : rows) CHECK(std::abs(r.integral - r.surface) < 1e-8);
    auto a = s.mode(1), b = s.mode(2);
    CHECK(commutator_integral(a, a, p) == cplx(0.0));
    CHECK(std::abs(commutator_integral(a, b, p) + commutator_integral(b, a, p)) < 1e-12);
    CHECK(std::abs(commutator_surface(a, b) + commutator_surface(b, a)) < 1e-15);
  }
  auto p = make_dielectric_rod(5, 1, 1);
  auto s = qnm_spectrum(p, 4);
  auto m = s.mode(2), mp = s.mode(s.partner_index(2));
  // plain (j, partner) pair is finite and matches the integral form
  CHECK(std::abs(commutator_surface(m, mp) - commutator_integral(m, mp, p)) < 1e-12);
  CHECK(std::abs(commutator_surface(m, m, true) - commutator_integral(m, m, p, true)) < 1e-12);
  // the creation form of (j, j) is the plain form of (partner(j), j)
  CHECK(std::abs(commutator_surface(m, m, true) - commutator_surface(mp, m)) < 1e-14);

  QnmMode fake = m;
  fake.omega = m.omega.real();
  CHECK_THROWS_AS(commutator_surface(fake, fake, true), Error);
}

TEST_CASE("conservative-limit normalization") {
  auto scaled = [](double n) {
    auto m = qnm_spectrum(make_dielectric_rod(n, 1, 1), 2).mode(0);
    return 2 * std::abs(m.omega) * commutator_surface(m, m, true);
  };
  cplx c5 = scaled(5), c50 = scaled(50);
  CHECK(std::abs(c50 + 1.0) < std::abs(c5 + 1.0));
  CHECK(std::abs(c50 + 1.0) < 1e-3);
  auto m = qnm_spectrum(make_dielectric_rod(5, 1000, 1), 3).mode(1);
  CHECK(std::abs(alpha_commutator(m) + 1.0) < 0.01);
  auto al = alpha_map(m, cplx(0.3, 0.2), cplx(-0.1, 0.4));
  CHECK(al.alpha == std::sqrt(2.0 * m.omega) * cplx(0.3, 0.2));
  QnmMode mc = m;
  mc.omega = std::conj(m.omega);
  auto alc = alpha_map(mc, std::conj(cplx(0.3, 0.2)), std::conj(cplx(-0.1, 0.4)));
  CHECK(std::abs(alc.alpha - std::conj(al.alpha)) < 1e-15);
}

TEST_CASE("energy balance") {
  auto p = make_dielectric_rod(5, 1, 1);
  auto s = qnm_spectrum(p, 6);
  for (int j = 0; j <= 5; ++j) CHECK(energy_balance_check(s.mode(j), p).residual < 1e-8);
  QnmMode twice = s.mode(3);
  for (auto& c : twice.segment_coeffs) c = {2.0 * c.first, 2.0 * c.second};
  twice.f_a *= 2.0;
  CHECK(std::abs(energy_balance_check(twice, p).residual - energy_balance_check(s.mode(3), p).residual) < 1e-12);
  auto p50 = make_dielectric_rod(50, 1, 1);
  auto m50 = qnm_spectrum(p50, 1).mode(0);
  CHECK(std::abs(energy_balance_check(m50, p50).energy / std::norm(m50.omega) - 1.0) < 0.005);
}

TEST_CASE("driven mode") {
  auto s = qnm_spectrum(make_dielectric_rod(5, 1, 1), 3);
  auto m = s.mode(1);
  ForceSignal zero{0.0, 0.01, std::vector<cplx>(3001, 0.0)};
  auto r = driven_mode_response(m, zero, cplx(0.6, -0.8));
  for (std::size_t i = 0; i < r.a.size(); ++i)
    CHECK(std::abs(std::abs(r.a[i]) - std::exp(m.omega.imag() * r.t[i])) < 1e-10);

  const double nu = 1.3;
  ForceSignal mono{0.0, 1e-3, {}};
  for (int i = 0; i < 400000; ++i) mono.b.push_back(std::exp(cplx(0.0, -nu * i * mono.dt)));
  auto d = driven_mode_response(m, mono, 0.0);
  cplx amp = m.f_a / (2.0 * m.omega * (m.omega - nu));
  CHECK(std::abs(d.a.back() * std::exp(cplx(0.0, nu * d.t.back())) - amp) < 1e-6 * std::abs(amp));

  ForceSignal smooth{0.0, 2e-4, {}};
  for (int i = 0; i < 20000; ++i) {
    double t = i * smooth.dt;
    smooth.b.push_back(std::exp(-t) * cplx(std::cos(2 * t), std::sin(0.5 * t)));
  }
  CHECK(driven_mode_response(m, smooth, 0.3).residual < 1e-8);
  CHECK_THROWS_AS(driven_mode_response(m, ForceSignal{0.0, 1.0, {1.0, 1.0}}, 0.0), Error);
}

TEST_CASE("antisymmetrized inversion reproduces the commutator") {
  auto s = qnm_spectrum(make_dielectric_rod(5, 1, 1), 5);
  for (auto [j, k] : std::vector<std::pair<int, int>>{{0, 1}, {0, -1}, {1, -3}, {2, 3}}) {
    cplx c = commutator_surface(s.mode(j), s.mode(k));
    for (double beta : {1.0, 3.0}) {
      cplx v = antisymmetrized_commutator(s.mode(j), s.mode(k), ThermalState(beta));
      CHECK(std::abs(v - c) < 1e-4 * std::abs(c));
    }
  }
}
