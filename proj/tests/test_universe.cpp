#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "qnmcav/dos.hpp"
#include "qnmcav/errors.hpp"
#include "qnmcav/universe.hpp"

using namespace qnmcav;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("universe modes") {
  DielectricRod rod{5, 1, 1};
  auto u = universe_modes(rod, {100.0, 150});
  REQUIRE(u.modes.size() == 150);
  for (std::size_t i = 1; i < u.modes.size(); ++i) {
    CHECK(u.modes[i].nu > u.modes[i - 1].nu);
    double gap = u.modes[i].nu - u.modes[i - 1].nu;
    CHECK(std::abs(gap - kPi / 100.0) < 0.5 * kPi / 100.0);
  }
  for (const auto& m : u.modes) CHECK(std::abs(u.psi(m, u.Lambda)) < 1e-9);
  CHECK(std::abs(mu_mode_count(u, 1.0) - 100.0 / kPi) <= 2.0);

  DielectricRod free{1, 1, 1};
  auto f = universe_modes(free, {200.0, 50});
  for (std::size_t l = 0; l < f.modes.size(); ++l) CHECK(std::abs(f.modes[l].nu - (l + 1) * kPi / 200.0) < 1e-12);
  CHECK(std::abs(f.psi(f.modes[3], 37.3) - std::sqrt(2.0 / 200.0) * std::sin(f.modes[3].nu * 37.3)) < 1e-12);
  CHECK_THROWS_AS(universe_modes(rod, {20.0, 10}), Error);
}

TEST_CASE("universe correlator and DOS") {
  DielectricRod rod{5, 1, 1};
  auto p = make_dielectric_rod(5, 1, 1);
  ThermalState zero(std::numeric_limits<double>::infinity()), one(1.0);
  auto u = universe_modes(rod, {200.0, 300});
  cplx c = mu_correlator(u, 0.5, 0.5, 1.0, zero);
  CHECK(std::abs(c - 0.24442) < 0.01 * 0.24442);
  double w0 = kPi / 10;
  CHECK(std::abs(mu_dos(u, 0.5, w0) - local_dos_exact(p, 0.5, w0)) < 0.02 * local_dos_exact(p, 0.5, w0));
  // factorization
  CHECK(std::abs(mu_correlator(u, 0.2, 0.6, 1.3, one) * mu_correlator(u, 0.8, 0.4, 1.3, one) -
                 mu_correlator(u, 0.2, 0.4, 1.3, one) * mu_correlator(u, 0.8, 0.6, 1.3, one)) < 1e-14);

  auto err = [&](double L, MuEstimator e) {
    auto v = universe_modes(rod, {L, static_cast<int>(1.5 * L)});
    double worst = 0.0;
    for (double w : {0.25, w0, 0.5, 1.0, 2.2}) {
      cplx ex = correlator_closed_rod(rod, 0.5, 0.5, w, one);
      worst = std::max(worst, std::abs(mu_correlator(v, 0.5, 0.5, w, one, e) - ex) / std::abs(ex));
    }
    return worst;
  };
  for (auto e : {MuEstimator::LocalSpacing, MuEstimator::BoxDensity}) {
    double e1 = err(200, e), e2 = err(400, e), e3 = err(800, e);
    MESSAGE("estimator " << static_cast<int>(e) << " errors " << e1 << " " << e2 << " " << e3 << ", order "
                         << std::log2(e2 / e3));
    CHECK(e2 < 0.55 * e1);
    CHECK(e3 < 0.55 * e2);
  }
  CHECK_THROWS_AS(mu_dos(u, 0.5, 50.0), Error);
  CHECK_THROWS_AS(mu_dos(u, 1.5, 0.5), Error);
}

TEST_CASE("universe free and unit-weight checks") {
  DielectricRod free{1, 1, 1};
  auto f = universe_modes(free, {200.0, 400});
  double lo = 1e9, hi = -1e9;
  for (double w = 0.3; w < 3.0; w += 0.0137) {
    double v = mu_dos(f, 0.4, w) / std::pow(std::sin(0.4 * w), 2);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi - lo < 1e-10);
  CHECK(std::abs(hi - 2.0 / kPi) < 1e-10);

  DielectricRod r50{50, 1, 1};
  double c0 = kPi / 100.0, half = kPi / 100.0;
  auto u = universe_modes_between(r50, 2000.0, c0 - half, c0 + half);
  CHECK(u.modes.size() > 20);
  CHECK(std::abs(mu_interior_weight(u) - 1.0) < 0.03);
}
