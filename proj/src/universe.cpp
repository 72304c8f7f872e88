#include "qnmcav/universe.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "qnmcav/errors.hpp"

namespace qnmcav {

namespace {

constexpr double kPi = std::numbers::pi;

struct Matching {
  const DielectricRod& rod;
  double L;  // Lambda - a

  double A(double nu) const { return rod.n / rod.n0 * std::cos(rod.n * nu * rod.a); }
  double B(double nu) const { return std::sin(rod.n * nu * rod.a); }
  double operator()(double nu) const {
    double k = rod.n0 * nu * L;
    return A(nu) * std::sin(k) + B(nu) * std::cos(k);
  }
};

UniverseMode make_mode(const Matching& g, double nu) {
  const auto& r = g.rod;
  UniverseMode m;
  m.nu = nu;
  m.A = g.A(nu);
  m.B = g.B(nu);
  const double kin = r.n * nu, k = r.n0 * nu, L = g.L;
  double inside = r.n * r.n * (r.a / 2.0 - std::sin(2.0 * kin * r.a) / (4.0 * kin));
  double outside = r.n0 * r.n0 *
                   ((m.A * m.A + m.B * m.B) * L / 2.0 + (m.B * m.B - m.A * m.A) * std::sin(2.0 * k * L) / (4.0 * k) +
                    m.A * m.B * (1.0 - std::cos(2.0 * k * L)) / (2.0 * k));
  m.norm = 1.0 / std::sqrt(inside + outside);
  return m;
}

void check_lambda(const DielectricRod& rod, double Lambda) {
  if (!(rod.n > 0.0 && rod.n0 > 0.0 && rod.a > 0.0)) throw Error(ErrorCode::InvalidInput, "invalid rod");
  if (!(Lambda >= 50.0 * rod.a)) throw Error(ErrorCode::InvalidInput, "Lambda must be at least 50 a");
}

// Sign-change scan with a step below a quarter of the fastest phase advance.
template <class Stop>
void scan(const Matching& g, double lo, Stop&& stop, std::vector<UniverseMode>& out) {
  const auto& r = g.rod;
  const double slope = r.n0 * g.L + r.n * r.a * std::max(r.n0 / r.n, r.n / r.n0);
  const double step = kPi / slope / 4.0;
  double x0 = lo > 0.0 ? lo : 0.5 * step;
  double f0 = g(x0);
  boost::math::tools::eps_tolerance<double> tol(52);
  for (int guard = 0; guard < 100000000; ++guard) {
    double x1 = x0 + step, f1 = g(x1);
    if (f0 == 0.0 && x0 > lo) {
      out.push_back(make_mode(g, x0));
    } else if (f0 * f1 < 0.0) {
      std::uintmax_t it = 100;
      auto br = boost::math::tools::toms748_solve(g, x0, x1, f0, f1, tol, it);
      if (it >= 100) throw Error(ErrorCode::BracketFailure, "universe mode bracketing did not converge");
      out.push_back(make_mode(g, 0.5 * (br.first + br.second)));
    }
    if (stop(x1)) return;
    x0 = x1;
    f0 = f1;
  }
  throw Error(ErrorCode::BracketFailure, "universe mode scan exceeded its budget");
}

std::size_t bracket(const UniverseSpectrum& u, double w) {
  const auto& m = u.modes;
  if (m.size() < 2 || w < m.front().nu || w > m.back().nu)
    throw Error(ErrorCode::InvalidInput, "frequency outside the computed universe modes");
  auto it = std::upper_bound(m.begin(), m.end(), w, [](double v, const UniverseMode& q) { return v < q.nu; });
  std::size_t i = static_cast<std::size_t>(it - m.begin());
  return std::min(i, m.size() - 1) - 1;
}

// psi normalization squared times the mode density, divided by pi, interpolated at w.
double density_at(const UniverseSpectrum& u, double w, MuEstimator est) {
  std::size_t i = bracket(u, w);
  const auto& m = u.modes;
  auto weight = [&](std::size_t l) {
    double n2 = m[l].norm * m[l].norm;
    if (est == MuEstimator::BoxDensity) return n2 * u.rod.n0 * u.Lambda / kPi;
    double lo = l > 0 ? m[l - 1].nu : m[l].nu, hi = l + 1 < m.size() ? m[l + 1].nu : m[l].nu;
    int gaps = (l > 0 ? 1 : 0) + (l + 1 < m.size() ? 1 : 0);
    return n2 * gaps / (hi - lo);
  };
  // cubic Lagrange on the reciprocal weight, which stays smooth across a resonance
  std::size_t lo = i > 0 ? i - 1 : 0;
  lo = std::min(lo, m.size() >= 4 ? m.size() - 4 : 0);
  std::size_t hi = std::min(lo + 4, m.size());
  double inv = 0.0;
  for (std::size_t a = lo; a < hi; ++a) {
    double basis = 1.0;
    for (std::size_t b = lo; b < hi; ++b)
      if (b != a) basis *= (w - m[b].nu) / (m[a].nu - m[b].nu);
    inv += basis / weight(a);
  }
  return 1.0 / inv;
}

void check_inside(const UniverseSpectrum& u, double x) {
  if (x < 0.0 || x > u.rod.a) throw Error(ErrorCode::InvalidInput, "universe estimators need 0 <= x <= a");
}

}  // namespace

double UniverseSpectrum::psi(const UniverseMode& m, double x) const {
  if (x <= rod.a) return m.norm * std::sin(rod.n * m.nu * x);
  double k = rod.n0 * m.nu * (x - rod.a);
  return m.norm * (m.A * std::sin(k) + m.B * std::cos(k));
}

UniverseSpectrum universe_modes(const DielectricRod& rod, const UniverseConfig& cfg) {
  check_lambda(rod, cfg.Lambda);
  if (cfg.mode_count < 1) throw Error(ErrorCode::InvalidInput, "mode_count must be positive");
  UniverseSpectrum u{rod, cfg.Lambda, {}};
  Matching g{rod, cfg.Lambda - rod.a};
  scan(g, 0.0, [&](double) { return static_cast<int>(u.modes.size()) >= cfg.mode_count; }, u.modes);
  u.modes.resize(static_cast<std::size_t>(cfg.mode_count));
  return u;
}

UniverseSpectrum universe_modes_between(const DielectricRod& rod, double Lambda, double lo, double hi) {
  check_lambda(rod, Lambda);
  if (!(hi > lo && lo >= 0.0)) throw Error(ErrorCode::InvalidInput, "need 0 <= lo < hi");
  UniverseSpectrum u{rod, Lambda, {}};
  Matching g{rod, Lambda - rod.a};
  scan(g, lo, [&](double x) { return x >= hi; }, u.modes);
  while (!u.modes.empty() && u.modes.back().nu >= hi) u.modes.pop_back();
  return u;
}

cplx mu_correlator(const UniverseSpectrum& u, double x, double y, double omega, const ThermalState& th,
                   MuEstimator est) {
  check_inside(u, x);
  check_inside(u, y);
  if (omega == 0.0) throw Error(ErrorCode::PoleAt, "universe correlator needs omega != 0");
  const double w = std::abs(omega), n = u.rod.n;
  double pp = density_at(u, w, est) * std::sin(n * w * x) * std::sin(n * w * y);
  return kPi * pp * th.omega_bose(omega) / (omega * omega);
}

double mu_dos(const UniverseSpectrum& u, double x, double omega, MuEstimator est) {
  check_inside(u, x);
  if (!(omega > 0.0)) throw Error(ErrorCode::InvalidInput, "universe DOS needs omega > 0");
  double s = std::sin(u.rod.n * omega * x);
  return density_at(u, omega, est) * s * s;
}

double mu_interior_weight(const UniverseSpectrum& u) {
  const auto& r = u.rod;
  double sum = 0.0;
  for (const auto& m : u.modes) {
    double k = r.n * m.nu;
    sum += r.n * r.n * m.norm * m.norm * (r.a / 2.0 - std::sin(2.0 * k * r.a) / (4.0 * k));
  }
  return sum;
}

int mu_mode_count(const UniverseSpectrum& u, double omega_max) {
  return static_cast<int>(std::count_if(u.modes.begin(), u.modes.end(),
                                        [&](const UniverseMode& m) { return m.nu > 0.0 && m.nu < omega_max; }));
}

}  // namespace qnmcav
