#include "qnmcav/quantization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qnmcav/errors.hpp"

namespace qnmcav {

namespace {

const cplx I(0.0, 1.0);

cplx overlap(const QnmMode& j, const QnmMode& k, const CavityProfile& p, bool conj_j) {
  double scale = std::max(std::abs(j.omega), std::abs(k.omega));
  QuadRule r = segment_rule(p, scale, 4);
  return integrate(r, [&](double x) {
    cplx fj = j.value(x);
    return rho_at(p, x, Side::Inside) * (conj_j ? std::conj(fj) : fj) * k.value(x);
  });
}

void phi_functions(cplx z, cplx& phi1, cplx& phi2) {
  if (std::abs(z) < 0.5) {
    phi1 = 0.0;
    phi2 = 0.0;
    cplx zk = 1.0;
    double fact = 1.0;
    for (int k = 0; k < 24; ++k) {
      phi1 += zk / (fact * (k + 1));
      phi2 += zk / (fact * (k + 1) * (k + 2));
      zk *= z;
      fact *= k + 1;
    }
    return;
  }
  cplx ez = std::exp(z);
  phi1 = (ez - 1.0) / z;
  phi2 = (ez - 1.0 - z) / (z * z);
}

}  // namespace

cplx commutator_integral(const QnmMode& j, const QnmMode& k, const CavityProfile& p, bool creation) {
  if (!creation) {
    if (j.omega == k.omega) return 0.0;
    return (k.omega - j.omega) / (4.0 * j.omega * k.omega) * overlap(j, k, p, false);
  }
  cplx wj = std::conj(j.omega);
  return -(k.omega + wj) / (4.0 * wj * k.omega) * overlap(j, k, p, true);
}

cplx commutator_surface(const QnmMode& j, const QnmMode& k, bool creation) {
  const double n0 = j.n0;
  if (!creation) {
    if (j.omega == k.omega) return 0.0;
    if (std::abs(j.omega + k.omega) < 1e-9) throw Error(ErrorCode::DegeneratePair, "omega_j + omega_k vanishes");
    return I * n0 * (j.omega - k.omega) * j.f_a * k.f_a / (4.0 * j.omega * k.omega * (j.omega + k.omega));
  }
  cplx wj = std::conj(j.omega);
  if (std::abs(wj - k.omega) < 1e-9) throw Error(ErrorCode::DegeneratePair, "conj(omega_j) - omega_k vanishes");
  return -I * n0 * (wj + k.omega) * std::conj(j.f_a) * k.f_a / (4.0 * wj * k.omega * (wj - k.omega));
}

std::vector<CommutatorRow> commutator_table(const Spectrum& s, const CavityProfile& p, int jmax) {
  std::vector<QnmMode> modes;
  for (int j = -jmax; j <= jmax; ++j) {
    try {
      modes.push_back(s.mode(j));
    } catch (const Error&) {
    }
  }
  std::vector<CommutatorRow> out;
  for (const auto& a : modes)
    for (const auto& b : modes) {
      if (std::abs(a.omega + b.omega) < 1e-9) continue;
      out.push_back({a.j, b.j, commutator_integral(a, b, p), commutator_surface(a, b)});
    }
  return out;
}

AlphaPair alpha_map(const QnmMode& j, cplx a_j, cplx a_minus_j) {
  return {std::sqrt(2.0 * j.omega) * a_j, std::sqrt(2.0 * std::conj(j.omega)) * a_minus_j};
}

cplx alpha_commutator(const QnmMode& j) {
  return std::sqrt(2.0 * std::conj(j.omega)) * std::sqrt(2.0 * j.omega) * commutator_surface(j, j, true);
}

EnergyBalance energy_balance_check(const QnmMode& m, const CavityProfile& p) {
  QuadRule r = segment_rule(p, std::abs(m.omega), 4);
  const double w2 = std::norm(m.omega);
  double e = 0.5 * integrate(r, [&](double x) {
               return std::norm(m.derivative(x)) + rho_at(p, x, Side::Inside) * w2 * std::norm(m.value(x));
             });
  double flux = m.n0 * w2 * std::norm(m.f_a);
  double gamma = std::abs(m.omega.imag());
  return {e, flux, std::abs(2.0 * gamma * e - flux) / flux};
}

DrivenResponse driven_mode_response(const QnmMode& m, const ForceSignal& force, cplx a0) {
  if (!(force.dt > 0.0) || force.b.empty()) throw Error(ErrorCode::InvalidInput, "force signal needs dt > 0 and samples");
  const double h = force.dt;
  if (h * std::abs(m.omega) > 0.5)
    throw Error(ErrorCode::UnderResolved, "time step does not resolve the mode frequency");
  const cplx c = I * m.f_a / (2.0 * m.omega);
  const cplx z = -I * m.omega * h;
  const cplx ez = std::exp(z);
  cplx phi1, phi2;
  phi_functions(z, phi1, phi2);
  const std::size_t n = force.b.size();
  DrivenResponse out;
  out.t.resize(n);
  out.a.resize(n);
  out.a[0] = a0;
  for (std::size_t i = 0; i < n; ++i) out.t[i] = force.t0 + h * static_cast<double>(i);
  for (std::size_t i = 0; i + 1 < n; ++i)
    out.a[i + 1] = ez * out.a[i] + c * h * (force.b[i] * (phi1 - phi2) + force.b[i + 1] * phi2);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    cplx da = (-out.a[i + 2] + 8.0 * out.a[i + 1] - 8.0 * out.a[i - 1] + out.a[i - 2]) / (12.0 * h);
    cplx res = da + I * m.omega * out.a[i] - c * force.b[i];
    worst = std::max(worst, std::abs(res));
    scale = std::max({scale, std::abs(m.omega * out.a[i]), std::abs(c * force.b[i])});
  }
  out.residual = scale > 0.0 ? worst / scale : 0.0;
  return out;
}

cplx antisymmetrized_commutator(const QnmMode& j, const QnmMode& k, const ThermalState& th, double tol) {
  auto integrand = [&](double w) {
    return driven_coefficient_correlator(j, k, w, th) - driven_coefficient_correlator(k, j, w, th);
  };
  std::vector<double> br;
  const double span = 4.0 * std::max(std::abs(j.omega), std::abs(k.omega)) + 10.0;
  for (double c : {j.omega.real(), k.omega.real(), -j.omega.real(), -k.omega.real()})
    for (double g : {-5.0, -1.0, 0.0, 1.0, 5.0}) br.push_back(c + g * std::max(std::abs(j.omega.imag()), std::abs(k.omega.imag())));
  br.push_back(-span);
  br.push_back(span);
  br.push_back(0.0);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  cplx mid = integrate_adaptive_pieces(integrand, br, tol);
  const double inf = std::numeric_limits<double>::infinity();
  cplx tails = integrate_adaptive(integrand, span, inf, tol) +
               integrate_adaptive([&](double w) { return integrand(-w); }, span, inf, tol);
  return (mid + tails) / (2.0 * std::numbers::pi);
}

}  // namespace qnmcav
