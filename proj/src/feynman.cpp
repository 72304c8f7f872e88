#include "qnmcav/feynman.hpp"

#include <cmath>
#include <numbers>

#include "qnmcav/errors.hpp"
#include "qnmcav/greens.hpp"

namespace qnmcav {

namespace {

const cplx I(0.0, 1.0);

double theta(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? 0.0 : 0.5); }

struct Shells {
  std::vector<std::vector<QnmMode>> groups;
};

Shells shells(const Spectrum& s, int n) {
  Shells out;
  n = std::min<int>(n, static_cast<int>(s.size()));
  for (int i = 0; i < n; ++i) {
    const QnmMode& r = s.representatives()[i];
    std::vector<QnmMode> g{r};
    if (!r.is_imaginary()) g.push_back(r.partner(s.partner_index(r.j)));
    out.groups.push_back(std::move(g));
  }
  return out;
}

void guard_poles(const Spectrum& s, double omega) {
  for (const auto& m : s.representatives())
    if (std::abs(std::abs(omega) - m.omega.real()) < 1e-6 && std::abs(m.omega.imag()) < 1e-6)
      throw Error(ErrorCode::PoleAt, "propagator evaluated on a resonance");
}

}  // namespace

const char* to_string(PropagatorForm f) {
  switch (f) {
    case PropagatorForm::Nondiagonal: return "nondiagonal";
    case PropagatorForm::Diagonal: return "diagonal";
    case PropagatorForm::DiagonalAlt: return "diagonal_alt";
    case PropagatorForm::ClosedRod: return "closed";
    case PropagatorForm::Exact: return "exact";
  }
  return "?";
}

SeriesResult feynman_nondiagonal(const Spectrum& s, double x, double y, double omega, const SeriesConfig& cfg) {
  check_config(cfg);
  guard_poles(s, omega);
  auto sh = shells(s, cfg.qnm_terms);
  const double tp = theta(omega), tm = theta(-omega);
  struct Pre {
    cplx w, u, v;
  };
  std::vector<std::vector<Pre>> pre;
  for (const auto& g : sh.groups) {
    std::vector<Pre> row;
    for (const auto& m : g) row.push_back({m.omega, m.f_a * m.value(x) / m.omega, m.f_a * m.value(y) / m.omega});
    pre.push_back(std::move(row));
  }
  auto term = [&](const Pre& j, const Pre& k) {
    cplx brace = tp * j.w / (j.w - omega) + tm * k.w / (k.w + omega);
    return j.u * k.v / (2.0 * (j.w + k.w)) * brace;
  };
  const double n0 = s.size() ? s.representatives()[0].n0 : 1.0;
  PairAccumulator acc(static_cast<int>(pre.size()));
  for (std::size_t i = 0; i < pre.size(); ++i) {
    cplx shell = 0.0;
    for (std::size_t l = 0; l <= i; ++l)
      for (const auto& a : pre[i])
        for (const auto& b : pre[l]) {
          shell += term(a, b);
          if (l != i) shell += term(b, a);
        }
    acc.add(-I * n0 * shell);
  }
  return acc.finish(cfg.tail_policy, cfg.extrapolate);
}

SeriesResult feynman_diagonal(const Spectrum& s, double x, double y, double omega, const SeriesConfig& cfg) {
  check_config(cfg);
  guard_poles(s, omega);
  const double w = std::abs(omega);
  return pair_sum(
      s, cfg.qnm_terms, [&](const QnmMode& m) { return 0.5 * m.value(x) * m.value(y) / (m.omega * (w - m.omega)); },
      cfg.tail_policy, cfg.extrapolate);
}

SeriesResult feynman_diagonal_alt(const Spectrum& s, double x, double y, double omega, const SeriesConfig& cfg) {
  check_config(cfg);
  if (omega == 0.0) throw Error(ErrorCode::PoleAt, "diagonal_alt form diverges at omega = 0");
  guard_poles(s, omega);
  const double w = std::abs(omega);
  return pair_sum(
      s, cfg.qnm_terms, [&](const QnmMode& m) { return 0.5 * m.value(x) * m.value(y) / (w * (w - m.omega)); },
      cfg.tail_policy, cfg.extrapolate);
}

cplx feynman_closed_rod(const DielectricRod& rod, double x, double y, double omega) {
  if (x > y) std::swap(x, y);
  const double n = rod.n, n0 = rod.n0, a = rod.a, w = std::abs(omega);
  double lead = omega == 0.0 ? x : std::sin(n * omega * x) / (n * omega);
  cplx num = n * std::cos(n * omega * (a - y)) - I * n0 * std::sin(n * w * (a - y));
  cplx den = n * std::cos(n * omega * a) - I * n0 * std::sin(n * w * a);
  return -lead * num / den;
}

cplx feynman_exact(const CavityProfile& p, double x, double y, double omega) {
  return retarded_green_exact(p, x, y, std::abs(omega));
}

SeriesResult feynman(PropagatorForm form, const Spectrum& s, const CavityProfile& p, double x, double y,
                     double omega, const SeriesConfig& cfg) {
  switch (form) {
    case PropagatorForm::Nondiagonal:
      return feynman_nondiagonal(s, x, y, omega, cfg);
    case PropagatorForm::Diagonal:
      return feynman_diagonal(s, x, y, omega, cfg);
    case PropagatorForm::DiagonalAlt:
      return feynman_diagonal_alt(s, x, y, omega, cfg);
    case PropagatorForm::ClosedRod: {
      auto rod = as_rod(p);
      if (!rod) throw Error(ErrorCode::InvalidInput, "closed form needs a dielectric rod profile");
      return {feynman_closed_rod(*rod, x, y, omega), 0, 0.0};
    }
    case PropagatorForm::Exact:
      return {feynman_exact(p, x, y, omega), 0, 0.0};
  }
  return {};
}

cplx resonance_approx_D_continued(ResonanceApprox kind, const QnmMode& m, double x, cplx omega) {
  const cplx wj = m.omega, f = m.value(x);
  if (kind == ResonanceApprox::RaPrime) return f * f / (2.0 * wj * (omega - wj));
  double pref = m.n0 * std::norm(f * m.f_a) / (4.0 * std::norm(wj) * std::abs(wj.imag()));
  return pref * (wj / (omega - wj) - std::conj(wj) / (omega + std::conj(wj)));
}

cplx resonance_approx_D(ResonanceApprox kind, const QnmMode& m, double x, double omega) {
  return resonance_approx_D_continued(kind, m, x, std::abs(omega));
}

RetardedAdvanced check_retarded_advanced(const CavityProfile& p, const QnmMode& m, double x, double omega) {
  if (!(omega > 0.0)) throw Error(ErrorCode::InvalidInput, "retarded/advanced check needs omega > 0");
  RetardedAdvanced r;
  r.full = std::abs(retarded_green_exact(p, x, x, omega) - std::conj(retarded_green_exact(p, x, x, -omega)));
  auto gap = [&](ResonanceApprox k) {
    return std::abs(resonance_approx_D_continued(k, m, x, omega) -
                    std::conj(resonance_approx_D_continued(k, m, x, -omega)));
  };
  r.ra = gap(ResonanceApprox::Ra);
  r.ra_prime = gap(ResonanceApprox::RaPrime);
  return r;
}

cplx residue(const std::function<cplx(cplx)>& f, cplx center, double radius, int points) {
  cplx sum = 0.0;
  for (int i = 0; i < points; ++i) {
    cplx e = std::polar(1.0, 2.0 * std::numbers::pi * i / points);
    sum += f(center + radius * e) * radius * e;
  }
  return sum / static_cast<double>(points);
}

double offdiagonal_mass(const Spectrum& s, int n) {
  auto sh = shells(s, n);
  std::vector<QnmMode> modes;
  for (auto& g : sh.groups)
    for (auto& m : g) modes.push_back(m);
  double off = 0.0, all = 0.0;
  for (const auto& j : modes)
    for (const auto& k : modes) {
      double w = std::abs(j.f_a * k.f_a / (2.0 * j.omega * k.omega * (j.omega + k.omega)));
      all += w;
      if (k.j != s.partner_index(j.j)) off += w;
    }
  return off / all;
}

}  // namespace qnmcav
