#include "qnmcav/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qnmcav/errors.hpp"
#include "qnmcav/homogeneous.hpp"

namespace qnmcav {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

std::size_t locate(const std::vector<double>& edges, double x) {
  std::size_t i = 0;
  while (i + 2 < edges.size() && x >= edges[i + 1]) ++i;
  return i;
}

struct ContourFailure {};

// Accumulated arg change of the reduced Wronskian along a straight line.
double phase_change(const CavityProfile& p, cplx z0, cplx z1) {
  const double L = p.optical_length() + p.n0() * p.a;
  const int n = std::max(8, static_cast<int>(std::ceil(std::abs(z1 - z0) * L * 2.0)));
  auto W = [&](cplx z) { return reduced_wronskian(p, z).w; };
  double total = 0.0;
  // Recursive refinement keeps each step below pi/6 of phase.
  auto seg = [&](auto&& self, cplx a, cplx b, cplx wa, cplx wb, int depth) -> double {
    double d = std::arg(wb / wa);
    if (std::abs(d) < kPi / 6.0) return d;
    if (depth > 40) throw ContourFailure{};
    cplx m = 0.5 * (a + b);
    cplx wm = W(m);
    if (std::abs(wm) == 0.0) throw ContourFailure{};
    return self(self, a, m, wa, wm, depth + 1) + self(self, m, b, wm, wb, depth + 1);
  };
  cplx prev = W(z0);
  for (int i = 1; i <= n; ++i) {
    cplx z = z0 + (z1 - z0) * (static_cast<double>(i) / n);
    cplx w = W(z);
    if (std::abs(w) == 0.0 || !std::isfinite(std::abs(w)) || std::abs(prev) == 0.0) throw ContourFailure{};
    total += seg(seg, z0 + (z1 - z0) * (static_cast<double>(i - 1) / n), z, prev, w, 0);
    prev = w;
  }
  return total;
}

int contour_count(const CavityProfile& p, double r0, double r1, double i0, double i1) {
  cplx a(r0, i0), b(r1, i0), c(r1, i1), d(r0, i1);
  double t = phase_change(p, a, b) + phase_change(p, b, c) + phase_change(p, c, d) + phase_change(p, d, a);
  double k = t / (2.0 * kPi);
  if (std::abs(k - std::round(k)) > 0.05) throw ContourFailure{};
  return static_cast<int>(std::lround(k));
}

struct Rect {
  double r0, r1, i0, i1;
  bool contains(cplx z, double slack) const {
    return z.real() >= r0 - slack && z.real() <= r1 + slack && z.imag() >= i0 - slack && z.imag() <= i1 + slack;
  }
};

double wronskian_scale(const WronskianEval& e, cplx omega, double n0) {
  return std::abs(e.fa.du) + n0 * std::abs(omega * e.fa.u);
}

std::optional<cplx> newton(const CavityProfile& p, cplx z, double tol) {
  for (int it = 0; it < 80; ++it) {
    auto e = reduced_wronskian(p, z);
    if (e.dw == 0.0) return std::nullopt;
    cplx step = e.w / e.dw;
    double cap = 0.5 * std::max(1.0, std::abs(z));
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    z -= step;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
    if (std::abs(step) <= tol * std::max(1.0, std::abs(z))) {
      auto f = reduced_wronskian(p, z);
      if (std::abs(f.w) <= 1e-10 * wronskian_scale(f, z, p.n0())) return z;
    }
  }
  auto f = reduced_wronskian(p, z);
  if (std::abs(f.w) <= 1e-10 * wronskian_scale(f, z, p.n0())) return z;
  return std::nullopt;
}

// Real Newton along the imaginary axis, where the reduced Wronskian is real.
cplx snap_imaginary(const CavityProfile& p, cplx z) {
  double y = z.imag();
  for (int it = 0; it < 60; ++it) {
    auto e = reduced_wronskian(p, cplx(0.0, y));
    double dy = e.w.real() / (I * e.dw).real();
    y -= dy;
    if (std::abs(dy) <= 1e-15 * std::abs(y)) break;
  }
  return {0.0, y};
}

class RootSearch {
 public:
  RootSearch(const CavityProfile& p, double tol) : p_(p), tol_(tol) {}

  void solve(const Rect& r, int count, int depth) {
    if (count == 0) return;
    if (depth > 60) throw Error(ErrorCode::NoConvergence, "root isolation did not terminate");
    double width = r.r1 - r.r0, height = r.i1 - r.i0;
    if (count == 1) {
      cplx c(0.5 * (r.r0 + r.r1), 0.5 * (r.i0 + r.i1));
      if (auto z = newton(p_, c, tol_); z && r.contains(*z, 1e-9 * std::max(1.0, std::abs(*z)))) {
        roots_.push_back(*z);
        return;
      }
      if (std::max(width, height) < 1e-12) throw Error(ErrorCode::NoConvergence, "Newton failed in isolated box");
    }
    bool split_re = width >= height;
    static constexpr double fracs[] = {0.5, 0.41, 0.59, 0.33, 0.67, 0.45, 0.55};
    for (double fr : fracs) {
      Rect a = r, b = r;
      if (split_re) {
        a.r1 = b.r0 = r.r0 + fr * width;
      } else {
        a.i1 = b.i0 = r.i0 + fr * height;
      }
      try {
        int ca = contour_count(p_, a.r0, a.r1, a.i0, a.i1);
        int cb = contour_count(p_, b.r0, b.r1, b.i0, b.i1);
        if (ca + cb != count || ca < 0 || cb < 0) continue;
        solve(a, ca, depth + 1);
        solve(b, cb, depth + 1);
        return;
      } catch (const ContourFailure&) {
        continue;
      }
    }
    throw Error(ErrorCode::RootCountMismatch, "could not split search box consistently");
  }

  std::vector<cplx> roots_;

 private:
  const CavityProfile& p_;
  double tol_;
};

}  // namespace

cplx QnmMode::value(double x) const {
  std::size_t i = locate(edges, x);
  cplx k = sqrt_rho[i] * omega;
  return segment_coeffs[i].first * std::sin(k * x) + segment_coeffs[i].second * std::cos(k * x);
}

cplx QnmMode::derivative(double x) const {
  std::size_t i = locate(edges, x);
  cplx k = sqrt_rho[i] * omega;
  return k * (segment_coeffs[i].first * std::cos(k * x) - segment_coeffs[i].second * std::sin(k * x));
}

QnmMode QnmMode::partner(int partner_j) const {
  QnmMode m = *this;
  m.j = partner_j;
  m.omega = -std::conj(omega);
  // sin(sqrt(rho)(-w*)x) = -conj(sin(sqrt(rho) w x)), cos is even
  for (auto& c : m.segment_coeffs) c = {-std::conj(c.first), std::conj(c.second)};
  m.f_a = std::conj(f_a);
  return m;
}

cplx rod_qnm_frequency(const DielectricRod& rod, int j) {
  const double na = rod.n * rod.a;
  if (rod.n > rod.n0) return cplx((j + 0.5) * kPi, -std::atanh(rod.n0 / rod.n)) / na;
  return cplx(j * kPi, -std::atanh(rod.n / rod.n0)) / na;
}

double default_im_depth(const CavityProfile& p) {
  double sum = 0.0, lmin = 1e300;
  for (std::size_t i = 0; i < p.segments.size(); ++i) {
    double ni = std::sqrt(p.segments[i].rho);
    double nr = i + 1 < p.segments.size() ? std::sqrt(p.segments[i + 1].rho) : p.n0();
    sum += std::log(std::abs((ni + nr) / (ni - nr)));
    lmin = std::min(lmin, ni * (p.segment_end(i) - p.segments[i].x0));
  }
  double depth = (sum + std::log(1e4)) / (2.0 * lmin);
  return std::min(depth, 600.0 / (p.optical_length() + p.n0() * p.a));
}

int count_roots(const CavityProfile& p, double re_lo, double re_hi, double im_lo, double im_hi) {
  try {
    return contour_count(p, re_lo, re_hi, im_lo, im_hi);
  } catch (const ContourFailure&) {
    throw Error(ErrorCode::NoConvergence, "contour passes too close to a root");
  }
}

Spectrum::Spectrum(std::vector<QnmMode> reps, Labeling labeling) : reps_(std::move(reps)), labeling_(labeling) {}

int Spectrum::partner_index(int j) const { return labeling_ == Labeling::HalfInteger ? -j - 1 : -j; }

QnmMode Spectrum::mode(int j) const {
  if (j >= 0) {
    if (static_cast<std::size_t>(j) >= reps_.size()) throw Error(ErrorCode::InvalidInput, "mode index out of range");
    return reps_[j];
  }
  int r = partner_index(j);
  if (static_cast<std::size_t>(r) >= reps_.size()) throw Error(ErrorCode::InvalidInput, "mode index out of range");
  return reps_[r].partner(j);
}

std::vector<QnmMode> Spectrum::all_modes() const {
  std::vector<QnmMode> out;
  for (auto it = reps_.rbegin(); it != reps_.rend(); ++it)
    if (!it->is_imaginary()) out.push_back(it->partner(partner_index(it->j)));
  for (const auto& m : reps_) out.push_back(m);
  return out;
}

Spectrum Spectrum::truncated(std::size_t n) const {
  std::vector<QnmMode> r(reps_.begin(), reps_.begin() + std::min(n, reps_.size()));
  return Spectrum(std::move(r), labeling_);
}

QnmMode build_mode(const CavityProfile& p, cplx omega, int j, bool normalize) {
  QnmMode m;
  m.j = j;
  m.omega = omega;
  m.n0 = p.n0();
  FieldValue cur{0.0, 1.0};
  std::vector<FieldValue> left;
  for (std::size_t i = 0; i < p.segments.size(); ++i) {
    double c = std::sqrt(p.segments[i].rho);
    m.edges.push_back(p.segments[i].x0);
    m.sqrt_rho.push_back(c);
    left.push_back(cur);
    cur = propagate(cur, c, omega, p.segment_end(i) - p.segments[i].x0);
  }
  m.edges.push_back(p.a);
  cplx scale = 1.0;
  if (normalize) {
    auto e = reduced_wronskian(p, omega);
    // <f,f> = f(a) dW/domega for the unnormalized nodal solution
    scale = std::sqrt(2.0 * omega / (e.fa.u * e.dw));
    cplx r = scale / omega;
    if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) scale = -scale;
    m.norm_applied = true;
  }
  for (std::size_t i = 0; i < p.segments.size(); ++i) {
    cplx k = m.sqrt_rho[i] * omega;
    double x0 = m.edges[i];
    cplx u = left[i].u * scale, du = left[i].du * scale;
    cplx s = std::sin(k * x0), c = std::cos(k * x0);
    m.segment_coeffs.emplace_back(u * s + du / k * c, u * c - du / k * s);
  }
  m.f_a = m.value(p.a);
  return m;
}

cplx evaluate_mode(const QnmMode& m, double x) {
  if (!(x >= 0.0 && x <= m.a())) throw Error(ErrorCode::InvalidInput, "evaluate_mode: x outside [0,a]");
  return m.value(x);
}

Spectrum find_qnms(const CavityProfile& p, const SearchWindow& w, double tol) {
  require_valid(p);
  if (!(w.re_max > w.re_min) || w.re_min < 0.0) throw Error(ErrorCode::InvalidInput, "bad search window");
  const double L = p.optical_length();
  const double depth = w.im_depth > 0.0 ? w.im_depth : default_im_depth(p);
  const double include_axis = w.re_min == 0.0;
  Rect box{include_axis ? -0.3 * kPi / L : w.re_min, w.re_max, -depth, 0.5 / L};

  int total = -1;
  for (int attempt = 0; attempt < 8 && total < 0; ++attempt) {
    try {
      total = contour_count(p, box.r0, box.r1, box.i0, box.i1);
    } catch (const ContourFailure&) {
      box.r1 += 1e-7 * (box.r1 - box.r0) * (attempt + 1);
      box.i0 -= 1e-7 * depth * (attempt + 1);
      if (!include_axis) box.r0 -= 1e-7 * (box.r1 - box.r0) * (attempt + 1);
    }
  }
  if (total < 0) throw Error(ErrorCode::NoConvergence, "window contour could not be evaluated");

  RootSearch rs(p, tol);
  rs.solve(box, total, 0);
  auto roots = rs.roots_;
  if (static_cast<int>(roots.size()) != total)
    throw Error(ErrorCode::RootCountMismatch, "found " + std::to_string(roots.size()) + " roots, contour count " +
                                                  std::to_string(total));
  std::vector<cplx> pos, imag;
  for (cplx z : roots) {
    if (std::abs(z.real()) <= 1e-9 * std::abs(z)) {
      imag.push_back(snap_imaginary(p, z));
    } else if (z.real() > 0.0) {
      if (z.real() >= w.re_min) pos.push_back(z);
    }
  }
  std::sort(pos.begin(), pos.end(), [](cplx a, cplx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); });
  for (std::size_t i = 1; i < pos.size(); ++i)
    if (std::abs(pos[i] - pos[i - 1]) < 1e-9 * std::abs(pos[i]))
      throw Error(ErrorCode::RootCountMismatch, "Newton refinement merged two roots");
  if (imag.size() > 1) throw Error(ErrorCode::RootCountMismatch, "more than one purely imaginary mode");
  for (cplx z : pos)
    if (!(z.imag() < 0.0)) throw Error(ErrorCode::NoConvergence, "root with non-negative imaginary part");

  Labeling lab = imag.empty() ? Labeling::HalfInteger : Labeling::Integer;
  std::vector<QnmMode> reps;
  int j = 0;
  if (!imag.empty()) reps.push_back(build_mode(p, imag[0], j++));
  for (cplx z : pos) {
    if (w.max_count > 0 && static_cast<int>(reps.size()) >= w.max_count) break;
    reps.push_back(build_mode(p, z, j++));
  }
  return Spectrum(std::move(reps), lab);
}

Spectrum qnm_spectrum(const CavityProfile& p, std::size_t count, double tol) {
  const double spacing = kPi / p.optical_length();
  double re_max = (count + 0.7) * spacing;
  for (int attempt = 0; attempt < 12; ++attempt) {
    Spectrum s = find_qnms(p, SearchWindow{0.0, re_max, 0.0, 0}, tol);
    if (s.size() >= count) return s.truncated(count);
    re_max *= 1.5;
  }
  throw Error(ErrorCode::NoConvergence, "could not collect the requested number of modes");
}

std::shared_ptr<const FieldGrid> make_field_grid(const CavityProfile& p, double omega_scale, int min_panels) {
  auto rule = segment_rule(p, omega_scale, min_panels);
  auto g = std::make_shared<FieldGrid>();
  g->x.push_back(0.0);
  g->w.push_back(0.0);
  g->x.insert(g->x.end(), rule.x.begin(), rule.x.end());
  g->w.insert(g->w.end(), rule.w.begin(), rule.w.end());
  g->x.push_back(p.a);
  g->w.push_back(0.0);
  return g;
}

FieldPair mode_field_pair(const QnmMode& m, const CavityProfile& p, std::shared_ptr<const FieldGrid> grid) {
  FieldPair f{grid, {}, {}};
  f.phi.reserve(grid->x.size());
  f.phi_hat.reserve(grid->x.size());
  for (double x : grid->x) {
    cplx v = m.value(x);
    f.phi.push_back(v);
    f.phi_hat.push_back(-I * rho_at(p, x, Side::Inside) * m.omega * v);
  }
  return f;
}

cplx bilinear_product(const FieldPair& A, const FieldPair& B, const CavityProfile& p) {
  if (A.grid != B.grid && (A.grid->x != B.grid->x))
    throw Error(ErrorCode::GridMismatch, "bilinear_product: field pairs on different grids");
  const auto& w = A.grid->w;
  cplx s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * (A.phi[i] * B.phi_hat[i] + A.phi_hat[i] * B.phi[i]);
  s += p.n0() * A.phi.back() * B.phi.back();
  return I * s;
}

Projection project_coefficient(const QnmMode& m, const FieldPair& state, const CavityProfile& p) {
  Projection out;
  const auto& xs = state.grid->x;
  for (std::size_t i = 0; i < p.segments.size(); ++i) {
    double lo = p.segments[i].x0, hi = p.segment_end(i);
    double waves = std::sqrt(p.segments[i].rho) * std::abs(m.omega.real()) * (hi - lo) / (2.0 * kPi);
    auto cnt = std::count_if(xs.begin(), xs.end(), [&](double x) { return x >= lo && x <= hi; });
    if (static_cast<double>(cnt) < 10.0 * waves) out.under_resolved = true;
  }
  out.value = bilinear_product(mode_field_pair(m, p, state.grid), state, p) / (2.0 * m.omega);
  return out;
}

double check_orthogonality(const std::vector<QnmMode>& modes, const CavityProfile& p) {
  if (modes.size() < 2) return 0.0;
  double wmax = 0.0;
  for (const auto& m : modes) wmax = std::max(wmax, std::abs(m.omega));
  auto grid = make_field_grid(p, wmax, 8);
  std::vector<FieldPair> fp;
  for (const auto& m : modes) fp.push_back(mode_field_pair(m, p, grid));
  double worst = 0.0;
  for (std::size_t a = 0; a < modes.size(); ++a)
    for (std::size_t b = 0; b < modes.size(); ++b)
      if (a != b) worst = std::max(worst, std::abs(bilinear_product(fp[a], fp[b], p)) / std::abs(2.0 * modes[a].omega));
  return worst;
}

}  // namespace qnmcav
