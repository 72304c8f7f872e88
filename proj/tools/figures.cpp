#include <algorithm>
#include <cmath>

#include "cli.hpp"
#include "qnmcav/thermal.hpp"

namespace qnmcav::cli {

FigureSet figure_data(const DielectricRod& rod, const std::vector<double>& betas, const SeriesConfig& cfg,
                      int threads) {
  auto p = make_dielectric_rod(rod.n, rod.n0, rod.a);
  auto s = qnm_spectrum(p, cfg.qnm_terms);
  FigureSet f;
  f.betas = betas;
  for (int i = 0; i <= 200; ++i) f.x.push_back(rod.a * i / 200.0);
  for (int i = 1; i <= 400; ++i) f.t.push_back(2.0 * i / 400.0);
  const std::size_t nx = f.x.size(), nt = f.t.size();
  auto values = parallel_map(betas.size() * (nx + nt), threads, [&](std::size_t k) {
    ThermalState th(betas[k / (nx + nt)]);
    std::size_t i = k % (nx + nt);
    if (i < nx) return subtracted_correlator(s, f.x[i], f.x[i], 0.1, th, cfg).value.real();
    return subtracted_correlator(s, 0.3 * rod.a, 0.3 * rod.a, f.t[i - nx], th, cfg).value.real();
  });
  for (std::size_t b = 0; b < betas.size(); ++b) {
    auto first = values.begin() + b * (nx + nt);
    f.fig1.emplace_back(first, first + nx);
    f.fig2.emplace_back(first + nx, first + nx + nt);
  }
  return f;
}

int count_detrended_extrema(const std::vector<double>& t, const std::vector<double>& v) {
  const std::size_t n = t.size();
  if (n < 4) return 0;
  double st = 0, sv = 0, stt = 0, stv = 0;
  for (std::size_t i = 0; i < n; ++i) {
    st += t[i];
    sv += v[i];
    stt += t[i] * t[i];
    stv += t[i] * v[i];
  }
  const double m = static_cast<double>(n);
  const double slope = (m * stv - st * sv) / (m * stt - st * st);
  std::vector<double> d(n - 1);
  double scale = std::abs(slope);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    d[i] = (v[i + 1] - v[i]) / (t[i + 1] - t[i]) - slope;
    scale = std::max(scale, std::abs(d[i]));
  }
  const double floor = 1e-9 * scale;
  int changes = 0, last = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    int sg = d[i] > floor ? 1 : (d[i] < -floor ? -1 : 0);
    if (sg != 0 && last != 0 && sg != last) ++changes;
    if (sg != 0) last = sg;
  }
  return changes;
}

}  // namespace qnmcav::cli
