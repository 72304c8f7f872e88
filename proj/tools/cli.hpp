#pragma once

#include <exception>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qnmcav/profile.hpp"
#include "qnmcav/series.hpp"

namespace qnmcav::cli {

using json = nlohmann::ordered_json;

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

struct RunConfig {
  std::string command;
  std::string profile_source = "5,1,1";
  CavityProfile profile;
  SeriesConfig series;
  int threads = 1;
  std::string out_path;
  std::string format = "csv";
  json params = json::object();
};

// Thread count is left out so that reports do not depend on it.
json config_json(const RunConfig& c);

// Accepts a JSON file path, inline JSON, or an inline rod "n,n0,a" (optionally "rod:n,n0,a").
// The result is not validated.
CavityProfile load_profile(const std::string& source);
DielectricRod parse_rod(const std::string& text);
double parse_beta(const std::string& s);
std::vector<double> parse_range(const std::string& text);  // lo:hi:n, inclusive
std::string format_double(double v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> notes;  // extra "# key: value" lines
};
std::string render(const Table& t, const RunConfig& c);
void emit(const std::string& text, const RunConfig& c, std::ostream& out);

// Result i is f(i); the work is split into contiguous blocks and merged in index order.
// The exception from the lowest failing index is rethrown.
template <class F>
auto parallel_map(std::size_t n, int threads, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads < 1 ? 1 : threads, n));
  auto block = [&](std::size_t w) {
    for (std::size_t i = w * n / workers; i < (w + 1) * n / workers; ++i) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    block(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(block, w);
    for (auto& t : pool) t.join();
  }
  std::vector<R> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

struct FigureSet {
  std::vector<double> betas;
  std::vector<double> x;
  std::vector<std::vector<double>> fig1;  // [beta][x]
  std::vector<double> t;
  std::vector<std::vector<double>> fig2;  // [beta][t]
};
FigureSet figure_data(const DielectricRod& rod, const std::vector<double>& betas, const SeriesConfig& cfg,
                      int threads);
// Sign changes of the derivative of v minus its least-squares line; values within
// 1e-9 of the largest magnitude count as zero.
int count_detrended_extrema(const std::vector<double>& t, const std::vector<double>& v);

struct VerifyOutcome {
  json report;
  int exit_code = 0;
};
VerifyOutcome verify(const CavityProfile& p, const std::string& suite, int jmax, int threads);

}  // namespace qnmcav::cli
