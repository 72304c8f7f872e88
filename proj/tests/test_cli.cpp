#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "qnmcav/errors.hpp"

using namespace qnmcav;

namespace {

int run(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "qnmcav");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream o, e;
  int rc = cli::run(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  return rc;
}

}  // namespace

TEST_CASE("cli exit codes") {
  CHECK(run({"spectrum", "--jmax", "1"}) == 0);
  CHECK(run({"--profile", "1,1,1", "spectrum"}) == 2);
  CHECK(run({"--profile", "5,1", "spectrum"}) == 2);
  CHECK(run({"--profile", "{\"segments\": 3}", "spectrum"}) == 2);
  CHECK(run({"dos", "--omega-range", "2:1:5"}) == 2);
  CHECK(run({"correlate", "--beta", "-1", "--omega", "1"}) == 2);
  CHECK(run({"correlate", "--form", "realtime", "--omega", "1"}) == 2);
  CHECK(run({"greens", "--t", "1"}) == 2);
  CHECK(run({"nonsense"}) == 2);
  CHECK(run({"--format", "xml", "spectrum"}) == 2);
  std::string out;
  CHECK(run({"--profile", "1,1,1", "verify", "--all"}, &out) == 2);
  CHECK(out.find("NoStepAtBoundary") != std::string::npos);
  CHECK(run({"verify", "--commutators", "--jmax", "1"}, &out) == 0);
}

TEST_CASE("cli output format") {
  std::string a, b;
  REQUIRE(run({"correlate", "--form", "closed", "--beta", "inf", "--x", "0.3", "--y", "0.6", "--omega-range", "0.5:2:7",
               "--threads", "1"},
              &a) == 0);
  REQUIRE(run({"correlate", "--form", "closed", "--beta", "inf", "--x", "0.3", "--y", "0.6", "--omega-range", "0.5:2:7",
               "--threads", "3"},
              &b) == 0);
  CHECK(a == b);
  CHECK(a.rfind("# config: {", 0) == 0);
  CHECK(a.find("beta,x,y,omega,re,im,tail_estimate\n") != std::string::npos);
  CHECK(a.find("0.29999999999999999") != std::string::npos);
  std::string j;
  REQUIRE(run({"dos", "--x", "0.4", "--omega", "0.3,0.6", "--format", "json"}, &j) == 0);
  auto parsed = cli::json::parse(j);
  CHECK(parsed["rows"].size() == 2);
  CHECK(parsed["columns"][2] == "dos");
}

TEST_CASE("parallel map keeps index order and rethrows the first failure") {
  auto v = cli::parallel_map(37, 5, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
  try {
    cli::parallel_map(20, 4, [](std::size_t i) -> int {
      if (i == 7 || i == 15) throw Error(ErrorCode::NoConvergence, std::to_string(i));
      return 0;
    });
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find(": 7") != std::string::npos);
  }
}

TEST_CASE("detrended extrema counter") {
  std::vector<double> t, line, wave;
  for (int i = 1; i <= 400; ++i) {
    double x = 2.0 * i / 400;
    t.push_back(x);
    line.push_back(3.0 - 0.5 * x);
    wave.push_back(1.0 - 0.3 * x + 0.1 * std::sin(8.0 * x));
  }
  CHECK(cli::count_detrended_extrema(t, line) == 0);
  CHECK(cli::count_detrended_extrema(t, wave) >= 4);
}
