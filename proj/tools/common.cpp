#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cli.hpp"
#include "qnmcav/errors.hpp"

namespace qnmcav::cli {

namespace {

std::vector<double> split_numbers(const std::string& s, char sep) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidInput, "not a number: '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw Error(ErrorCode::InvalidInput, "not a number: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

CavityProfile raw_rod(double n, double n0, double a) { return CavityProfile{{{0.0, n * n}}, a, n0 * n0}; }

}  // namespace

json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["profile"] = json::parse(profile_to_json(c.profile));
  j["series"] = {{"qnm_terms", c.series.qnm_terms},
                 {"matsubara_terms", c.series.matsubara_terms},
                 {"tolerance", c.series.tolerance},
                 {"tail_policy", c.series.tail_policy == TailPolicy::None ? "none" : "geometric"},
                 {"extrapolate", c.series.extrapolate}};
  j["format"] = c.format;
  j["params"] = c.params;
  return j;
}

DielectricRod parse_rod(const std::string& text) {
  std::string s = text.rfind("rod:", 0) == 0 ? text.substr(4) : text;
  auto v = split_numbers(s, ',');
  if (v.size() != 3) throw Error(ErrorCode::InvalidInput, "rod must be given as n,n0,a");
  return {v[0], v[1], v[2]};
}

CavityProfile load_profile(const std::string& source) {
  std::string text;
  std::ifstream f(source);
  if (f) {
    std::stringstream ss;
    ss << f.rdbuf();
    text = ss.str();
  } else if (source.find('{') != std::string::npos) {
    text = source;
  } else {
    auto r = parse_rod(source);
    return raw_rod(r.n, r.n0, r.a);
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("profile JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("profile")) j = j["profile"];
  if (j.is_object() && j.contains("rod")) {
    try {
      const auto& r = j.at("rod");
      return raw_rod(r.at("n").get<double>(), r.value("n0", 1.0), r.value("a", 1.0));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidInput, std::string("profile JSON: ") + e.what());
    }
  }
  return profile_from_json(j.dump());
}

double parse_beta(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return std::numeric_limits<double>::infinity();
  auto v = split_numbers(s, ',');
  if (v.size() != 1 || !(v[0] > 0)) throw Error(ErrorCode::InvalidInput, "beta must be positive or inf");
  return v[0];
}

std::vector<double> parse_range(const std::string& text) {
  auto v = split_numbers(text, ':');
  if (v.size() != 3 || v[2] < 1 || v[2] != std::floor(v[2]) || v[1] < v[0])
    throw Error(ErrorCode::InvalidInput, "range must be lo:hi:n with lo <= hi and integer n >= 1");
  const int n = static_cast<int>(v[2]);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? v[0] : v[0] + (v[1] - v[0]) * i / (n - 1);
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render(const Table& t, const RunConfig& c) {
  std::ostringstream os;
  if (c.format == "json") {
    json j;
    j["config"] = config_json(c);
    for (const auto& n : t.notes) {
      auto k = n.find(": ");
      j[n.substr(0, k)] = n.substr(k + 2);
    }
    j["columns"] = t.columns;
    j["rows"] = json::array();
    for (const auto& r : t.rows) j["rows"].push_back(r);
    os << j.dump(2) << '\n';
    return os.str();
  }
  os << "# config: " << config_json(c).dump() << '\n';
  for (const auto& n : t.notes) os << "# " << n << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
    os << '\n';
  }
  return os.str();
}

void emit(const std::string& text, const RunConfig& c, std::ostream& out) {
  if (c.out_path.empty() || c.out_path == "-") {
    out << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot open output file " + c.out_path);
  f << text;
}

}  // namespace qnmcav::cli
