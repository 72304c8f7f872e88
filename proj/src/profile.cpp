#include "qnmcav/profile.hpp"

#include <cmath>
#include <json.hpp>
#include <sstream>

#include "qnmcav/errors.hpp"

namespace qnmcav {

const char* to_string(Violation v) {
  switch (v) {
    case Violation::EmptyProfile: return "EmptyProfile";
    case Violation::NonPositiveLength: return "NonPositiveLength";
    case Violation::FirstEdgeNotZero: return "FirstEdgeNotZero";
    case Violation::EdgesNotIncreasing: return "EdgesNotIncreasing";
    case Violation::EdgeBeyondBoundary: return "EdgeBeyondBoundary";
    case Violation::NonPositiveDensity: return "NonPositiveDensity";
    case Violation::NonPositiveOutsideDensity: return "NonPositiveOutsideDensity";
    case Violation::NoStepAtBoundary: return "NoStepAtBoundary";
  }
  return "Unknown";
}

double CavityProfile::n0() const { return std::sqrt(rho_out); }

double CavityProfile::segment_end(std::size_t i) const {
  return i + 1 < segments.size() ? segments[i + 1].x0 : a;
}

double CavityProfile::optical_length() const {
  double L = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i)
    L += std::sqrt(segments[i].rho) * (segment_end(i) - segments[i].x0);
  return L;
}

std::size_t CavityProfile::segment_index(double x) const {
  std::size_t i = 0;
  while (i + 1 < segments.size() && x >= segments[i + 1].x0) ++i;
  return i;
}

CavityProfile make_profile(std::vector<Segment> segments, double a, double rho_out) {
  CavityProfile p{std::move(segments), a, rho_out};
  require_valid(p);
  return p;
}

CavityProfile make_dielectric_rod(double n, double n0, double a) {
  if (!(n > 0) || !(n0 > 0) || !(a > 0))
    throw Error(ErrorCode::InvalidInput, "rod parameters must be positive");
  if (n == n0) throw Error(ErrorCode::InfiniteDissipation, "n equals n0, no step at the boundary");
  return CavityProfile{{{0.0, n * n}}, a, n0 * n0};
}

std::optional<DielectricRod> as_rod(const CavityProfile& p) {
  if (p.segments.size() != 1) return std::nullopt;
  return DielectricRod{std::sqrt(p.segments[0].rho), p.n0(), p.a};
}

double rho_at(const CavityProfile& p, double x, Side side) {
  if (!(x >= 0.0)) throw Error(ErrorCode::InvalidInput, "rho_at: negative x");
  if (x > p.a || (x == p.a && side == Side::Outside)) return p.rho_out;
  return p.segments[p.segment_index(x)].rho;
}

std::vector<Violation> validate(const CavityProfile& p) {
  std::vector<Violation> out;
  auto add = [&](Violation v) {
    for (auto e : out)
      if (e == v) return;
    out.push_back(v);
  };
  if (p.segments.empty()) {
    add(Violation::EmptyProfile);
    return out;
  }
  if (!(p.a > 0)) add(Violation::NonPositiveLength);
  if (p.segments.front().x0 != 0.0) add(Violation::FirstEdgeNotZero);
  for (std::size_t i = 0; i + 1 < p.segments.size(); ++i)
    if (!(p.segments[i + 1].x0 > p.segments[i].x0)) add(Violation::EdgesNotIncreasing);
  if (!(p.segments.back().x0 < p.a)) add(Violation::EdgeBeyondBoundary);
  for (const auto& s : p.segments)
    if (!(s.rho > 0)) add(Violation::NonPositiveDensity);
  if (!(p.rho_out > 0)) add(Violation::NonPositiveOutsideDensity);
  if (p.segments.back().rho == p.rho_out) add(Violation::NoStepAtBoundary);
  return out;
}

void require_valid(const CavityProfile& p) {
  auto v = validate(p);
  if (v.empty()) return;
  std::string msg = "invalid profile:";
  for (auto e : v) msg += std::string(" ") + to_string(e);
  auto code = v.size() == 1 && v[0] == Violation::NoStepAtBoundary ? ErrorCode::InfiniteDissipation
                                                                    : ErrorCode::InvalidInput;
  throw Error(code, msg);
}

CavityProfile profile_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("profile JSON: ") + e.what());
  }
  try {
    if (j.contains("rod")) {
      const auto& r = j.at("rod");
      return make_dielectric_rod(r.at("n").get<double>(), r.value("n0", 1.0), r.value("a", 1.0));
    }
    CavityProfile p;
    for (const auto& s : j.at("segments")) p.segments.push_back({s.at("x0").get<double>(), s.at("rho").get<double>()});
    p.a = j.at("a").get<double>();
    p.rho_out = j.value("rho_out", 1.0);
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("profile JSON: ") + e.what());
  }
}

std::string profile_to_json(const CavityProfile& p) {
  nlohmann::ordered_json j;
  j["segments"] = nlohmann::ordered_json::array();
  for (const auto& s : p.segments) j["segments"].push_back({{"x0", s.x0}, {"rho", s.rho}});
  j["a"] = p.a;
  j["rho_out"] = p.rho_out;
  return j.dump();
}

}  // namespace qnmcav
