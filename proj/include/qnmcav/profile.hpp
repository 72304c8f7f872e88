#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qnmcav {

struct Segment {
  double x0;   // left edge
  double rho;  // density on [x0, next edge)
};

enum class Side { Inside, Outside };

enum class Violation {
  EmptyProfile,
  NonPositiveLength,
  FirstEdgeNotZero,
  EdgesNotIncreasing,
  EdgeBeyondBoundary,
  NonPositiveDensity,
  NonPositiveOutsideDensity,
  NoStepAtBoundary,
};

const char* to_string(Violation v);

struct CavityProfile {
  std::vector<Segment> segments;
  double a = 1.0;
  double rho_out = 1.0;

  double n0() const;
  double segment_end(std::size_t i) const;
  double optical_length() const;
  // Index of the segment containing x; interior edges resolve to the right segment.
  std::size_t segment_index(double x) const;
};

struct DielectricRod {
  double n;
  double n0;
  double a;
};

CavityProfile make_dielectric_rod(double n, double n0, double a);
CavityProfile make_profile(std::vector<Segment> segments, double a, double rho_out);

// Returns the rod parameters when the profile is a single uniform segment.
std::optional<DielectricRod> as_rod(const CavityProfile& p);

double rho_at(const CavityProfile& p, double x, Side side = Side::Outside);

std::vector<Violation> validate(const CavityProfile& p);

// Throws InvalidInput listing every violation.
void require_valid(const CavityProfile& p);

// Accepts {"segments":[{"x0":..,"rho":..}],"a":..,"rho_out":..} or {"rod":{"n":..,"n0":..,"a":..}}.
CavityProfile profile_from_json(const std::string& text);
std::string profile_to_json(const CavityProfile& p);

}  // namespace qnmcav
