#pragma once

#include <stdexcept>
#include <string>

namespace qnmcav {

enum class ErrorCode {
  InvalidInput,
  InfiniteDissipation,
  NearPole,
  PoleAt,
  RootCountMismatch,
  NoConvergence,
  TailTooLarge,
  GridMismatch,
  DegeneratePair,
  WindowOverlap,
  BracketFailure,
  QuadratureFailure,
  UnderResolved,
};

const char* to_string(ErrorCode code);

// Invalid-input codes map to CLI exit code 2, everything else to 1.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qnmcav
