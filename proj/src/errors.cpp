#include "qnmcav/errors.hpp"

namespace qnmcav {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InfiniteDissipation: return "InfiniteDissipation";
    case ErrorCode::NearPole: return "NearPole";
    case ErrorCode::PoleAt: return "PoleAt";
    case ErrorCode::RootCountMismatch: return "RootCountMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::TailTooLarge: return "TailTooLarge";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::WindowOverlap: return "WindowOverlap";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::UnderResolved: return "UnderResolved";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  return code == ErrorCode::InvalidInput || code == ErrorCode::InfiniteDissipation ||
         code == ErrorCode::GridMismatch;
}

}  // namespace qnmcav
