#include "sdgfdm/error.hpp"

namespace sdgfdm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::RegionOverlap: return "RegionOverlap";
    case ErrorCode::DegenerateCurve: return "DegenerateCurve";
    case ErrorCode::CurveEscapedDomain: return "CurveEscapedDomain";
    case ErrorCode::InsufficientNeighbors: return "InsufficientNeighbors";
    case ErrorCode::SingularStar: return "SingularStar";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::UnmatchedInterfaceNode: return "UnmatchedInterfaceNode";
    case ErrorCode::MissingStencil: return "MissingStencil";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NonPositiveError: return "NonPositiveError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularSystem:
      return 3;
    case ErrorCode::Io:
      return 4;
    default:
      return 2;
  }
}

}  // namespace sdgfdm
