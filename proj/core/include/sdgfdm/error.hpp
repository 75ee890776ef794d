#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdgfdm {

enum class ErrorCode {
  RegionOverlap,
  DegenerateCurve,
  CurveEscapedDomain,
  InsufficientNeighbors,
  SingularStar,
  NotPositiveDefinite,
  UnmatchedInterfaceNode,
  MissingStencil,
  SingularSystem,
  NonPositiveError,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; the code says which contract failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

/// Process exit status for the CLI: 2 geometry/stencil, 3 solver, 4 IO.
int exit_code_for(ErrorCode code);

}  // namespace sdgfdm
