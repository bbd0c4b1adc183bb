#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kframes {

enum class ErrorCode {
  InvalidPoint,
  DuplicatePoint,
  SingletonSequence,
  NonHermitian,
  NotPSD,
  DimensionMismatch,
  DegenerateKernel,
  WeightOutOfRange,
  NegativeWeight,
  TruncationTooCoarse,
  IndexOutOfRange,
  IllConditionedGram,
  SingularDiagonal,
  EmptySubset,
  UnknownLabel,
  TargetTooHigh,
  NotAPartition,
  InvalidArgument,
  ConfigInvalid,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// True for codes that describe malformed input rather than a numerical or
/// domain failure.
bool is_input_error(ErrorCode code) noexcept;

}  // namespace kframes
