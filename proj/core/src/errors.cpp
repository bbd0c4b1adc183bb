#include "kframes/errors.hpp"

namespace kframes {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::SingletonSequence: return "SingletonSequence";
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateKernel: return "DegenerateKernel";
    case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::TruncationTooCoarse: return "TruncationTooCoarse";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::IllConditionedGram: return "IllConditionedGram";
    case ErrorCode::SingularDiagonal: return "SingularDiagonal";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::TargetTooHigh: return "TargetTooHigh";
    case ErrorCode::NotAPartition: return "NotAPartition";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

bool is_input_error(ErrorCode code) noexcept {
  return code == ErrorCode::ParseError || code == ErrorCode::ConfigInvalid || code == ErrorCode::InvalidPoint;
}

}  // namespace kframes
