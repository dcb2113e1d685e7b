#include "repronum/error.hpp"

namespace repronum {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingRegion: return "MissingRegion";
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kNonMonotonicDates: return "NonMonotonicDates";
    case ErrorCode::kTooShort: return "TooShort";
    case ErrorCode::kBadWindow: return "BadWindow";
    case ErrorCode::kInvalidMoment: return "InvalidMoment";
    case ErrorCode::kTruncationLoss: return "TruncationLoss";
    case ErrorCode::kInvalidLag: return "InvalidLag";
    case ErrorCode::kInvalidDistribution: return "InvalidDistribution";
    case ErrorCode::kBadStep: return "BadStep";
    case ErrorCode::kBadHorizon: return "BadHorizon";
    case ErrorCode::kFitDiverged: return "FitDiverged";
    case ErrorCode::kNoPeak: return "NoPeak";
    case ErrorCode::kDegenerate: return "Degenerate";
    case ErrorCode::kNoConverge: return "NoConverge";
    case ErrorCode::kNoSecondaryMass: return "NoSecondaryMass";
    case ErrorCode::kBadGrid: return "BadGrid";
    case ErrorCode::kNoAncestors: return "NoAncestors";
    case ErrorCode::kExploded: return "Exploded";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace repronum
