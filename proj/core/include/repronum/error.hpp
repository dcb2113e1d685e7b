#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace repronum {

// Machine-readable failure categories. The string form (to_string) is what
// reports carry in their warnings list.
enum class ErrorCode {
  kMissingRegion,
  kMalformedRow,
  kNonMonotonicDates,
  kTooShort,
  kBadWindow,
  kInvalidMoment,
  kTruncationLoss,
  kInvalidLag,
  kInvalidDistribution,
  kBadStep,
  kBadHorizon,
  kFitDiverged,
  kNoPeak,
  kDegenerate,
  kNoConverge,
  kNoSecondaryMass,
  kBadGrid,
  kNoAncestors,
  kExploded,
  kInvalidArgument,
  kIo,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace repronum
