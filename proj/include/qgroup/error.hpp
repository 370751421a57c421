// Copyright 2026 The qgroup Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qgroup {

enum class ErrorCode {
  kDimensionMismatch,
  kInvalidGroup,
  kMissingIntrinsics,
  kUnderspecifiedSubset,
  kMissingRandom,
  kInvalidDescriptor,
  kInconsistentDescriptor,
  kUnliftableTerm,
  kNotPrime,
  kNotInCyclicSubgroup,
  kDegenerateBase,
  kTooLarge,
  kValueRegisterNotClean,
  kInconsistentSamples,
  kBudgetExceeded,
  kDegenerateKey,
  kNoChaffSpace,
  kInvalidParams,
  kMalformedFrame,
  kLengthMismatch,
  kDigitRange,
  kParse,
};

std::string_view error_code_name(ErrorCode code);

// All library failures are reported as Error. MalformedFrame errors carry the
// byte offset of the first violation.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::uint64_t> offset = std::nullopt)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        offset_(offset) {}

  ErrorCode code() const { return code_; }
  std::optional<std::uint64_t> offset() const { return offset_; }

 private:
  ErrorCode code_;
  std::optional<std::uint64_t> offset_;
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInvalidGroup: return "InvalidGroup";
    case ErrorCode::kMissingIntrinsics: return "MissingIntrinsics";
    case ErrorCode::kUnderspecifiedSubset: return "UnderspecifiedSubset";
    case ErrorCode::kMissingRandom: return "MissingRandom";
    case ErrorCode::kInvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::kInconsistentDescriptor: return "InconsistentDescriptor";
    case ErrorCode::kUnliftableTerm: return "UnliftableTerm";
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kNotInCyclicSubgroup: return "NotInCyclicSubgroup";
    case ErrorCode::kDegenerateBase: return "DegenerateBase";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kValueRegisterNotClean: return "ValueRegisterNotClean";
    case ErrorCode::kInconsistentSamples: return "InconsistentSamples";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kDegenerateKey: return "DegenerateKey";
    case ErrorCode::kNoChaffSpace: return "NoChaffSpace";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kMalformedFrame: return "MalformedFrame";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDigitRange: return "DigitRange";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

}  // namespace qgroup
