// Copyright 2026 The srlz Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SRLZ_ERROR_HPP_
#define SRLZ_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace srlz {

enum class ErrorCode {
  kInvalidArgument,
  kLengthMismatch,
  kAlphabetMismatch,
  kMalformedHeader,
  kTruncated,
  kPointerOutOfRange,
  kMalformedPayload,
  kChecksumMismatch,
  kDictionaryMismatch,
  kModeMismatch,
  kBlockLength,
  kBudgetExceeded,
  kInfeasible,
  kPrecondition,
  kFormat,
  kIo,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kLengthMismatch: return "length-mismatch";
    case ErrorCode::kAlphabetMismatch: return "alphabet-mismatch";
    case ErrorCode::kMalformedHeader: return "malformed-header";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kPointerOutOfRange: return "pointer-out-of-range";
    case ErrorCode::kMalformedPayload: return "malformed-payload";
    case ErrorCode::kChecksumMismatch: return "checksum-mismatch";
    case ErrorCode::kDictionaryMismatch: return "dictionary-mismatch";
    case ErrorCode::kModeMismatch: return "mode-mismatch";
    case ErrorCode::kBlockLength: return "block-length";
    case ErrorCode::kBudgetExceeded: return "budget-exceeded";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kFormat: return "format";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

// All library failures are reported through this type. The code is stable
// and is what callers (and the CLI exit-code mapping) switch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace srlz

#endif  // SRLZ_ERROR_HPP_
