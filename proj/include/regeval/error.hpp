// Copyright 2026 The regeval Authors.
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

#ifndef REGEVAL_ERROR_HPP_
#define REGEVAL_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace regeval {

/// Every failure surfaced by the library carries one of these codes. The CLI
/// prints the code name verbatim in its error record.
enum class ErrorCode {
  kUnrecognizedIdentifier,
  kOutOfUniverse,
  kInvalidPath,
  kInvalidSpan,
  kInvalidRecord,
  kMixedJurisdiction,
  kUnknownJurisdiction,
  kEmptyCorpus,
  kConflictingSnippet,
  kEmptyGold,
  kLengthMismatch,
  kUniverseTooSmall,
  kSingularCovariance,
  kInvalidConfig,
  kMissingLaw,
  kLawMismatch,
  kTransportConfigError,
  kInvalidSpec,
  kIoError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace regeval

#endif  // REGEVAL_ERROR_HPP_
