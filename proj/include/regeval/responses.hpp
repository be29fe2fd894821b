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


// One logged model response, as produced by the harness and consumed by
// prediction parsing.

#ifndef REGEVAL_RESPONSES_HPP_
#define REGEVAL_RESPONSES_HPP_

#include <cstdint>
#include <string>

#include "regeval/corpus.hpp"
#include "regeval/shaping.hpp"

namespace regeval {

enum class ResponseStatus { kOk, kExhaustedRetries };

std::string_view status_name(ResponseStatus status);  // "ok", "exhausted_retries"
ResponseStatus parse_status(std::string_view name);

struct ResponseRecord {
  std::string model;
  int task = 1;  // 1 or 2
  Law law = Law::kLGPD;
  Task1Key key;          // task 1
  Task2Pointer pointer;  // task 2
  std::string text;
  ResponseStatus status = ResponseStatus::kOk;
  int attempts = 0;
  std::string last_error;
  // Milliseconds since the Unix epoch.
  std::int64_t requested_at_ms = 0;
  std::int64_t completed_at_ms = 0;
};

/// Canonical order: (model, task, law, key or pointer).
bool canonical_less(const ResponseRecord& a, const ResponseRecord& b);

}  // namespace regeval

#endif  // REGEVAL_RESPONSES_HPP_
