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


// Inference orchestration: prompt assembly, decoding controls, retries,
// one serial lane per model, and request logging. Provider adapters live
// outside this library; a scripted mock and a replay transport ship here.

#ifndef REGEVAL_HARNESS_HPP_
#define REGEVAL_HARNESS_HPP_

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

#include "regeval/corpus.hpp"
#include "regeval/responses.hpp"
#include "regeval/shaping.hpp"

namespace regeval {

struct RunConfig {
  double temperature = 0.0;
  int max_tokens = 2048;
  std::chrono::milliseconds timeout{180'000};
  int retries = 3;  // after the first attempt
  std::size_t concurrency = 0;  // 0: one lane per model
  std::vector<std::string> models;
  std::chrono::milliseconds backoff{2'000};
  std::size_t context_lines = 3;
  std::chrono::milliseconds monitor_interval{1'000};
  std::vector<int> tasks = {1, 2};

  std::size_t effective_concurrency() const {
    return concurrency == 0 ? models.size() : std::min(concurrency, models.size());
  }
  /// Throws kInvalidConfig.
  void validate() const;
  /// Human-readable "field=value" pairs that differ from the defaults.
  std::vector<std::string> overrides() const;
};

struct PromptTemplate {
  Law law = Law::kLGPD;
  std::string scope;
  std::vector<std::string> cues;  // consent, notice, collection, ...
  std::vector<std::string> exceptions;
  std::string output_constraint;

  /// Built-in template for a law. Contains no article numbers.
  static PromptTemplate defaults(const Jurisdiction& law);
};

/// What a Task 1 prompt may see: the anchor and code excerpts, never gold.
struct Task1Anchor {
  Law law = Law::kLGPD;
  Task1Key key;
  std::vector<Excerpt> context;
};

struct Task2Anchor {
  Law law = Law::kLGPD;
  Task2Pointer pointer;
  std::string repo_url;
  std::string app_name;
  std::string snippet;
};

/// Strips the gold labels from every key of a Task 1 view.
std::vector<Task1Anchor> task1_anchors(const std::vector<Task1Record>& records);
std::vector<Task2Anchor> task2_anchors(const std::vector<Task2Record>& records);

/// Throws kLawMismatch when the anchor belongs to another law.
std::string render_task1_prompt(const PromptTemplate& tmpl, const Task1Anchor& anchor,
                                std::size_t context_lines);
std::string render_task2_prompt(const PromptTemplate& tmpl, const Task2Anchor& anchor);

struct TransportRequest {
  std::string model;
  int task = 1;
  Law law = Law::kLGPD;
  std::string key;  // Task1Key or Task2Pointer string
  std::string prompt;
  double temperature = 0.0;
  int max_tokens = 0;
  std::chrono::milliseconds timeout{0};
  std::chrono::steady_clock::time_point deadline;
  int attempt = 1;  // 1-based
};

struct TransportReply {
  bool ok = false;
  std::string text;
  std::string error;

  static TransportReply success(std::string text) { return {true, std::move(text), {}}; }
  static TransportReply failure(std::string error) { return {false, {}, std::move(error)}; }
};

/// send() may be called from several lanes at once.
class Transport {
 public:
  virtual ~Transport() = default;
  /// Throws kTransportConfigError; called once before any request.
  virtual void validate(const RunConfig& config) const;
  virtual TransportReply send(const TransportRequest& request) = 0;
};

class ScriptedMockTransport : public Transport {
 public:
  using Script = std::function<TransportReply(const TransportRequest&)>;
  explicit ScriptedMockTransport(Script script) : script_(std::move(script)) {}

  /// Same text for every request.
  static std::unique_ptr<ScriptedMockTransport> echo(std::string text);
  /// Fails the first `failures` attempts of every request, then replies.
  static std::unique_ptr<ScriptedMockTransport> flaky(int failures, Script then);
  static std::unique_ptr<ScriptedMockTransport> always_failing();

  TransportReply send(const TransportRequest& request) override { return script_(request); }

 private:
  Script script_;
};

/// Re-serves logged responses. Requests missing from the log fail.
class ReplayTransport : public Transport {
 public:
  explicit ReplayTransport(const std::vector<ResponseRecord>& records);
  void validate(const RunConfig& config) const override;
  TransportReply send(const TransportRequest& request) override;

 private:
  std::map<std::string, ResponseRecord> by_request_;
  std::vector<std::string> models_;
};

struct LaneStats {
  std::size_t total = 0;
  std::size_t done = 0;
  std::size_t failed_attempts = 0;
  std::size_t exhausted = 0;
};

struct RunResult {
  std::vector<ResponseRecord> records;  // canonical order
  std::map<std::string, LaneStats> lanes;
  std::string log;
  std::size_t peak_in_flight = 0;
};

struct RunOptions {
  std::map<Law, PromptTemplate> templates;  // missing laws use defaults
  std::ostream* log_sink = nullptr;         // mirrored progress log
};

/// Every (model, instance) pair is attempted. Exhausted requests are
/// recorded with empty text. Throws kTransportConfigError before any call.
RunResult execute_run(const RunConfig& config, const GoldViews& views,
                      const JurisdictionRegistry& registry, Transport& transport,
                      const RunOptions& options = {});

}  // namespace regeval

#endif  // REGEVAL_HARNESS_HPP_
