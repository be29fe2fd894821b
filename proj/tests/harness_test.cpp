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

#include <gtest/gtest.h>

#include <atomic>
#include <regex>
#include <thread>

#include "regeval/error.hpp"
#include "regeval/harness.hpp"
#include "regeval/io.hpp"
#include "test_util.hpp"

namespace regeval {
namespace {

using testing::registry;

class HarnessTest : public ::testing::Test {
 protected:
  std::vector<RawInstance> corpus = generate_corpus(testing::small_spec(11, 4, 8), registry());
  GoldViews views = shape_all(corpus, registry());

  RunConfig config(std::vector<std::string> models) {
    RunConfig c;
    c.models = std::move(models);
    c.backoff = std::chrono::milliseconds(0);
    return c;
  }

  std::size_t expected_requests() const {
    std::size_t n = 0;
    for (const auto& [law, r] : views.task1) {
      for (Granularity g : kAllGranularities) n += task1_gold_keys(r, g).size();
    }
    for (const auto& [law, r] : views.task2) n += r.size();
    return n;
  }
};

TEST_F(HarnessTest, PromptsAreDeterministicAndCarryEvidence) {
  const auto& records = views.task2.at(Law::kLGPD);
  const auto anchors = task2_anchors(records);
  const auto tmpl = PromptTemplate::defaults(registry().at(Law::kLGPD));
  const std::string p1 = render_task2_prompt(tmpl, anchors[0]);
  EXPECT_EQ(p1, render_task2_prompt(tmpl, anchors[0]));
  EXPECT_NE(p1.find(records[0].snippet), std::string::npos);
  EXPECT_NE(p1.find(records[0].pointer.file_path), std::string::npos);
}

TEST_F(HarnessTest, PromptsNeverLeakNotesOrGold) {
  for (Law law : kAllLaws) {
    const auto tmpl = PromptTemplate::defaults(registry().at(law));
    EXPECT_FALSE(std::regex_search(tmpl.scope + tmpl.output_constraint, std::regex("[0-9]")));
    for (const auto& a : task1_anchors(views.task1.at(law))) {
      const std::string p = render_task1_prompt(tmpl, a, 3);
      for (const auto& inst : corpus) {
        if (inst.law == law) EXPECT_EQ(p.find(inst.note), std::string::npos);
      }
    }
  }
}

TEST_F(HarnessTest, ContextExcerptsAreTruncated) {
  Task1Anchor a;
  a.law = Law::kLGPD;
  a.key.granularity = Granularity::kLine;
  a.key.identity.file_path = "app/A.kt";
  a.key.span = {1, 1};
  std::string long_text;
  for (int i = 0; i < 40; ++i) long_text += "line" + std::to_string(i) + "\n";
  a.context.push_back({Span{1, 1}, long_text});
  const std::string p =
      render_task1_prompt(PromptTemplate::defaults(registry().at(Law::kLGPD)), a, 2);
  EXPECT_NE(p.find("line4"), std::string::npos);
  EXPECT_EQ(p.find("line5\n"), std::string::npos);
}

TEST_F(HarnessTest, LawMismatchThrows) {
  const auto anchors = task2_anchors(views.task2.at(Law::kPDPA));
  try {
    render_task2_prompt(PromptTemplate::defaults(registry().at(Law::kLGPD)), anchors[0]);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLawMismatch);
  }
}

TEST_F(HarnessTest, EveryPairAttemptedOnce) {
  auto mock = ScriptedMockTransport::echo("Art. 7");
  const RunResult r = execute_run(config({"a", "b"}), views, registry(), *mock);
  EXPECT_EQ(r.records.size(), 2 * expected_requests());
  for (const auto& rec : r.records) {
    EXPECT_EQ(rec.attempts, 1);
    EXPECT_EQ(rec.status, ResponseStatus::kOk);
  }
  EXPECT_TRUE(std::is_sorted(r.records.begin(), r.records.end(), canonical_less));
  EXPECT_EQ(r.lanes.at("a").done, expected_requests());
}

TEST_F(HarnessTest, LanesAreSerialPerModel) {
  std::mutex mu;
  std::map<std::string, int> in_flight;
  bool overlapped = false;
  ScriptedMockTransport mock([&](const TransportRequest& req) {
    {
      std::lock_guard lock(mu);
      if (++in_flight[req.model] > 1) overlapped = true;
    }
    std::this_thread::sleep_for(std::chrono::microseconds(50));
    std::lock_guard lock(mu);
    --in_flight[req.model];
    return TransportReply::success("NONE");
  });
  RunConfig c = config({"a", "b", "c"});
  c.concurrency = 2;
  const RunResult r = execute_run(c, views, registry(), mock);
  EXPECT_FALSE(overlapped);
  EXPECT_LE(r.peak_in_flight, 2u);
}

TEST_F(HarnessTest, DecodingControlsReachTransport) {
  std::atomic<bool> ok{true};
  ScriptedMockTransport mock([&](const TransportRequest& req) {
    if (req.temperature != 0.0 || req.max_tokens != 2048 ||
        req.timeout != std::chrono::milliseconds(180'000)) {
      ok = false;
    }
    return TransportReply::success("NONE");
  });
  execute_run(config({"a"}), views, registry(), mock);
  EXPECT_TRUE(ok);
}

TEST_F(HarnessTest, RetriesThenExhaustion) {
  auto flaky = ScriptedMockTransport::flaky(3, [](const TransportRequest&) {
    return TransportReply::success("Art. 7");
  });
  RunResult r = execute_run(config({"a"}), views, registry(), *flaky);
  for (const auto& rec : r.records) EXPECT_EQ(rec.attempts, 4);

  auto dead = ScriptedMockTransport::always_failing();
  r = execute_run(config({"a"}), views, registry(), *dead);
  for (const auto& rec : r.records) {
    EXPECT_EQ(rec.status, ResponseStatus::kExhaustedRetries);
    EXPECT_EQ(rec.attempts, 4);
    EXPECT_TRUE(rec.text.empty());
    EXPECT_FALSE(rec.last_error.empty());
  }
  EXPECT_EQ(r.lanes.at("a").exhausted, r.records.size());
}

TEST_F(HarnessTest, ThrowingTransportCountsAsFailure) {
  ScriptedMockTransport mock([](const TransportRequest& req) -> TransportReply {
    if (req.attempt == 1) throw std::runtime_error("connection reset");
    return TransportReply::success("NONE");
  });
  const RunResult r = execute_run(config({"a"}), views, registry(), mock);
  for (const auto& rec : r.records) EXPECT_EQ(rec.attempts, 2);
}

TEST_F(HarnessTest, SlowRepliesTimeOut) {
  ScriptedMockTransport mock([](const TransportRequest&) {
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
    return TransportReply::success("Art. 7");
  });
  RunConfig c = config({"a"});
  c.timeout = std::chrono::milliseconds(1);
  c.retries = 0;
  c.tasks = {2};
  const RunResult r = execute_run(c, views, registry(), mock);
  for (const auto& rec : r.records) EXPECT_EQ(rec.status, ResponseStatus::kExhaustedRetries);
}

TEST_F(HarnessTest, ReplayReproducesRun) {
  auto mock = ScriptedMockTransport::echo("s. 13");
  const RunResult first = execute_run(config({"a"}), views, registry(), *mock);
  ReplayTransport replay(first.records);
  const RunResult second = execute_run(config({"a"}), views, registry(), replay);
  EXPECT_EQ(io::responses_to_jsonl(first.records, false),
            io::responses_to_jsonl(second.records, false));
}

TEST_F(HarnessTest, UnknownReplayModelFailsBeforeAnyCall) {
  ReplayTransport replay({});
  try {
    execute_run(config({"ghost"}), views, registry(), replay);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTransportConfigError);
  }
}

TEST(RunConfig, ValidationAndOverrides) {
  RunConfig c;
  EXPECT_THROW(c.validate(), Error);  // no models
  c.models = {"a"};
  EXPECT_NO_THROW(c.validate());
  EXPECT_TRUE(c.overrides().empty());
  c.retries = -1;
  EXPECT_THROW(c.validate(), Error);
  c.retries = 3;
  c.backoff = std::chrono::milliseconds(0);
  ASSERT_EQ(c.overrides().size(), 1u);
  c.models = {"a", "b", "c"};
  c.concurrency = 2;
  EXPECT_EQ(c.effective_concurrency(), 2u);
}

}  // namespace
}  // namespace regeval
