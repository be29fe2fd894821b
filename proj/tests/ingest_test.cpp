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

#include <random>

#include "regeval/harness.hpp"
#include "regeval/ingest.hpp"
#include "test_util.hpp"

namespace regeval {
namespace {

using testing::instance;
using testing::registry;

using Ids = std::vector<std::string>;

Ids parse(std::string_view text, Law law, ParseMode mode = ParseMode::kRanked) {
  return parse_prediction_text(text, registry().at(law), mode).ids;
}

TEST(Parse, DedupPreservesFirstOccurrence) {
  const auto p = parse_prediction_text("Violations: Art. 7, Art. 12, and also Art. 7",
                                       registry().at(Law::kLGPD), ParseMode::kRanked);
  EXPECT_EQ(p.ids, (Ids{"7", "12"}));
  EXPECT_EQ(p.diagnostics.duplicates, 1u);
}

TEST(Parse, ProseAfterCitation) {
  EXPECT_EQ(parse("s. 24 because safeguards were missing", Law::kPDPA, ParseMode::kSet), (Ids{"24"}));
}

TEST(Parse, NoIdentifiersIsEmptyWithDiagnostic) {
  const auto p = parse_prediction_text("no violations found", registry().at(Law::kLGPD),
                                       ParseMode::kSet);
  EXPECT_TRUE(p.ids.empty());
  EXPECT_TRUE(p.diagnostics.empty);
}

TEST(Parse, ListContinuation) {
  EXPECT_EQ(parse("Articles 7, 8 and 46 apply", Law::kLGPD), (Ids{"7", "8", "46"}));
  EXPECT_EQ(parse("ss. 13, 20 e 24", Law::kPDPA), (Ids{"13", "20", "24"}));
}

TEST(Parse, BareListsAtLineStart) {
  EXPECT_EQ(parse("7, 46", Law::kLGPD), (Ids{"7", "46"}));
  EXPECT_EQ(parse("Answer: [13, 24]", Law::kPDPA), (Ids{"13", "24"}));
}

TEST(Parse, ProseNumbersIgnored) {
  EXPECT_EQ(parse("Art. 7 applies; the app has 3 screens and 12 users", Law::kLGPD), (Ids{"7"}));
  EXPECT_TRUE(parse("The report cites 2 issues.", Law::kLGPD).empty());
}

TEST(Parse, EnumeratorsSkipped) {
  EXPECT_EQ(parse("1. Art. 46\n2. Art. 7", Law::kLGPD), (Ids{"46", "7"}));
}

TEST(Parse, PipedaBareDottedIds) {
  EXPECT_EQ(parse("Principles 4.3 and 4.7 are relevant; also 4.10.", Law::kPIPEDA),
            (Ids{"4.3", "4.7", "4.10"}));
  EXPECT_EQ(parse("see clause 4.3.2", Law::kPIPEDA), (Ids{"4.3"}));
}

TEST(Parse, SubdivisionsCollapse) {
  EXPECT_EQ(parse("s. 13(1)(b), s. 26(1)", Law::kPDPA), (Ids{"13", "26"}));
  EXPECT_EQ(parse("Art. 7, I e Art. 11, § 2", Law::kLGPD).front(), "7");
}

TEST(Parse, OutOfUniverseReported) {
  const auto p = parse_prediction_text("Art. 7 and Art. 99", registry().at(Law::kLGPD),
                                       ParseMode::kSet);
  EXPECT_EQ(p.ids, (Ids{"7"}));
  ASSERT_EQ(p.diagnostics.out_of_universe.size(), 1u);
  EXPECT_EQ(p.diagnostics.out_of_universe[0], "99");
}

TEST(Parse, SetViewIsUniverseOrder) {
  const auto p = parse_prediction_text("Art. 46, Art. 7", registry().at(Law::kLGPD),
                                       ParseMode::kSet);
  EXPECT_EQ(p.ids, (Ids{"46", "7"}));
  EXPECT_EQ(p.as_set(registry().at(Law::kLGPD)), (Ids{"7", "46"}));
}

TEST(Parse, RenderedOutputRoundTrips) {
  std::mt19937_64 rng(5);
  for (Law law : kAllLaws) {
    const auto& j = registry().at(law);
    for (int trial = 0; trial < 200; ++trial) {
      Ids ids = j.universe();
      std::shuffle(ids.begin(), ids.end(), rng);
      ids.resize(1 + rng() % std::min<std::size_t>(6, ids.size()));
      const std::string text = render_prediction(ids, j);
      EXPECT_EQ(parse(text, law), ids) << text;
      EXPECT_EQ(render_prediction(parse(text, law), j), text);
    }
  }
}

TEST(Parse, NeverThrowsOnJunk) {
  std::mt19937_64 rng(6);
  const std::string alphabet = "Art.s§ 0123456789,;:()[]\n\"'-/&abc";
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    for (std::size_t i = 0; i < rng() % 60; ++i) text += alphabet[rng() % alphabet.size()];
    for (Law law : kAllLaws) {
      EXPECT_NO_THROW(parse_prediction_text(text, registry().at(law), ParseMode::kSet));
    }
  }
}

class Binding : public ::testing::Test {
 protected:
  GoldViews views = shape_all({instance(Law::kPDPA, "app/A.kt", {1, 2}, {"13"}),
                               instance(Law::kPDPA, "app/B.kt", {3, 4}, {"24"})},
                              registry());

  ResponseRecord task2(const Task2Pointer& p, std::string text) {
    ResponseRecord r;
    r.model = "m";
    r.task = 2;
    r.law = Law::kPDPA;
    r.pointer = p;
    r.text = std::move(text);
    r.attempts = 1;
    return r;
  }
};

TEST_F(Binding, BoundAndOrphan) {
  const auto& gold = views.task2.at(Law::kPDPA);
  const std::vector<ResponseRecord> responses = {
      task2(gold[0].pointer, "s. 13"),
      task2(Task2Pointer{"app/Z.kt", {1, 1}, "abc123"}, "s. 24")};
  const auto bound = bind_predictions(responses, views, registry());
  const auto& stats = bound.stats.at({"m", Law::kPDPA, 2});
  EXPECT_EQ(stats.bound, 1u);
  EXPECT_EQ(stats.orphans.size(), 1u);
  EXPECT_DOUBLE_EQ(stats.coverage(), 0.5);
  ASSERT_EQ(bound.task2.at("m").at(Law::kPDPA).size(), 1u);
  EXPECT_EQ(bound.task2.at("m").at(Law::kPDPA)[0].labels, (Ids{"13"}));
}

TEST_F(Binding, ExhaustedBindsEmpty) {
  auto r = task2(views.task2.at(Law::kPDPA)[0].pointer, "");
  r.status = ResponseStatus::kExhaustedRetries;
  r.attempts = 4;
  const auto bound = bind_predictions({r}, views, registry());
  const auto& stats = bound.stats.at({"m", Law::kPDPA, 2});
  EXPECT_EQ(stats.exhausted, 1u);
  EXPECT_TRUE(bound.task2.at("m").at(Law::kPDPA)[0].labels.empty());
}

TEST_F(Binding, Task1OrphansKeptForRelaxedMatching) {
  const auto keys = task1_gold_keys(views.task1.at(Law::kPDPA), Granularity::kLine);
  ResponseRecord r;
  r.model = "m";
  r.task = 1;
  r.law = Law::kPDPA;
  r.key = keys[0].key;
  r.key.span = {50, 60};
  r.text = "s. 13";
  r.attempts = 1;
  const auto bound = bind_predictions({r}, views, registry());
  EXPECT_EQ(bound.stats.at({"m", Law::kPDPA, 1}).orphans.size(), 1u);
  EXPECT_EQ(bound.task1.at("m").at(Law::kPDPA).size(), 1u);
}

TEST(BindingStats, CoverageRatio) {
  BindingStats s;
  s.gold = 10;
  s.bound = 7;
  EXPECT_DOUBLE_EQ(s.coverage(), 0.7);
}

}  // namespace
}  // namespace regeval
