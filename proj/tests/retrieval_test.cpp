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

#include <cmath>

#include "oracles.hpp"
#include "regeval/error.hpp"
#include "regeval/retrieval.hpp"
#include "test_util.hpp"

namespace regeval {
namespace {

using testing::instance;
using testing::registry;

// Label letters: a=0, b=1, c=2, ...
constexpr LabelIndex a = 0, b = 1, c = 2, d = 3, e = 4, f = 5, x = 6, y = 7, z = 8;

TEST(AccAtK, Examples) {
  EXPECT_DOUBLE_EQ(acc_at_k({a, b}, {a, x, y, z, b}, 5), 1.0);
  EXPECT_DOUBLE_EQ(acc_at_k({a, b}, {a, c, d}, 1), 0.5);
  EXPECT_DOUBLE_EQ(acc_at_k({a}, {}, 1), 0.0);
  EXPECT_THROW(acc_at_k({}, {a}, 1), Error);
}

TEST(RPrecision, Examples) {
  EXPECT_DOUBLE_EQ(r_precision({a, b}, {a, c, b}), 0.5);
  EXPECT_DOUBLE_EQ(r_precision({a}, {a}), 1.0);
  EXPECT_DOUBLE_EQ(r_precision({a, b, c}, {x}), 0.0);
}

TEST(Mrr, Examples) {
  EXPECT_DOUBLE_EQ(mrr({a}, {b, a, c}), 0.5);
  EXPECT_DOUBLE_EQ(mrr({a}, {a}), 1.0);
  EXPECT_DOUBLE_EQ(mrr({a}, {b, c}), 0.0);
}

TEST(MapScore, Examples) {
  EXPECT_NEAR(map_score({a, b}, {a, c, b}), 5.0 / 6.0, 1e-12);
  EXPECT_DOUBLE_EQ(map_score({a}, {a}), 1.0);
  EXPECT_DOUBLE_EQ(map_score({a, b}, {a}), 0.5);
}

TEST(Ndcg, Examples) {
  EXPECT_NEAR(ndcg_at_5({a, b}, {a, c, b}), 1.5 / (1.0 + 1.0 / std::log2(3.0)), 1e-12);
  EXPECT_NEAR(ndcg_at_5({a, b}, {a, c, b}), 0.9197, 1e-4);
  EXPECT_DOUBLE_EQ(ndcg_at_5({a}, {a, b, c}), 1.0);
  EXPECT_DOUBLE_EQ(ndcg_at_5({a}, {b, c, d, e, f}), 0.0);
}

TEST(Task1Metrics, MatchesOracleOnSmallUniverse) {
  for (unsigned mask = 1; mask < 16; ++mask) {
    std::set<int> g;
    LabelSet gold;
    for (int i = 0; i < 4; ++i) {
      if ((mask >> i) & 1u) {
        g.insert(i);
        gold.push_back(static_cast<LabelIndex>(i));
      }
    }
    for (const auto& p : oracle::partial_permutations(4, 4)) {
      const auto want = oracle::score(g, p);
      const auto got = task1_metrics(gold, Ranking(p.begin(), p.end()));
      EXPECT_NEAR(got[0], want.acc1, 1e-12);
      EXPECT_NEAR(got[1], want.acc5, 1e-12);
      EXPECT_NEAR(got[2], want.rprec, 1e-12);
      EXPECT_NEAR(got[3], want.mrr, 1e-12);
      EXPECT_NEAR(got[4], want.map, 1e-12);
      EXPECT_NEAR(got[5], want.ndcg5, 1e-12);
    }
  }
}

Task1Key line_key(const std::string& file, Span span) {
  Task1Key k;
  k.identity = {"https://example.org/demo.git", "Demo", "abc123", file};
  k.granularity = Granularity::kLine;
  k.span = span;
  return k;
}

TEST(MatchKeys, StrictRelaxedAndMiss) {
  const std::vector<Task1Key> gold = {line_key("app/A.kt", {10, 12})};
  {
    const auto al = match_keys(gold, std::vector<Task1Key>{line_key("app/A.kt", {10, 12})},
                               MatchPolicy::kStrict);
    EXPECT_EQ(al.report.matched_keys, 1u);
  }
  {
    const std::vector<Task1Key> shifted = {line_key("app/A.kt", {11, 13})};
    EXPECT_EQ(match_keys(gold, shifted, MatchPolicy::kStrict).report.matched_keys, 0u);
    const auto relaxed = match_keys(gold, shifted, MatchPolicy::kRelaxed);
    EXPECT_EQ(relaxed.report.matched_keys, 1u);
    EXPECT_EQ(relaxed.report.fallback_matches, 1u);
  }
  {
    const std::vector<Task1Key> other = {line_key("app/B.kt", {10, 12})};
    EXPECT_EQ(match_keys(gold, other, MatchPolicy::kStrict).report.matched_keys, 0u);
    const auto relaxed = match_keys(gold, other, MatchPolicy::kRelaxed);
    EXPECT_EQ(relaxed.report.matched_keys, 0u);
    EXPECT_EQ(relaxed.report.orphans.size(), 1u);
  }
}

TEST(MatchKeys, DuplicatePredictionFirstWins) {
  const std::vector<Task1Key> gold = {line_key("app/A.kt", {1, 1})};
  const std::vector<Task1Key> pred = {line_key("app/A.kt", {1, 1}), line_key("app/A.kt", {1, 1})};
  const auto al = match_keys(gold, pred, MatchPolicy::kStrict);
  EXPECT_EQ(al.prediction_for_gold[0], 0u);
  EXPECT_EQ(al.report.duplicate_keys.size(), 1u);
}

class EvaluateTask1 : public ::testing::Test {
 protected:
  std::vector<Task1Record> records =
      shape_task1({instance(Law::kLGPD, "app/A.kt", {1, 2}, {"7"}),
                   instance(Law::kLGPD, "app/B.kt", {3, 4}, {"46"})},
                  registry());
  const Jurisdiction& lgpd = registry().at(Law::kLGPD);

  RankedPrediction pred(const GoldKey& k, std::vector<std::string> ids) {
    return {k.key, std::move(ids)};
  }
};

TEST_F(EvaluateTask1, MeanOverKeys) {
  const auto keys = task1_gold_keys(records, Granularity::kFile);
  const std::vector<RankedPrediction> preds = {pred(keys[0], {"7"}), pred(keys[1], {"7"})};
  const auto ev = evaluate_task1(records, lgpd, preds, MatchPolicy::kStrict);
  for (double v : ev.levels[0]) EXPECT_DOUBLE_EQ(v, 0.5);
}

TEST_F(EvaluateTask1, AllUnmatchedIsZero) {
  const auto ev = evaluate_task1(records, lgpd, {}, MatchPolicy::kStrict);
  for (const auto& level : ev.levels) {
    for (double v : level) EXPECT_EQ(v, 0.0);
  }
  EXPECT_EQ(ev.reports[0].matched_keys, 0u);
}

TEST_F(EvaluateTask1, PerfectIsAllOnes) {
  std::vector<RankedPrediction> preds;
  for (Granularity g : kAllGranularities) {
    for (const auto& k : task1_gold_keys(records, g)) preds.push_back(pred(k, *k.gold));
  }
  const auto ev = evaluate_task1(records, lgpd, preds, MatchPolicy::kStrict, Execution::kSerial);
  for (const auto& level : ev.levels) {
    for (double v : level) EXPECT_DOUBLE_EQ(v, 1.0);
  }
}

TEST_F(EvaluateTask1, OutOfUniverseAndTruncation) {
  const auto keys = task1_gold_keys(records, Granularity::kFile);
  std::vector<std::string> longer(lgpd.universe().begin(), lgpd.universe().end());
  longer.insert(longer.begin(), "9999");
  const std::vector<RankedPrediction> preds = {pred(keys[0], longer)};
  const auto ev = evaluate_task1(records, lgpd, preds, MatchPolicy::kStrict);
  EXPECT_EQ(ev.truncated_rankings, 1u);
  EXPECT_EQ(ev.dropped_labels, 1u);
}

TEST(Policy, NamesRoundTrip) {
  EXPECT_EQ(parse_policy(policy_name(MatchPolicy::kRelaxed)), MatchPolicy::kRelaxed);
  EXPECT_THROW(parse_policy("loose"), Error);
}

}  // namespace
}  // namespace regeval
