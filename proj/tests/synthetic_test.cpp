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

#include "regeval/error.hpp"
#include "regeval/io.hpp"
#include "regeval/report.hpp"
#include "regeval/synthetic.hpp"
#include "test_util.hpp"

namespace regeval {
namespace {

using testing::registry;

TEST(Synthetic, DeterministicInSeed) {
  const auto spec = testing::small_spec(21);
  const auto a = io::dump(io::dataset_to_json(generate_corpus(spec, registry())));
  const auto b = io::dump(io::dataset_to_json(generate_corpus(spec, registry())));
  EXPECT_EQ(a, b);
  const auto c = io::dump(io::dataset_to_json(generate_corpus(testing::small_spec(22), registry())));
  EXPECT_NE(a, c);
}

TEST(Synthetic, VolumesAndValidity) {
  const auto spec = testing::small_spec(23, 7, 30);
  const auto corpus = generate_corpus(spec, registry());
  EXPECT_EQ(corpus.size(), 90u);
  for (const auto& inst : corpus) EXPECT_NO_THROW(validate_instance(inst, registry()));
  const CorpusStats stats = corpus_stats(corpus, registry());
  for (const auto& s : stats.per_law) {
    EXPECT_EQ(s.files, 7u);
    EXPECT_EQ(s.instances, 30u);
  }
}

TEST(Synthetic, LongTailLabels) {
  SyntheticSpec spec;
  spec.seed = 5;
  spec.laws = {{Law::kLGPD, 40, 400}};
  const auto stats = corpus_stats(generate_corpus(spec, registry()), registry());
  const auto& freq = stats.per_law[0].label_frequency;
  ASSERT_GE(freq.size(), 3u);
  EXPECT_GT(freq[0].count, 2 * freq[2].count);
  EXPECT_GT(freq[0].count, 10 * freq.back().count);
}

TEST(Synthetic, InvalidSpecs) {
  const auto expect_invalid = [](SyntheticSpec spec) {
    try {
      generate_corpus(spec, registry());
      ADD_FAILURE() << "accepted invalid spec";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidSpec);
    }
  };
  SyntheticSpec s = testing::small_spec(1);
  s.laws[0].instances = s.laws[0].files - 1;
  expect_invalid(s);
  s = testing::small_spec(1);
  s.label_decay = 0.0;
  expect_invalid(s);
  s = testing::small_spec(1);
  s.laws.clear();
  expect_invalid(s);
  s = testing::small_spec(1);
  s.duplicate_rate = 1.5;
  expect_invalid(s);
}

TEST(Profile, ParseAndName) {
  EXPECT_EQ(Profile::parse("random:7").seed, 7u);
  EXPECT_EQ(Profile::parse("breadth_only").kind, ProfileKind::kBreadthOnly);
  EXPECT_EQ(Profile::parse("random:7").name(), "random:7");
  EXPECT_THROW(Profile::parse("clever"), Error);
}

class ProfileScoring : public ::testing::Test {
 protected:
  GoldViews views = shape_all(generate_corpus(testing::small_spec(31, 12, 50), registry()),
                              registry());

  EvaluationResults score(const std::string& profile) {
    const auto p = scripted_model(Profile::parse(profile), views, registry());
    io::Task1Table t1;
    io::Task2Table t2;
    t1["m"] = p.task1;
    t2["m"] = p.task2;
    return evaluate_all(views, registry(), t1, t2, MatchPolicy::kStrict);
  }
};

TEST_F(ProfileScoring, PerfectTask2IsOnesExceptCoverage) {
  const auto r = score("perfect");
  for (const auto& [law, e] : r.task2.at("m")) {
    EXPECT_EQ(e.f1.micro, 1.0);
    EXPECT_EQ(e.f1.macro, 1.0);
    EXPECT_EQ(e.jaccard, 1.0);
    EXPECT_EQ(e.hamming, 0.0);
  }
  for (const auto& [law, t] : r.task1.at("m")) {
    for (const auto& level : t.scored.levels) {
      EXPECT_EQ(level[1], 1.0);  // Acc@5
      EXPECT_EQ(level[2], 1.0);  // R-Prec
      EXPECT_EQ(level[4], 1.0);  // MAP
      EXPECT_EQ(level[5], 1.0);  // nDCG@5
    }
  }
}

TEST_F(ProfileScoring, BreadthOnlyHasFullRecallButPoorHead) {
  const auto r = score("breadth_only");
  for (const auto& [law, t] : r.task1.at("m")) {
    for (const auto& level : t.scored.levels) {
      EXPECT_EQ(level[0], 0.0);
      EXPECT_EQ(level[1], 1.0);
      EXPECT_LE(level[3], 0.5);
    }
  }
}

TEST_F(ProfileScoring, MajorityLabelMacroBelowMicro) {
  const auto r = score("majority_label");
  for (const auto& [law, e] : r.task2.at("m")) EXPECT_LT(e.f1.macro, e.f1.micro);
}

TEST_F(ProfileScoring, RankingOnlyHasPerfectHeadOnSingletons) {
  const auto r = score("ranking_only");
  for (const auto& [law, t] : r.task1.at("m")) {
    EXPECT_EQ(t.scored.levels[0][3], 1.0);  // MRR: the single label is gold
  }
}

TEST_F(ProfileScoring, RandomIsSeeded) {
  const auto a = scripted_model(Profile::parse("random:3"), views, registry());
  const auto b = scripted_model(Profile::parse("random:3"), views, registry());
  const auto c = scripted_model(Profile::parse("random:4"), views, registry());
  EXPECT_EQ(io::dump(io::predictions_task2_to_json({{"m", a.task2}})),
            io::dump(io::predictions_task2_to_json({{"m", b.task2}})));
  EXPECT_NE(io::dump(io::predictions_task2_to_json({{"m", a.task2}})),
            io::dump(io::predictions_task2_to_json({{"m", c.task2}})));
}

TEST_F(ProfileScoring, TransportRejectsUnknownModel) {
  ProfileTransport t({{"p", Profile::parse("perfect")}}, views, registry());
  RunConfig c;
  c.models = {"q"};
  EXPECT_THROW(t.validate(c), Error);
}

}  // namespace
}  // namespace regeval
