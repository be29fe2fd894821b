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
#include <omp.h>

#include <random>

#include "regeval/kernels.hpp"

namespace regeval {
namespace {

struct Corpus {
  std::vector<LabelSet> gold;
  std::vector<Ranking> predicted;
};

Corpus random_corpus(std::uint64_t seed, std::size_t n, std::size_t universe, bool allow_empty) {
  std::mt19937_64 rng(seed);
  Corpus c;
  for (std::size_t i = 0; i < n; ++i) {
    LabelSet g;
    Ranking p;
    for (LabelIndex l = 0; l < universe; ++l) {
      if (rng() % 4 == 0) g.push_back(l);
      if (rng() % 3 == 0) p.push_back(l);
    }
    if (g.empty() && !allow_empty) g.push_back(static_cast<LabelIndex>(rng() % universe));
    std::shuffle(p.begin(), p.end(), rng);
    c.gold.push_back(g);
    c.predicted.push_back(p);
  }
  return c;
}

class KernelsTest : public ::testing::Test {
 protected:
  void SetUp() override { omp_set_num_threads(4); }
};

TEST_F(KernelsTest, RankingKernelsAgreeBitwise) {
  const Corpus c = random_corpus(1, 5000, 24, false);
  std::vector<kernels::RankingJob> jobs(c.gold.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    jobs[i] = {&c.gold[i], i % 7 == 0 ? nullptr : &c.predicted[i]};
  }
  const auto serial = kernels::serial::score_rankings(jobs);
  const auto parallel = kernels::omp::score_rankings(jobs);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) EXPECT_EQ(serial[i], parallel[i]) << i;
  EXPECT_EQ(kernels::mean_rows(serial), kernels::mean_rows(parallel));
  for (double v : serial[0]) EXPECT_EQ(v, 0.0);
}

TEST_F(KernelsTest, TallyKernelsAgreeBitwise) {
  const Corpus c = random_corpus(2, 5000, 17, true);
  std::vector<kernels::MultilabelJob> jobs(c.gold.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i] = {&c.gold[i], &c.predicted[i]};
  for (bool flag : {true, false}) {
    const auto s = kernels::serial::tally_multilabel(jobs, 17, flag);
    const auto p = kernels::omp::tally_multilabel(jobs, 17, flag);
    EXPECT_EQ(s.tp, p.tp);
    EXPECT_EQ(s.fp, p.fp);
    EXPECT_EQ(s.fn, p.fn);
    EXPECT_EQ(s.mismatched_bits, p.mismatched_bits);
    EXPECT_EQ(s.jaccard_sum, p.jaccard_sum);
    EXPECT_EQ(s.nce_sum, p.nce_sum);
    EXPECT_EQ(s.samples, p.samples);
  }
}

TEST_F(KernelsTest, DispatchFollowsExecution) {
  const Corpus c = random_corpus(3, 100, 8, false);
  std::vector<kernels::RankingJob> jobs(c.gold.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i] = {&c.gold[i], &c.predicted[i]};
  EXPECT_EQ(kernels::score_rankings(jobs, Execution::kSerial),
            kernels::score_rankings(jobs, Execution::kParallel));
}

TEST_F(KernelsTest, EmptyInputs) {
  EXPECT_TRUE(kernels::serial::score_rankings({}).empty());
  EXPECT_TRUE(kernels::omp::score_rankings({}).empty());
  for (double v : kernels::mean_rows({})) EXPECT_EQ(v, 0.0);
  const auto t = kernels::omp::tally_multilabel({}, 5, true);
  EXPECT_EQ(t.samples, 0u);
  EXPECT_EQ(t.tp.size(), 5u);
}

TEST_F(KernelsTest, ScoreSampleEmptyEmpty) {
  EXPECT_EQ(kernels::score_sample({}, {}, 4, true).jaccard, 1.0);
  EXPECT_EQ(kernels::score_sample({}, {}, 4, false).jaccard, 0.0);
  EXPECT_EQ(kernels::score_sample({}, {}, 4, true).nce, 0.0);
}

}  // namespace
}  // namespace regeval
