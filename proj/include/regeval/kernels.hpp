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

// Data-parallel scoring kernels. Each kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::omp; both produce
// bit-identical results because per-item values are written to their own
// slots and all floating-point sums run serially in item order.

#ifndef REGEVAL_KERNELS_HPP_
#define REGEVAL_KERNELS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "regeval/labels.hpp"

namespace regeval {

enum class Execution { kSerial, kParallel };

namespace kernels {

/// One Task 1 key. A null ranking means the key went unmatched.
struct RankingJob {
  const LabelSet* gold = nullptr;
  const Ranking* ranking = nullptr;
};

/// One Task 2 sample. `predicted` lists the predicted labels in output order.
struct MultilabelJob {
  const LabelSet* gold = nullptr;
  const Ranking* predicted = nullptr;
};

struct MultilabelTally {
  std::vector<std::uint64_t> tp;
  std::vector<std::uint64_t> fp;
  std::vector<std::uint64_t> fn;
  std::uint64_t mismatched_bits = 0;
  double jaccard_sum = 0.0;
  double nce_sum = 0.0;  // zero when the universe has fewer than two labels
  std::size_t samples = 0;
};

/// Six Task 1 metrics for one key; all zeros when `ranking` is null.
MetricVector score_ranking(const LabelSet& gold, const Ranking* ranking);

/// Column means, summed in row order. Zeros for an empty input.
MetricVector mean_rows(std::span<const MetricVector> rows);

namespace serial {
std::vector<MetricVector> score_rankings(std::span<const RankingJob> jobs);
MultilabelTally tally_multilabel(std::span<const MultilabelJob> jobs,
                                 std::size_t universe_size,
                                 bool empty_empty_is_one);
}  // namespace serial

namespace omp {
std::vector<MetricVector> score_rankings(std::span<const RankingJob> jobs);
MultilabelTally tally_multilabel(std::span<const MultilabelJob> jobs,
                                 std::size_t universe_size,
                                 bool empty_empty_is_one);
}  // namespace omp

std::vector<MetricVector> score_rankings(std::span<const RankingJob> jobs,
                                         Execution execution);
MultilabelTally tally_multilabel(std::span<const MultilabelJob> jobs,
                                 std::size_t universe_size,
                                 bool empty_empty_is_one, Execution execution);

/// Per-sample pieces shared by both kernel versions.
struct SampleScore {
  double jaccard = 0.0;
  double nce = 0.0;
  std::uint64_t mismatched = 0;
};
SampleScore score_sample(const LabelSet& gold, const Ranking& predicted,
                         std::size_t universe_size, bool empty_empty_is_one);

}  // namespace kernels
}  // namespace regeval

#endif  // REGEVAL_KERNELS_HPP_
