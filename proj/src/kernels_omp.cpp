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

#include <omp.h>

#include <algorithm>
#include <cstdint>

#include "regeval/kernels.hpp"

namespace regeval::kernels::omp {

std::vector<MetricVector> score_rankings(std::span<const RankingJob> jobs) {
  std::vector<MetricVector> rows(jobs.size());
  const auto n = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    rows[i] = score_ranking(*jobs[i].gold, jobs[i].ranking);
  }
  return rows;
}

MultilabelTally tally_multilabel(std::span<const MultilabelJob> jobs,
                                 std::size_t universe_size,
                                 bool empty_empty_is_one) {
  const auto n = static_cast<std::int64_t>(jobs.size());
  std::vector<SampleScore> scores(jobs.size());
  MultilabelTally t;
  t.tp.assign(universe_size, 0);
  t.fp.assign(universe_size, 0);
  t.fn.assign(universe_size, 0);
  t.samples = jobs.size();

#pragma omp parallel
  {
    std::vector<std::uint64_t> tp(universe_size, 0), fp(universe_size, 0),
        fn(universe_size, 0);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      const LabelSet& gold = *jobs[i].gold;
      const Ranking& predicted = *jobs[i].predicted;
      scores[i] = score_sample(gold, predicted, universe_size, empty_empty_is_one);
      for (LabelIndex p : predicted) {
        if (std::binary_search(gold.begin(), gold.end(), p)) {
          ++tp[p];
        } else {
          ++fp[p];
        }
      }
      for (LabelIndex g : gold) {
        if (std::find(predicted.begin(), predicted.end(), g) == predicted.end()) ++fn[g];
      }
    }
    // integer counts, so merge order does not matter
#pragma omp critical(regeval_tally_merge)
    for (std::size_t l = 0; l < universe_size; ++l) {
      t.tp[l] += tp[l];
      t.fp[l] += fp[l];
      t.fn[l] += fn[l];
    }
  }

  for (const auto& s : scores) {
    t.jaccard_sum += s.jaccard;
    t.nce_sum += s.nce;
    t.mismatched_bits += s.mismatched;
  }
  return t;
}

}  // namespace regeval::kernels::omp
