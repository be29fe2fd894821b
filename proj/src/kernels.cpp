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

// Per-item scoring and the serial reference kernels.

#include <algorithm>
#include <cmath>

#include "regeval/kernels.hpp"

namespace regeval::kernels {

namespace {

bool contains(const LabelSet& set, LabelIndex label) {
  return std::binary_search(set.begin(), set.end(), label);
}

}  // namespace

MetricVector score_ranking(const LabelSet& gold, const Ranking* ranking) {
  MetricVector m{};
  if (ranking == nullptr || gold.empty()) return m;
  const double g = static_cast<double>(gold.size());
  const std::size_t r = gold.size();
  std::size_t hits = 0;
  std::size_t hits_at_1 = 0, hits_at_5 = 0, hits_at_r = 0;
  double first_hit_rr = 0.0;
  double ap_sum = 0.0;
  double dcg = 0.0;
  for (std::size_t i = 0; i < ranking->size(); ++i) {
    if (!contains(gold, (*ranking)[i])) continue;
    ++hits;
    const std::size_t pos = i + 1;
    if (pos <= 1) ++hits_at_1;
    if (pos <= 5) {
      ++hits_at_5;
      dcg += 1.0 / std::log2(static_cast<double>(pos) + 1.0);
    }
    if (pos <= r) ++hits_at_r;
    if (first_hit_rr == 0.0) first_hit_rr = 1.0 / static_cast<double>(pos);
    ap_sum += static_cast<double>(hits) / static_cast<double>(pos);
  }
  double idcg = 0.0;
  for (std::size_t i = 1; i <= std::min<std::size_t>(r, 5); ++i) {
    idcg += 1.0 / std::log2(static_cast<double>(i) + 1.0);
  }
  m[0] = static_cast<double>(hits_at_1) / g;
  m[1] = static_cast<double>(hits_at_5) / g;
  m[2] = static_cast<double>(hits_at_r) / static_cast<double>(r);
  m[3] = first_hit_rr;
  m[4] = ap_sum / g;
  m[5] = dcg / idcg;
  return m;
}

MetricVector mean_rows(std::span<const MetricVector> rows) {
  MetricVector mean{};
  if (rows.empty()) return mean;
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < kMetricCount; ++k) mean[k] += row[k];
  }
  for (auto& v : mean) v /= static_cast<double>(rows.size());
  return mean;
}

SampleScore score_sample(const LabelSet& gold, const Ranking& predicted,
                         std::size_t universe_size, bool empty_empty_is_one) {
  SampleScore s;
  LabelSet pred(predicted.begin(), predicted.end());
  std::sort(pred.begin(), pred.end());
  std::size_t inter = 0;
  {
    auto a = gold.begin();
    auto b = pred.begin();
    while (a != gold.end() && b != pred.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        ++inter;
        ++a;
        ++b;
      }
    }
  }
  const std::size_t uni = gold.size() + pred.size() - inter;
  s.jaccard = uni == 0 ? (empty_empty_is_one ? 1.0 : 0.0)
                       : static_cast<double>(inter) / static_cast<double>(uni);
  s.mismatched = uni - inter;

  if (universe_size >= 2 && !gold.empty()) {
    // Prediction-first ranking: predicted labels in output order, then the
    // rest of the universe in universe order.
    std::size_t max_rank = 0;
    for (LabelIndex t : gold) {
      std::size_t rank = 0;
      const auto it = std::find(predicted.begin(), predicted.end(), t);
      if (it != predicted.end()) {
        rank = static_cast<std::size_t>(it - predicted.begin()) + 1;
      } else {
        const auto below = static_cast<std::size_t>(
            std::lower_bound(pred.begin(), pred.end(), t) - pred.begin());
        rank = predicted.size() + 1 + (t - below);
      }
      max_rank = std::max(max_rank, rank);
    }
    s.nce = static_cast<double>(max_rank - 1) / static_cast<double>(universe_size - 1);
  }
  return s;
}

namespace {

void count_labels(const LabelSet& gold, const Ranking& predicted, MultilabelTally& t) {
  for (LabelIndex p : predicted) {
    if (contains(gold, p)) {
      ++t.tp[p];
    } else {
      ++t.fp[p];
    }
  }
  for (LabelIndex g : gold) {
    if (std::find(predicted.begin(), predicted.end(), g) == predicted.end()) ++t.fn[g];
  }
}

}  // namespace

namespace serial {

std::vector<MetricVector> score_rankings(std::span<const RankingJob> jobs) {
  std::vector<MetricVector> rows(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    rows[i] = score_ranking(*jobs[i].gold, jobs[i].ranking);
  }
  return rows;
}

MultilabelTally tally_multilabel(std::span<const MultilabelJob> jobs,
                                 std::size_t universe_size,
                                 bool empty_empty_is_one) {
  MultilabelTally t;
  t.tp.assign(universe_size, 0);
  t.fp.assign(universe_size, 0);
  t.fn.assign(universe_size, 0);
  t.samples = jobs.size();
  for (const auto& job : jobs) {
    const SampleScore s =
        score_sample(*job.gold, *job.predicted, universe_size, empty_empty_is_one);
    t.jaccard_sum += s.jaccard;
    t.nce_sum += s.nce;
    t.mismatched_bits += s.mismatched;
    count_labels(*job.gold, *job.predicted, t);
  }
  return t;
}

}  // namespace serial

std::vector<MetricVector> score_rankings(std::span<const RankingJob> jobs,
                                         Execution execution) {
  return execution == Execution::kParallel ? omp::score_rankings(jobs)
                                           : serial::score_rankings(jobs);
}

MultilabelTally tally_multilabel(std::span<const MultilabelJob> jobs,
                                 std::size_t universe_size,
                                 bool empty_empty_is_one, Execution execution) {
  return execution == Execution::kParallel
             ? omp::tally_multilabel(jobs, universe_size, empty_empty_is_one)
             : serial::tally_multilabel(jobs, universe_size, empty_empty_is_one);
}

}  // namespace regeval::kernels
