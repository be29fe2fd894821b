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

// Task 1 ranking metrics, key matching and per-granularity evaluation.

#ifndef REGEVAL_RETRIEVAL_HPP_
#define REGEVAL_RETRIEVAL_HPP_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "regeval/kernels.hpp"
#include "regeval/labels.hpp"
#include "regeval/shaping.hpp"

namespace regeval {

// Gold sets are sorted LabelSets; rankings are duplicate-free. Every metric
// throws kEmptyGold on an empty gold set.
double acc_at_k(const LabelSet& gold, const Ranking& ranking, std::size_t k);
double r_precision(const LabelSet& gold, const Ranking& ranking);
double mrr(const LabelSet& gold, const Ranking& ranking);
double map_score(const LabelSet& gold, const Ranking& ranking);
double ndcg_at_5(const LabelSet& gold, const Ranking& ranking);

/// [Acc@1, Acc@5, R-Prec, MRR, MAP, nDCG@5] for one key.
MetricVector task1_metrics(const LabelSet& gold, const Ranking& ranking);

enum class MatchPolicy { kStrict, kRelaxed };

std::string_view policy_name(MatchPolicy policy);  // "strict", "relaxed"
MatchPolicy parse_policy(std::string_view name);

struct KeyMatchReport {
  MatchPolicy policy = MatchPolicy::kStrict;
  std::size_t gold_keys = 0;
  std::size_t matched_keys = 0;
  /// Matches that needed the file-path fallback (RELAXED only).
  std::size_t fallback_matches = 0;
  std::vector<std::string> unmatched;
  /// DuplicatePredictionKey incidents: later predictions for an already
  /// claimed key. The first prediction wins.
  std::vector<std::string> duplicate_keys;
  /// Predictions that no gold key used.
  std::vector<std::string> orphans;

  double coverage() const {
    return gold_keys == 0 ? 0.0
                          : static_cast<double>(matched_keys) / static_cast<double>(gold_keys);
  }
};

struct KeyAlignment {
  /// prediction index for each gold key, in gold order
  std::vector<std::optional<std::size_t>> prediction_for_gold;
  KeyMatchReport report;
};

/// STRICT needs every key component to agree. RELAXED falls back to the
/// first prediction (input order) at the same granularity whose file_path
/// equals the gold key's.
KeyAlignment match_keys(std::span<const Task1Key> gold,
                        std::span<const Task1Key> predicted, MatchPolicy policy);

struct RankedPrediction {
  Task1Key key;
  std::vector<std::string> ranking;  // canonical ids
};

struct Task1Evaluation {
  /// Indexed by Granularity.
  std::array<MetricVector, 3> levels{};
  std::array<KeyMatchReport, 3> reports{};
  std::size_t truncated_rankings = 0;
  std::size_t dropped_labels = 0;  // ids outside the universe
};

/// Unweighted mean over gold keys; unmatched keys contribute zero rows.
/// Predictions for other granularities are routed by their key.
Task1Evaluation evaluate_task1(const std::vector<Task1Record>& records,
                               const Jurisdiction& law,
                               std::span<const RankedPrediction> predictions,
                               MatchPolicy policy,
                               Execution execution = Execution::kParallel);

}  // namespace regeval

#endif  // REGEVAL_RETRIEVAL_HPP_
