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

// Task 2 multi-label metrics against a jurisdiction's label universe.

#ifndef REGEVAL_MULTILABEL_HPP_
#define REGEVAL_MULTILABEL_HPP_

#include <span>
#include <string>
#include <vector>

#include "regeval/kernels.hpp"
#include "regeval/labels.hpp"
#include "regeval/shaping.hpp"

namespace regeval {

struct F1Suite {
  double micro = 0.0;
  double macro = 0.0;
  double weighted = 0.0;
};

/// Macro and weighted averages run over labels that occur in at least one
/// gold set. With no such label they are 1 when nothing was predicted and 0
/// otherwise; micro is 1 when gold and predictions are all empty.
/// Throws kLengthMismatch.
F1Suite f1_suite(std::span<const LabelSet> gold, std::span<const LabelSet> predicted,
                 std::size_t universe_size);

double jaccard_samples(std::span<const LabelSet> gold,
                       std::span<const LabelSet> predicted,
                       bool empty_empty_is_one = true);

/// Lower is better.
double hamming_loss(std::span<const LabelSet> gold, std::span<const LabelSet> predicted,
                    std::size_t universe_size);

/// Normalized coverage error over the prediction-first label ranking.
/// Samples with empty gold contribute 0. Lower is better.
/// Throws kUniverseTooSmall when universe_size < 2.
double normalized_coverage_error(std::span<const LabelSet> gold,
                                 std::span<const Ranking> predicted_order,
                                 std::size_t universe_size);

struct SetPrediction {
  Task2Pointer pointer;
  std::vector<std::string> labels;  // canonical ids, output order
};

struct PointerMatchReport {
  std::size_t gold_pointers = 0;
  std::size_t matched = 0;
  std::vector<std::string> unmatched;
  std::vector<std::string> duplicates;
  std::vector<std::string> orphans;

  double coverage() const {
    return gold_pointers == 0
               ? 0.0
               : static_cast<double>(matched) / static_cast<double>(gold_pointers);
  }
};

struct Task2Options {
  bool empty_empty_is_one = true;
};

struct Task2Evaluation {
  /// [micro_f1, macro_f1, weighted_f1, jaccard, 1-NCE, 1-hamming]
  MetricVector oriented{};
  F1Suite f1;
  double jaccard = 0.0;
  double hamming = 0.0;
  double nce = 0.0;
  PointerMatchReport report;
  std::size_t dropped_labels = 0;
};

/// Strict pointer matching; unmatched gold pointers score as empty
/// predictions. Throws kUniverseTooSmall.
Task2Evaluation evaluate_task2(const std::vector<Task2Record>& records,
                               const Jurisdiction& law,
                               std::span<const SetPrediction> predictions,
                               const Task2Options& options = {},
                               Execution execution = Execution::kParallel);

/// Oriented vector straight from a tally; shared by evaluate_task2 and tests.
Task2Evaluation summarize_tally(const kernels::MultilabelTally& tally,
                                std::size_t universe_size);

}  // namespace regeval

#endif  // REGEVAL_MULTILABEL_HPP_
