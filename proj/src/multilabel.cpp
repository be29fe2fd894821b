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

#include "regeval/multilabel.hpp"

#include <map>
#include <set>

#include "regeval/error.hpp"

namespace regeval {

namespace {

void require_samples(std::size_t gold, std::size_t predicted) {
  if (gold != predicted) {
    throw Error(ErrorCode::kLengthMismatch,
                std::to_string(gold) + " gold samples vs " + std::to_string(predicted) +
                    " predictions");
  }
  if (gold == 0) throw Error(ErrorCode::kLengthMismatch, "no samples");
}

kernels::MultilabelTally tally_sets(std::span<const LabelSet> gold,
                                    std::span<const LabelSet> predicted,
                                    std::size_t universe_size, bool empty_empty_is_one) {
  require_samples(gold.size(), predicted.size());
  std::vector<kernels::MultilabelJob> jobs(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    jobs[i] = {&gold[i], &predicted[i]};
  }
  return kernels::serial::tally_multilabel(jobs, universe_size, empty_empty_is_one);
}

F1Suite f1_from_tally(const kernels::MultilabelTally& t) {
  F1Suite f1;
  std::uint64_t tp = 0, fp = 0, fn = 0, support_total = 0;
  double macro_sum = 0.0, weighted_sum = 0.0;
  std::size_t supported = 0;
  for (std::size_t l = 0; l < t.tp.size(); ++l) {
    tp += t.tp[l];
    fp += t.fp[l];
    fn += t.fn[l];
    const std::uint64_t support = t.tp[l] + t.fn[l];
    if (support == 0) continue;
    const double f = 2.0 * static_cast<double>(t.tp[l]) /
                     static_cast<double>(2 * t.tp[l] + t.fp[l] + t.fn[l]);
    macro_sum += f;
    weighted_sum += static_cast<double>(support) * f;
    support_total += support;
    ++supported;
  }
  const std::uint64_t denom = 2 * tp + fp + fn;
  f1.micro = denom == 0 ? 1.0 : 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
  if (supported == 0) {
    f1.macro = f1.weighted = fp == 0 ? 1.0 : 0.0;
  } else {
    f1.macro = macro_sum / static_cast<double>(supported);
    f1.weighted = weighted_sum / static_cast<double>(support_total);
  }
  return f1;
}

}  // namespace

F1Suite f1_suite(std::span<const LabelSet> gold, std::span<const LabelSet> predicted,
                 std::size_t universe_size) {
  return f1_from_tally(tally_sets(gold, predicted, universe_size, true));
}

double jaccard_samples(std::span<const LabelSet> gold,
                       std::span<const LabelSet> predicted, bool empty_empty_is_one) {
  std::size_t universe = 0;
  for (const auto* side : {&gold, &predicted}) {
    for (const auto& s : *side) {
      if (!s.empty()) universe = std::max<std::size_t>(universe, s.back() + 1);
    }
  }
  const auto t = tally_sets(gold, predicted, universe, empty_empty_is_one);
  return t.jaccard_sum / static_cast<double>(t.samples);
}

double hamming_loss(std::span<const LabelSet> gold, std::span<const LabelSet> predicted,
                    std::size_t universe_size) {
  if (universe_size == 0) throw Error(ErrorCode::kUniverseTooSmall, "empty universe");
  const auto t = tally_sets(gold, predicted, universe_size, true);
  return static_cast<double>(t.mismatched_bits) /
         (static_cast<double>(t.samples) * static_cast<double>(universe_size));
}

double normalized_coverage_error(std::span<const LabelSet> gold,
                                 std::span<const Ranking> predicted_order,
                                 std::size_t universe_size) {
  if (universe_size < 2) {
    throw Error(ErrorCode::kUniverseTooSmall,
                "coverage error needs at least two labels, got " +
                    std::to_string(universe_size));
  }
  require_samples(gold.size(), predicted_order.size());
  std::vector<kernels::MultilabelJob> jobs(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) jobs[i] = {&gold[i], &predicted_order[i]};
  const auto t = kernels::serial::tally_multilabel(jobs, universe_size, true);
  return t.nce_sum / static_cast<double>(t.samples);
}

Task2Evaluation summarize_tally(const kernels::MultilabelTally& tally,
                                std::size_t universe_size) {
  Task2Evaluation e;
  e.f1 = f1_from_tally(tally);
  const double n = static_cast<double>(tally.samples);
  e.jaccard = tally.samples == 0 ? 0.0 : tally.jaccard_sum / n;
  e.nce = tally.samples == 0 ? 0.0 : tally.nce_sum / n;
  e.hamming = tally.samples == 0 ? 0.0
                                 : static_cast<double>(tally.mismatched_bits) /
                                       (n * static_cast<double>(universe_size));
  e.oriented = {e.f1.micro, e.f1.macro, e.f1.weighted, e.jaccard, 1.0 - e.nce,
                1.0 - e.hamming};
  return e;
}

Task2Evaluation evaluate_task2(const std::vector<Task2Record>& records,
                               const Jurisdiction& law,
                               std::span<const SetPrediction> predictions,
                               const Task2Options& options, Execution execution) {
  if (law.size() < 2) {
    throw Error(ErrorCode::kUniverseTooSmall,
                std::string(law_name(law.code())) + " universe has fewer than two labels");
  }
  PointerMatchReport report;
  report.gold_pointers = records.size();

  std::map<Task2Pointer, std::size_t> by_pointer;
  std::vector<bool> duplicate(predictions.size(), false);
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (!by_pointer.emplace(predictions[i].pointer, i).second) {
      duplicate[i] = true;
      report.duplicates.push_back(predictions[i].pointer.to_string());
    }
  }

  std::size_t dropped = 0;
  std::vector<LabelSet> gold(records.size());
  std::vector<Ranking> predicted(records.size());
  std::vector<bool> used(predictions.size(), false);
  for (std::size_t i = 0; i < records.size(); ++i) {
    gold[i] = law.to_label_set(records[i].gold);
    const auto it = by_pointer.find(records[i].pointer);
    if (it == by_pointer.end()) {
      report.unmatched.push_back(records[i].pointer.to_string());
      continue;
    }
    ++report.matched;
    used[it->second] = true;
    std::set<LabelIndex> seen;
    for (const auto& id : predictions[it->second].labels) {
      const auto index = law.index_of(id);
      if (!index) {
        ++dropped;
        continue;
      }
      if (seen.insert(*index).second) predicted[i].push_back(*index);
    }
  }
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (!used[i] && !duplicate[i]) report.orphans.push_back(predictions[i].pointer.to_string());
  }

  std::vector<kernels::MultilabelJob> jobs(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) jobs[i] = {&gold[i], &predicted[i]};
  const auto tally = kernels::tally_multilabel(jobs, law.size(),
                                               options.empty_empty_is_one, execution);
  Task2Evaluation e = summarize_tally(tally, law.size());
  e.report = std::move(report);
  e.dropped_labels = dropped;
  return e;
}

}  // namespace regeval
