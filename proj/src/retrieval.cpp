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

#include "regeval/retrieval.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "regeval/error.hpp"

namespace regeval {

namespace {

void require_gold(const LabelSet& gold) {
  if (gold.empty()) throw Error(ErrorCode::kEmptyGold, "gold set is empty");
}

}  // namespace

double acc_at_k(const LabelSet& gold, const Ranking& ranking, std::size_t k) {
  require_gold(gold);
  if (k == 0) throw Error(ErrorCode::kInvalidConfig, "k must be >= 1");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < std::min(k, ranking.size()); ++i) {
    hits += std::binary_search(gold.begin(), gold.end(), ranking[i]) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

MetricVector task1_metrics(const LabelSet& gold, const Ranking& ranking) {
  require_gold(gold);
  return kernels::score_ranking(gold, &ranking);
}

double r_precision(const LabelSet& gold, const Ranking& ranking) {
  return task1_metrics(gold, ranking)[2];
}

double mrr(const LabelSet& gold, const Ranking& ranking) {
  return task1_metrics(gold, ranking)[3];
}

double map_score(const LabelSet& gold, const Ranking& ranking) {
  return task1_metrics(gold, ranking)[4];
}

double ndcg_at_5(const LabelSet& gold, const Ranking& ranking) {
  return task1_metrics(gold, ranking)[5];
}

std::string_view policy_name(MatchPolicy policy) {
  return policy == MatchPolicy::kStrict ? "strict" : "relaxed";
}

MatchPolicy parse_policy(std::string_view name) {
  if (name == "strict") return MatchPolicy::kStrict;
  if (name == "relaxed") return MatchPolicy::kRelaxed;
  throw Error(ErrorCode::kInvalidConfig,
              "policy must be 'strict' or 'relaxed', got '" + std::string(name) + "'");
}

KeyAlignment match_keys(std::span<const Task1Key> gold,
                        std::span<const Task1Key> predicted, MatchPolicy policy) {
  KeyAlignment out;
  out.report.policy = policy;
  out.report.gold_keys = gold.size();
  out.prediction_for_gold.assign(gold.size(), std::nullopt);

  std::map<Task1Key, std::size_t> exact;
  std::map<std::pair<Granularity, std::string>, std::size_t> by_file;
  std::vector<bool> duplicate(predicted.size(), false);
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (!exact.emplace(predicted[i], i).second) {
      duplicate[i] = true;
      out.report.duplicate_keys.push_back(predicted[i].to_string());
    }
    by_file.emplace(std::make_pair(predicted[i].granularity, predicted[i].identity.file_path), i);
  }

  std::vector<bool> used(predicted.size(), false);
  for (std::size_t g = 0; g < gold.size(); ++g) {
    std::optional<std::size_t> hit;
    if (const auto it = exact.find(gold[g]); it != exact.end()) {
      hit = it->second;
    } else if (policy == MatchPolicy::kRelaxed) {
      const auto fb = by_file.find({gold[g].granularity, gold[g].identity.file_path});
      if (fb != by_file.end()) {
        hit = fb->second;
        ++out.report.fallback_matches;
      }
    }
    if (hit) {
      out.prediction_for_gold[g] = hit;
      used[*hit] = true;
      ++out.report.matched_keys;
    } else {
      out.report.unmatched.push_back(gold[g].to_string());
    }
  }
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (!used[i] && !duplicate[i]) out.report.orphans.push_back(predicted[i].to_string());
  }
  return out;
}

Task1Evaluation evaluate_task1(const std::vector<Task1Record>& records,
                               const Jurisdiction& law,
                               std::span<const RankedPrediction> predictions,
                               MatchPolicy policy, Execution execution) {
  Task1Evaluation eval;
  for (Granularity g : kAllGranularities) {
    const auto level = static_cast<std::size_t>(g);
    const std::vector<GoldKey> gold_keys = task1_gold_keys(records, g);

    std::vector<Task1Key> gold;
    gold.reserve(gold_keys.size());
    for (const auto& k : gold_keys) gold.push_back(k.key);
    std::vector<Task1Key> pred_keys;
    std::vector<const RankedPrediction*> preds;
    for (const auto& p : predictions) {
      if (p.key.granularity != g) continue;
      pred_keys.push_back(p.key);
      preds.push_back(&p);
    }

    KeyAlignment alignment = match_keys(gold, pred_keys, policy);

    std::vector<LabelSet> gold_sets(gold_keys.size());
    for (std::size_t i = 0; i < gold_keys.size(); ++i) {
      gold_sets[i] = law.to_label_set(*gold_keys[i].gold);
      if (gold_sets[i].empty()) {
        throw Error(ErrorCode::kEmptyGold,
                    "corpus integrity: empty gold set at " + gold_keys[i].key.to_string());
      }
    }
    // One converted ranking per used prediction.
    std::map<std::size_t, Ranking> rankings;
    for (const auto& hit : alignment.prediction_for_gold) {
      if (!hit || rankings.count(*hit)) continue;
      const auto& ids = preds[*hit]->ranking;
      std::size_t take = ids.size();
      if (take > law.size()) {
        take = law.size();
        ++eval.truncated_rankings;
      }
      Ranking r;
      std::set<LabelIndex> seen;
      for (std::size_t i = 0; i < take; ++i) {
        const auto index = law.index_of(ids[i]);
        if (!index) {
          ++eval.dropped_labels;
          continue;
        }
        if (seen.insert(*index).second) r.push_back(*index);
      }
      rankings.emplace(*hit, std::move(r));
    }

    std::vector<kernels::RankingJob> jobs(gold_keys.size());
    for (std::size_t i = 0; i < gold_keys.size(); ++i) {
      jobs[i].gold = &gold_sets[i];
      const auto& hit = alignment.prediction_for_gold[i];
      jobs[i].ranking = hit ? &rankings.at(*hit) : nullptr;
    }
    const auto rows = kernels::score_rankings(jobs, execution);
    eval.levels[level] = kernels::mean_rows(rows);
    eval.reports[level] = std::move(alignment.report);
  }
  return eval;
}

}  // namespace regeval
