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


// Seeded synthetic corpora and scripted model behaviours, so the whole
// pipeline runs without the curated dataset or any live provider.

#ifndef REGEVAL_SYNTHETIC_HPP_
#define REGEVAL_SYNTHETIC_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "regeval/corpus.hpp"
#include "regeval/harness.hpp"
#include "regeval/multilabel.hpp"
#include "regeval/retrieval.hpp"
#include "regeval/shaping.hpp"

namespace regeval {

struct LawVolume {
  Law law = Law::kLGPD;
  std::size_t files = 0;
  std::size_t instances = 0;  // >= files; every file gets at least one
};

struct SyntheticSpec {
  std::uint64_t seed = 1;
  std::vector<LawVolume> laws;
  std::size_t repositories = 4;
  /// Geometric long tail: label i (in a seeded order) has weight decay^i.
  double label_decay = 0.6;
  std::size_t max_labels_per_instance = 2;
  std::size_t max_labels_per_file = 4;
  double overlap_rate = 0.1;    // instance shares labels with a shifted earlier span
  double duplicate_rate = 0.05;  // instance repeats an earlier pointer

  /// Throws kInvalidSpec.
  void validate(const JurisdictionRegistry& registry) const;
};

/// Deterministic in (spec, registry). Every instance passes validate_instance.
std::vector<RawInstance> generate_corpus(const SyntheticSpec& spec,
                                         const JurisdictionRegistry& registry);

enum class ProfileKind { kPerfect, kBreadthOnly, kRankingOnly, kMajorityLabel, kRandom };

struct Profile {
  ProfileKind kind = ProfileKind::kPerfect;
  std::uint64_t seed = 0;  // kRandom only

  /// "perfect", "breadth_only", "ranking_only", "majority_label", "random",
  /// "random:<seed>". Throws kInvalidConfig.
  static Profile parse(std::string_view text);
  std::string name() const;
};

struct ScriptedPredictions {
  std::map<Law, std::vector<RankedPrediction>> task1;
  std::map<Law, std::vector<SetPrediction>> task2;
};

/// Oracle adversary: reads the gold views and answers for every key.
///   PERFECT         gold, most frequent first
///   BREADTH_ONLY    one non-gold distractor, then the gold
///   RANKING_ONLY    the single most frequent gold label
///   MAJORITY_LABEL  the law's most frequent label everywhere
///   RANDOM          uniform draws, seeded per key
ScriptedPredictions scripted_model(const Profile& profile, const GoldViews& gold,
                                   const JurisdictionRegistry& registry);

/// Answers harness requests with a profile's output rendered as citation
/// text. Models absent from the map fail validation.
class ProfileTransport : public Transport {
 public:
  ProfileTransport(std::map<std::string, Profile> models, const GoldViews& gold,
                   const JurisdictionRegistry& registry);
  void validate(const RunConfig& config) const override;
  TransportReply send(const TransportRequest& request) override;

 private:
  std::map<std::string, std::map<std::string, std::string>> answers_;  // model -> request -> text
};

}  // namespace regeval

#endif  // REGEVAL_SYNTHETIC_HPP_
