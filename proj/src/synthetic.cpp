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


#include "regeval/synthetic.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "regeval/error.hpp"
#include "regeval/ingest.hpp"
#include "text_util.hpp"

namespace regeval {

namespace {

// mt19937_64 output is fixed by the standard; the distributions are not, so
// draws go through these helpers instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

std::string hex_digest(Rng& rng, std::size_t length) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(length, '0');
  for (auto& c : out) c = kHex[rng.below(16)];
  return out;
}

// Weighted draw of `count` distinct indices from `pool`.
std::vector<std::size_t> draw_distinct(Rng& rng, const std::vector<std::size_t>& pool,
                                       const std::vector<double>& weight, std::size_t count) {
  std::vector<std::size_t> left = pool;
  std::vector<std::size_t> out;
  while (out.size() < count && !left.empty()) {
    double total = 0.0;
    for (auto i : left) total += weight[i];
    double u = rng.unit() * total;
    std::size_t pick = left.size() - 1;
    for (std::size_t j = 0; j < left.size(); ++j) {
      u -= weight[left[j]];
      if (u < 0) {
        pick = j;
        break;
      }
    }
    out.push_back(left[pick]);
    left.erase(left.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

std::string placeholder_snippet(const std::string& path, const Span& span) {
  const std::string stem = derive_module_name(path);
  std::string out;
  for (std::uint32_t line = span.start; line <= span.end; ++line) {
    if (!out.empty()) out += "\n";
    out += "// synthetic placeholder, line " + std::to_string(line) + " of " + stem;
  }
  return out;
}

}  // namespace

void SyntheticSpec::validate(const JurisdictionRegistry& registry) const {
  const auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidSpec, what); };
  if (laws.empty()) fail("no laws requested");
  std::set<Law> seen;
  for (const auto& v : laws) {
    const std::string name(law_name(v.law));
    if (!seen.insert(v.law).second) fail(name + " requested twice");
    if (v.files == 0 || v.instances == 0) fail(name + ": counts must be >= 1");
    if (v.instances < v.files) fail(name + ": fewer instances than files");
    if (registry.at(v.law).size() < 2) fail(name + ": universe needs at least two labels");
  }
  if (repositories == 0) fail("repositories must be >= 1");
  if (!(label_decay > 0.0 && label_decay <= 1.0)) fail("label_decay must be in (0, 1]");
  if (max_labels_per_instance == 0) fail("max_labels_per_instance must be >= 1");
  if (max_labels_per_file < max_labels_per_instance) {
    fail("max_labels_per_file must be >= max_labels_per_instance");
  }
  if (!(overlap_rate >= 0.0 && overlap_rate <= 1.0)) fail("overlap_rate must be in [0, 1]");
  if (!(duplicate_rate >= 0.0 && duplicate_rate <= 1.0)) fail("duplicate_rate must be in [0, 1]");
}

std::vector<RawInstance> generate_corpus(const SyntheticSpec& spec,
                                         const JurisdictionRegistry& registry) {
  spec.validate(registry);

  std::vector<std::string> repo_urls, app_names, commits;
  {
    Rng rng(spec.seed);
    for (std::size_t r = 0; r < spec.repositories; ++r) {
      repo_urls.push_back("https://example.org/synthetic/repo-" + std::to_string(r) + ".git");
      app_names.push_back("SyntheticApp" + std::to_string(r));
      commits.push_back(hex_digest(rng, 40));
    }
  }

  std::vector<RawInstance> corpus;
  for (const auto& volume : spec.laws) {
    const Jurisdiction& law = registry.at(volume.law);
    const std::string law_tag = detail::to_lower(law_name(volume.law));
    Rng rng(spec.seed ^ detail::fnv1a(law_name(volume.law)));

    std::vector<std::size_t> order(law.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<double> weight(law.size());
    double w = 1.0;
    for (std::size_t rank = 0; rank < order.size(); ++rank, w *= spec.label_decay) {
      weight[order[rank]] = w;
    }
    std::vector<std::size_t> all(law.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

    struct FilePlan {
      std::size_t repo;
      std::string path;
      std::vector<std::size_t> pool;
      std::vector<std::size_t> members;  // indices into corpus
    };
    std::vector<FilePlan> files(volume.files);
    for (std::size_t f = 0; f < volume.files; ++f) {
      FilePlan& plan = files[f];
      plan.repo = f % spec.repositories;
      plan.path = "app/src/main/java/org/example/" + law_tag + "/m" + std::to_string(f) +
                  "/Component" + std::to_string(f) + ".kt";
      const std::size_t cap = std::min(spec.max_labels_per_file, law.size());
      plan.pool = draw_distinct(rng, all, weight, 1 + rng.below(cap));
    }

    for (std::size_t n = 0; n < volume.instances; ++n) {
      FilePlan& plan = files[n < volume.files ? n : rng.below(volume.files)];
      RawInstance inst;
      inst.law = volume.law;
      inst.evidence.app_name = app_names[plan.repo];
      inst.evidence.repo_url = repo_urls[plan.repo];
      inst.evidence.commit_id = commits[plan.repo];
      inst.evidence.file_path = plan.path;

      const std::size_t cap = std::min(spec.max_labels_per_instance, plan.pool.size());
      std::vector<std::size_t> labels = draw_distinct(rng, plan.pool, weight, 1 + rng.below(cap));
      if (!plan.members.empty() && rng.chance(spec.duplicate_rate)) {
        const RawInstance& prev = corpus[plan.members[rng.below(plan.members.size())]];
        inst.evidence.span = prev.evidence.span;
      } else if (!plan.members.empty() && rng.chance(spec.overlap_rate)) {
        const RawInstance& prev = corpus[plan.members[rng.below(plan.members.size())]];
        inst.evidence.span = {prev.evidence.span.start + 1, prev.evidence.span.end + 1};
        labels.clear();
        for (const auto& id : prev.article_ids) labels.push_back(*law.index_of(id));
      } else {
        const auto start = static_cast<std::uint32_t>(1 + rng.below(300));
        inst.evidence.span = {start, start + static_cast<std::uint32_t>(rng.below(6))};
      }
      inst.evidence.snippet = placeholder_snippet(plan.path, inst.evidence.span);

      std::vector<std::string> ids;
      for (auto i : labels) ids.push_back(law.label(static_cast<LabelIndex>(i)));
      inst.article_ids = law.sorted_ids(std::move(ids));
      inst.note = "synthetic rationale: evidence implicates " +
                  render_prediction(inst.article_ids, law);
      plan.members.push_back(corpus.size());
      corpus.push_back(std::move(inst));
    }
  }
  return corpus;
}

Profile Profile::parse(std::string_view text) {
  const std::string t = detail::to_lower(detail::trim(text));
  if (t == "perfect") return {ProfileKind::kPerfect, 0};
  if (t == "breadth_only") return {ProfileKind::kBreadthOnly, 0};
  if (t == "ranking_only") return {ProfileKind::kRankingOnly, 0};
  if (t == "majority_label") return {ProfileKind::kMajorityLabel, 0};
  if (t == "random") return {ProfileKind::kRandom, 0};
  if (t.rfind("random:", 0) == 0) {
    try {
      std::size_t used = 0;
      const auto seed = std::stoull(t.substr(7), &used);
      if (used == t.size() - 7) return {ProfileKind::kRandom, seed};
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown profile '" + std::string(text) + "'");
}

std::string Profile::name() const {
  switch (kind) {
    case ProfileKind::kPerfect: return "perfect";
    case ProfileKind::kBreadthOnly: return "breadth_only";
    case ProfileKind::kRankingOnly: return "ranking_only";
    case ProfileKind::kMajorityLabel: return "majority_label";
    case ProfileKind::kRandom: return "random:" + std::to_string(seed);
  }
  return "unknown";
}

namespace {

class ProfileOracle {
 public:
  ProfileOracle(const Profile& profile, const Jurisdiction& law,
                const std::map<std::string, std::size_t>& frequency)
      : profile_(profile), law_(law) {
    // Most frequent first, ties in universe order.
    by_frequency_ = law.universe();
    std::stable_sort(by_frequency_.begin(), by_frequency_.end(),
                     [&](const std::string& a, const std::string& b) {
                       return count(frequency, a) > count(frequency, b);
                     });
    rank_.clear();
    for (std::size_t i = 0; i < by_frequency_.size(); ++i) rank_[by_frequency_[i]] = i;
  }

  std::vector<std::string> answer(const std::vector<std::string>& gold, const std::string& key,
                                  std::size_t random_max) const {
    std::vector<std::string> g = gold;
    std::sort(g.begin(), g.end(), [&](const std::string& a, const std::string& b) {
      return rank_.at(a) < rank_.at(b);
    });
    switch (profile_.kind) {
      case ProfileKind::kPerfect:
        return g;
      case ProfileKind::kBreadthOnly: {
        for (const auto& d : by_frequency_) {
          if (std::find(g.begin(), g.end(), d) == g.end()) {
            g.insert(g.begin(), d);
            break;
          }
        }
        return g;
      }
      case ProfileKind::kRankingOnly:
        return {g.front()};
      case ProfileKind::kMajorityLabel:
        return {by_frequency_.front()};
      case ProfileKind::kRandom: {
        Rng rng(detail::fnv1a(key, profile_.seed ^ 0x9e3779b97f4a7c15ULL));
        std::vector<std::string> u = law_.universe();
        rng.shuffle(u);
        u.resize(1 + rng.below(std::min(random_max, u.size())));
        return u;
      }
    }
    return {};
  }

 private:
  static std::size_t count(const std::map<std::string, std::size_t>& f, const std::string& id) {
    const auto it = f.find(id);
    return it == f.end() ? 0 : it->second;
  }

  Profile profile_;
  const Jurisdiction& law_;
  std::vector<std::string> by_frequency_;
  std::map<std::string, std::size_t> rank_;
};

std::map<std::string, std::size_t> label_frequency(const GoldViews& gold, Law law) {
  std::map<std::string, std::size_t> f;
  if (const auto it = gold.task2.find(law); it != gold.task2.end()) {
    for (const auto& r : it->second) {
      for (const auto& id : r.gold) ++f[id];
    }
  } else if (const auto jt = gold.task1.find(law); jt != gold.task1.end()) {
    for (const auto& r : jt->second) {
      for (const auto& id : r.file_gold) ++f[id];
    }
  }
  return f;
}

}  // namespace

ScriptedPredictions scripted_model(const Profile& profile, const GoldViews& gold,
                                   const JurisdictionRegistry& registry) {
  ScriptedPredictions out;
  std::set<Law> laws;
  for (const auto& [law, _] : gold.task1) laws.insert(law);
  for (const auto& [law, _] : gold.task2) laws.insert(law);
  for (Law law : laws) {
    const ProfileOracle oracle(profile, registry.at(law), label_frequency(gold, law));
    if (const auto it = gold.task1.find(law); it != gold.task1.end()) {
      auto& preds = out.task1[law];
      for (Granularity g : kAllGranularities) {
        for (const auto& k : task1_gold_keys(it->second, g)) {
          preds.push_back({k.key, oracle.answer(*k.gold, "1|" + k.key.to_string(), 5)});
        }
      }
    }
    if (const auto it = gold.task2.find(law); it != gold.task2.end()) {
      auto& preds = out.task2[law];
      for (const auto& r : it->second) {
        preds.push_back({r.pointer, oracle.answer(r.gold, "2|" + r.pointer.to_string(), 3)});
      }
    }
  }
  return out;
}

namespace {

std::string answer_key(int task, Law law, const std::string& key) {
  return std::string(law_name(law)) + "|" + std::to_string(task) + "|" + key;
}

}  // namespace

ProfileTransport::ProfileTransport(std::map<std::string, Profile> models, const GoldViews& gold,
                                   const JurisdictionRegistry& registry) {
  for (const auto& [model, profile] : models) {
    const ScriptedPredictions p = scripted_model(profile, gold, registry);
    auto& answers = answers_[model];
    const auto text = [&](Law law, const std::vector<std::string>& ids) {
      return ids.empty() ? std::string("NONE") : render_prediction(ids, registry.at(law));
    };
    for (const auto& [law, preds] : p.task1) {
      for (const auto& r : preds) answers[answer_key(1, law, r.key.to_string())] = text(law, r.ranking);
    }
    for (const auto& [law, preds] : p.task2) {
      for (const auto& r : preds) {
        answers[answer_key(2, law, r.pointer.to_string())] = text(law, r.labels);
      }
    }
  }
}

void ProfileTransport::validate(const RunConfig& config) const {
  for (const auto& m : config.models) {
    if (!answers_.count(m)) {
      throw Error(ErrorCode::kTransportConfigError, "no scripted profile for model '" + m + "'");
    }
  }
}

TransportReply ProfileTransport::send(const TransportRequest& request) {
  const auto& answers = answers_.at(request.model);
  const auto it = answers.find(answer_key(request.task, request.law, request.key));
  if (it == answers.end()) return TransportReply::failure("unknown request key");
  return TransportReply::success(it->second);
}

}  // namespace regeval
