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

#include "regeval/shaping.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "regeval/error.hpp"

namespace regeval {

std::string_view granularity_name(Granularity g) {
  switch (g) {
    case Granularity::kFile: return "file";
    case Granularity::kModule: return "module";
    case Granularity::kLine: return "line";
  }
  return "?";
}

Granularity parse_granularity(std::string_view name) {
  for (Granularity g : kAllGranularities) {
    if (name == granularity_name(g)) return g;
  }
  throw Error(ErrorCode::kInvalidRecord,
              "unknown granularity '" + std::string(name) + "'");
}

std::string Task1Key::to_string() const {
  std::string out = identity.repo_url + "|" + identity.app_name + "|" +
                    identity.commit_id + "|" + identity.file_path + "#" +
                    std::string(granularity_name(granularity));
  if (granularity == Granularity::kModule) out += ":" + module;
  if (granularity == Granularity::kLine) out += ":" + format_span(span);
  return out;
}

std::string Task2Pointer::to_string() const {
  return file_path + ":" + format_span(span) + "@" + commit_id;
}

bool is_excluded(std::string_view file_path, const ShapingOptions& options) {
  const std::size_t slash = file_path.rfind('/');
  const std::string_view base =
      slash == std::string_view::npos ? file_path : file_path.substr(slash + 1);
  for (const auto& pattern : options.exclude_patterns) {
    if (pattern.empty()) continue;
    if (pattern.back() == '/') {
      if (file_path.rfind(pattern, 0) == 0 ||
          file_path.find("/" + pattern) != std::string_view::npos) {
        return true;
      }
    } else if (base == pattern) {
      return true;
    }
  }
  return false;
}

std::string derive_module_name(std::string_view file_path) {
  const std::size_t slash = file_path.rfind('/');
  std::string_view base =
      slash == std::string_view::npos ? file_path : file_path.substr(slash + 1);
  const std::size_t dot = base.rfind('.');
  if (dot != std::string_view::npos && dot > 0) base = base.substr(0, dot);
  return std::string(base);
}

namespace {

// Validates, checks single-law, and applies the exclusion filter.
std::vector<const RawInstance*> admit(const std::vector<RawInstance>& corpus,
                                      const JurisdictionRegistry& registry,
                                      const ShapingOptions& options) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "corpus is empty");
  const Law law = corpus.front().law;
  std::vector<const RawInstance*> kept;
  for (const auto& inst : corpus) {
    if (inst.law != law) {
      throw Error(ErrorCode::kMixedJurisdiction,
                  "shaping expects one law per invocation, saw " +
                      std::string(law_name(law)) + " and " +
                      std::string(law_name(inst.law)));
    }
    validate_instance(inst, registry);
    if (!is_excluded(inst.evidence.file_path, options)) kept.push_back(&inst);
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kEmptyCorpus,
                "every instance matched an exclusion pattern");
  }
  return kept;
}

std::vector<std::string> to_ids(const std::set<LabelIndex>& labels,
                                 const Jurisdiction& law) {
  std::vector<std::string> out;
  out.reserve(labels.size());
  for (LabelIndex i : labels) out.push_back(law.label(i));
  return out;
}

struct SpanGroup {
  Span span;
  std::set<LabelIndex> labels;
  std::set<Excerpt> excerpts;
};

// Exact-span evidence is unioned first; overlapping spans then merge only
// when their label sets are identical.
std::vector<LineEntry> build_line_entries(std::map<Span, SpanGroup> by_span,
                                          const Jurisdiction& law) {
  std::map<std::set<LabelIndex>, std::vector<SpanGroup>> by_labels;
  for (auto& [span, group] : by_span) by_labels[group.labels].push_back(std::move(group));

  std::vector<SpanGroup> merged;
  for (auto& [labels, groups] : by_labels) {
    // by_span iteration order keeps each bucket sorted by (start, end)
    SpanGroup current = std::move(groups.front());
    for (std::size_t i = 1; i < groups.size(); ++i) {
      if (groups[i].span.start <= current.span.end) {
        current.span.end = std::max(current.span.end, groups[i].span.end);
        current.excerpts.insert(groups[i].excerpts.begin(), groups[i].excerpts.end());
      } else {
        merged.push_back(std::move(current));
        current = std::move(groups[i]);
      }
    }
    merged.push_back(std::move(current));
  }
  std::sort(merged.begin(), merged.end(), [](const SpanGroup& a, const SpanGroup& b) {
    return std::tie(a.span, a.labels) < std::tie(b.span, b.labels);
  });

  std::vector<LineEntry> entries;
  entries.reserve(merged.size());
  for (auto& g : merged) {
    entries.push_back(LineEntry{g.span, to_ids(g.labels, law),
                                std::vector<Excerpt>(g.excerpts.begin(), g.excerpts.end())});
  }
  return entries;
}

}  // namespace

std::vector<Task1Record> shape_task1(const std::vector<RawInstance>& corpus,
                                     const JurisdictionRegistry& registry,
                                     const ShapingOptions& options) {
  const auto kept = admit(corpus, registry, options);
  const Law law_code = kept.front()->law;
  const Jurisdiction& law = registry.at(law_code);

  struct FileGroup {
    std::set<LabelIndex> labels;
    std::map<Span, SpanGroup> spans;
  };
  std::map<FileIdentity, FileGroup> files;
  for (const RawInstance* inst : kept) {
    const Evidence& e = inst->evidence;
    FileGroup& group = files[{e.repo_url, e.app_name, e.commit_id, e.file_path}];
    const LabelSet labels = law.to_label_set(inst->article_ids);
    group.labels.insert(labels.begin(), labels.end());
    SpanGroup& span_group = group.spans[e.span];
    span_group.span = e.span;
    span_group.labels.insert(labels.begin(), labels.end());
    span_group.excerpts.insert(Excerpt{e.span, e.snippet});
  }

  std::vector<Task1Record> records;
  records.reserve(files.size());
  for (auto& [identity, group] : files) {
    Task1Record r;
    r.law = law_code;
    r.identity = identity;
    r.module = derive_module_name(identity.file_path);
    r.file_gold = to_ids(group.labels, law);
    r.module_gold = r.file_gold;
    r.lines = build_line_entries(std::move(group.spans), law);
    records.push_back(std::move(r));
  }
  std::sort(records.begin(), records.end(), [](const Task1Record& a, const Task1Record& b) {
    return std::tie(a.identity.repo_url, a.identity.file_path, a.identity.app_name,
                    a.identity.commit_id) <
           std::tie(b.identity.repo_url, b.identity.file_path, b.identity.app_name,
                    b.identity.commit_id);
  });
  return records;
}

std::vector<Task2Record> shape_task2(const std::vector<RawInstance>& corpus,
                                     const JurisdictionRegistry& registry,
                                     const ShapingOptions& options) {
  const auto kept = admit(corpus, registry, options);
  const Law law_code = kept.front()->law;
  const Jurisdiction& law = registry.at(law_code);

  struct PointerGroup {
    std::set<LabelIndex> labels;
    const Evidence* evidence = nullptr;
  };
  std::map<Task2Pointer, PointerGroup> pointers;
  for (const RawInstance* inst : kept) {
    const Evidence& e = inst->evidence;
    PointerGroup& group = pointers[{e.file_path, e.span, e.commit_id}];
    if (group.evidence == nullptr) {
      group.evidence = &e;
    } else {
      if (group.evidence->snippet != e.snippet) {
        throw Error(ErrorCode::kConflictingSnippet,
                    "pointer " + e.file_path + ":" + format_span(e.span) + "@" +
                        e.commit_id + " maps to two different snippets");
      }
      // keep the smallest provenance so the result ignores input order
      if (std::tie(e.repo_url, e.app_name) <
          std::tie(group.evidence->repo_url, group.evidence->app_name)) {
        group.evidence = &e;
      }
    }
    const LabelSet labels = law.to_label_set(inst->article_ids);
    group.labels.insert(labels.begin(), labels.end());
  }

  std::vector<Task2Record> records;
  records.reserve(pointers.size());
  for (const auto& [pointer, group] : pointers) {
    records.push_back(Task2Record{law_code, pointer, group.evidence->repo_url,
                                  group.evidence->app_name, group.evidence->snippet,
                                  to_ids(group.labels, law)});
  }
  std::sort(records.begin(), records.end(), [](const Task2Record& a, const Task2Record& b) {
    return std::tie(a.repo_url, a.pointer.file_path, a.pointer.span, a.pointer.commit_id) <
           std::tie(b.repo_url, b.pointer.file_path, b.pointer.span, b.pointer.commit_id);
  });
  return records;
}

GoldViews shape_all(const std::vector<RawInstance>& corpus,
                    const JurisdictionRegistry& registry,
                    const ShapingOptions& options) {
  std::map<Law, std::vector<RawInstance>> by_law;
  for (const auto& inst : corpus) by_law[inst.law].push_back(inst);
  GoldViews views;
  for (auto& [law, instances] : by_law) {
    const bool any_kept = std::any_of(instances.begin(), instances.end(), [&](const RawInstance& i) {
      return !is_excluded(i.evidence.file_path, options);
    });
    if (!any_kept) continue;
    views.task1[law] = shape_task1(instances, registry, options);
    views.task2[law] = shape_task2(instances, registry, options);
  }
  return views;
}

std::vector<GoldKey> task1_gold_keys(const std::vector<Task1Record>& records,
                                     Granularity granularity) {
  std::vector<GoldKey> keys;
  for (const auto& r : records) {
    switch (granularity) {
      case Granularity::kFile:
        keys.push_back({Task1Key{r.identity, granularity, {}, {}}, &r.file_gold, &r, nullptr});
        break;
      case Granularity::kModule:
        keys.push_back({Task1Key{r.identity, granularity, r.module, {}}, &r.module_gold, &r, nullptr});
        break;
      case Granularity::kLine:
        for (const auto& line : r.lines) {
          keys.push_back({Task1Key{r.identity, granularity, {}, line.span}, &line.gold, &r, &line});
        }
        break;
    }
  }
  return keys;
}

}  // namespace regeval
