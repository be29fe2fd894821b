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

// Deterministic reshaping of the raw corpus into the localization view
// (Task 1) and the snippet judgment view (Task 2).

#ifndef REGEVAL_SHAPING_HPP_
#define REGEVAL_SHAPING_HPP_

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "regeval/corpus.hpp"

namespace regeval {

enum class Granularity { kFile, kModule, kLine };

inline constexpr std::array<Granularity, 3> kAllGranularities = {
    Granularity::kFile, Granularity::kModule, Granularity::kLine};

std::string_view granularity_name(Granularity g);  // "file", "module", "line"
Granularity parse_granularity(std::string_view name);

/// Task 1 identity: (file, app, repository, commit).
struct FileIdentity {
  std::string repo_url;
  std::string app_name;
  std::string commit_id;
  std::string file_path;

  auto operator<=>(const FileIdentity&) const = default;
};

/// One gold or predicted Task 1 key. `module` is set for kModule, `span` for
/// kLine; both are left at their defaults otherwise.
struct Task1Key {
  FileIdentity identity;
  Granularity granularity = Granularity::kFile;
  std::string module;
  Span span;

  auto operator<=>(const Task1Key&) const = default;
  std::string to_string() const;
};

/// Task 2 identity: (file, span, commit).
struct Task2Pointer {
  std::string file_path;
  Span span;
  std::string commit_id;

  auto operator<=>(const Task2Pointer&) const = default;
  std::string to_string() const;
};

struct Excerpt {
  Span span;
  std::string text;

  auto operator<=>(const Excerpt&) const = default;
};

struct LineEntry {
  Span span;
  std::vector<std::string> gold;  // universe order
  std::vector<Excerpt> excerpts;  // contributing snippets, sorted
};

struct Task1Record {
  Law law = Law::kLGPD;
  FileIdentity identity;
  std::string module;
  std::vector<std::string> file_gold;
  std::vector<std::string> module_gold;
  std::vector<LineEntry> lines;  // sorted by (start, end)
};

struct Task2Record {
  Law law = Law::kLGPD;
  Task2Pointer pointer;
  std::string repo_url;
  std::string app_name;
  std::string snippet;
  std::vector<std::string> gold;  // universe order
};

/// All views for one corpus, keyed by law.
struct GoldViews {
  std::map<Law, std::vector<Task1Record>> task1;
  std::map<Law, std::vector<Task2Record>> task2;
};

struct ShapingOptions {
  /// Patterns ending in '/' match a directory segment anywhere in the path;
  /// other patterns match the file name exactly.
  std::vector<std::string> exclude_patterns = {"build/", "generated/", "R.java"};
};

bool is_excluded(std::string_view file_path, const ShapingOptions& options);

/// File stem: basename without its final extension.
std::string derive_module_name(std::string_view file_path);

/// All instances must belong to one law. Throws kEmptyCorpus (also when every
/// instance is excluded) or kMixedJurisdiction.
std::vector<Task1Record> shape_task1(const std::vector<RawInstance>& corpus,
                                     const JurisdictionRegistry& registry,
                                     const ShapingOptions& options = {});

/// Throws kEmptyCorpus, kMixedJurisdiction or kConflictingSnippet.
std::vector<Task2Record> shape_task2(const std::vector<RawInstance>& corpus,
                                     const JurisdictionRegistry& registry,
                                     const ShapingOptions& options = {});

/// Splits a multi-law corpus and shapes each law. Laws with no surviving
/// instances are omitted.
GoldViews shape_all(const std::vector<RawInstance>& corpus,
                    const JurisdictionRegistry& registry,
                    const ShapingOptions& options = {});

/// Gold keys of a Task 1 view in canonical order, paired with gold ids.
struct GoldKey {
  Task1Key key;
  const std::vector<std::string>* gold = nullptr;
  const Task1Record* record = nullptr;
  const LineEntry* line = nullptr;  // kLine only
};

std::vector<GoldKey> task1_gold_keys(const std::vector<Task1Record>& records,
                                     Granularity granularity);

}  // namespace regeval

#endif  // REGEVAL_SHAPING_HPP_
