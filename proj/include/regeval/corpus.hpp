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

// Raw corpus schema, jurisdiction label universes, identifier and path
// normalization, and corpus-level statistics.

#ifndef REGEVAL_CORPUS_HPP_
#define REGEVAL_CORPUS_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "regeval/labels.hpp"

namespace regeval {

enum class Law { kLGPD, kPDPA, kPIPEDA };

inline constexpr std::array<Law, 3> kAllLaws = {Law::kLGPD, Law::kPDPA,
                                                Law::kPIPEDA};

std::string_view law_name(Law law);
/// Accepts "LGPD", "pdpa", ... Throws kUnknownJurisdiction otherwise.
Law parse_law(std::string_view name);

/// A statutory provision in its own law's numbering. The law participates in
/// equality, so LGPD "7" and PDPA "7" never compare equal.
struct ArticleId {
  Law law = Law::kLGPD;
  std::string id;

  auto operator<=>(const ArticleId&) const = default;
};

/// Label universe plus the surface-form grammar used to recognise citations.
class Jurisdiction {
 public:
  Jurisdiction(Law code, std::string citation_style,
               std::vector<std::string> universe,
               std::vector<std::string> prefixes, std::string id_pattern,
               std::size_t id_components, bool bare_ids);

  Law code() const noexcept { return code_; }
  const std::string& citation_style() const noexcept { return citation_style_; }
  /// Stable universe order; also the tie-break order for label rankings.
  const std::vector<std::string>& universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return universe_.size(); }
  /// Lowercase prefixes, longest first.
  const std::vector<std::string>& prefixes() const noexcept { return prefixes_; }
  const std::string& id_pattern() const noexcept { return id_pattern_; }
  /// Number of dotted components in a canonical id (1 for "7", 2 for "4.3").
  std::size_t id_components() const noexcept { return id_components_; }
  /// Whether a multi-component token counts as an identifier without a prefix.
  bool bare_ids() const noexcept { return bare_ids_; }

  std::optional<LabelIndex> index_of(std::string_view id) const;
  bool contains(std::string_view id) const { return index_of(id).has_value(); }
  const std::string& label(LabelIndex index) const { return universe_.at(index); }

  /// Renders an id in the law's citation style, e.g. "Art. 7" or "§ 4.3".
  std::string render(std::string_view id) const;

  /// Maps a list of canonical ids to a sorted, duplicate-free index set.
  /// Throws kOutOfUniverse on an unknown id.
  LabelSet to_label_set(const std::vector<std::string>& ids) const;
  /// Sorts ids by universe order and removes duplicates.
  std::vector<std::string> sorted_ids(std::vector<std::string> ids) const;

 private:
  Law code_;
  std::string citation_style_;
  std::vector<std::string> universe_;
  std::map<std::string, LabelIndex, std::less<>> index_;
  std::vector<std::string> prefixes_;
  std::string id_pattern_;
  std::size_t id_components_;
  bool bare_ids_;
};

/// The three jurisdictions. Defaults: PIPEDA principles 4.1-4.10; LGPD and
/// PDPA universes are the ids observed in the theme alignment and the
/// label-frequency tables. Overridable via jurisdictions.json.
class JurisdictionRegistry {
 public:
  static JurisdictionRegistry defaults();

  explicit JurisdictionRegistry(std::vector<Jurisdiction> jurisdictions);

  const Jurisdiction& at(Law law) const;
  const std::vector<Jurisdiction>& all() const noexcept { return laws_; }

 private:
  std::vector<Jurisdiction> laws_;
};

/// Prefixes recognised by default for every law ("art.", "s.", "§", ...).
const std::vector<std::string>& default_citation_prefixes();

/// Parses a single citation such as "Art. 7", "s. 13(1)" or "§ 4.3".
/// Throws kUnrecognizedIdentifier or kOutOfUniverse.
ArticleId canonicalize_article(std::string_view raw, const Jurisdiction& law);

/// Canonical form of a bare numeric token under `law`'s grammar, or nullopt
/// when the token cannot name a provision of that law. Does not check the
/// universe.
std::optional<std::string> canonical_number(std::string_view token,
                                            const Jurisdiction& law);

/// Closed line range, 1-based.
struct Span {
  std::uint32_t start = 1;
  std::uint32_t end = 1;

  auto operator<=>(const Span&) const = default;

  bool overlaps(const Span& other) const noexcept {
    return start <= other.end && other.start <= end;
  }
  std::uint32_t length() const noexcept { return end - start + 1; }
};

std::string format_span(const Span& span);
/// Accepts "12" and "10-14". Throws kInvalidSpan.
Span parse_span(std::string_view text);

/// Backslashes become '/', "." and empty segments vanish. With a
/// `project_root`, absolute paths under that root are relativized.
/// Throws kInvalidPath.
std::string normalize_path(std::string_view raw_path,
                           std::string_view project_root = {});

/// Splits "app/src/A.kt:10-14" into a normalized path and a span.
std::pair<std::string, Span> split_pointer(std::string_view file_path_field);

/// Model-visible part of an instance. Prompt assembly only ever sees this
/// type and the task views built from it.
struct Evidence {
  std::string app_name;
  std::string repo_url;
  std::string commit_id;
  std::string file_path;
  Span span;
  std::string snippet;
};

struct RawInstance {
  Law law = Law::kLGPD;
  Evidence evidence;
  /// Canonical ids, universe order, non-empty.
  std::vector<std::string> article_ids;
  /// Expert rationale. Never copied into task views.
  std::string note;
};

/// Checks every RawInstance invariant; throws on the first violation.
void validate_instance(const RawInstance& instance,
                       const JurisdictionRegistry& registry);

enum class Theme { kConsent, kNotice, kCollection, kRetention, kSecurity,
                   kTransfer };

inline constexpr std::array<Theme, 6> kAllThemes = {
    Theme::kConsent,   Theme::kNotice,   Theme::kCollection,
    Theme::kRetention, Theme::kSecurity, Theme::kTransfer};

std::string_view theme_name(Theme theme);
ArticleId theme_anchor(Theme theme, Law law);

/// Last path segment of a repository URL ("https://x/y/Dash.git" -> "Dash").
std::string repository_name(std::string_view repo_url);

struct LabelCount {
  std::string id;
  std::size_t count = 0;
};

struct LawStats {
  Law law = Law::kLGPD;
  std::size_t instances = 0;
  std::size_t files = 0;
  std::size_t modules = 0;
  std::size_t lines = 0;
  std::size_t snippets = 0;
  /// Descending count, ties in universe order.
  std::vector<LabelCount> label_frequency;
};

struct CorpusStats {
  std::vector<LawStats> per_law;
  /// Coverage columns: repository names, sorted.
  std::vector<std::string> repositories;
  /// law -> repository name -> instance count (zeros included).
  std::map<Law, std::map<std::string, std::size_t>> coverage;
  /// (law, law) -> number of (repository, theme) pairs where both laws cite
  /// their own anchor for that theme in that repository.
  std::map<std::pair<Law, Law>, std::size_t> theme_overlap;
};

CorpusStats corpus_stats(const std::vector<RawInstance>& corpus,
                         const JurisdictionRegistry& registry);

}  // namespace regeval

#endif  // REGEVAL_CORPUS_HPP_
