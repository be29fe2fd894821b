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

#include "regeval/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <regex>
#include <set>
#include <tuple>

#include "regeval/error.hpp"
#include "regeval/shaping.hpp"
#include "text_util.hpp"

namespace regeval {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnrecognizedIdentifier: return "UnrecognizedIdentifier";
    case ErrorCode::kOutOfUniverse: return "OutOfUniverse";
    case ErrorCode::kInvalidPath: return "InvalidPath";
    case ErrorCode::kInvalidSpan: return "InvalidSpan";
    case ErrorCode::kInvalidRecord: return "InvalidRecord";
    case ErrorCode::kMixedJurisdiction: return "MixedJurisdiction";
    case ErrorCode::kUnknownJurisdiction: return "UnknownJurisdiction";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kConflictingSnippet: return "ConflictingSnippet";
    case ErrorCode::kEmptyGold: return "EmptyGold";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kUniverseTooSmall: return "UniverseTooSmall";
    case ErrorCode::kSingularCovariance: return "SingularCovariance";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kMissingLaw: return "MissingLaw";
    case ErrorCode::kLawMismatch: return "LawMismatch";
    case ErrorCode::kTransportConfigError: return "TransportConfigError";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

std::string_view law_name(Law law) {
  switch (law) {
    case Law::kLGPD: return "LGPD";
    case Law::kPDPA: return "PDPA";
    case Law::kPIPEDA: return "PIPEDA";
  }
  return "?";
}

Law parse_law(std::string_view name) {
  const std::string upper = detail::to_upper(detail::trim(name));
  for (Law law : kAllLaws) {
    if (upper == law_name(law)) return law;
  }
  throw Error(ErrorCode::kUnknownJurisdiction,
              "unknown jurisdiction '" + std::string(name) + "'");
}

namespace {

std::vector<std::string> split_components(std::string_view token) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (begin <= token.size()) {
    const std::size_t dot = token.find('.', begin);
    const std::size_t end = dot == std::string_view::npos ? token.size() : dot;
    parts.emplace_back(token.substr(begin, end - begin));
    if (dot == std::string_view::npos) break;
    begin = dot + 1;
  }
  return parts;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

}  // namespace

Jurisdiction::Jurisdiction(Law code, std::string citation_style,
                           std::vector<std::string> universe,
                           std::vector<std::string> prefixes,
                           std::string id_pattern, std::size_t id_components,
                           bool bare_ids)
    : code_(code),
      citation_style_(std::move(citation_style)),
      universe_(std::move(universe)),
      id_pattern_(std::move(id_pattern)),
      id_components_(id_components),
      bare_ids_(bare_ids) {
  if (universe_.empty()) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string(law_name(code_)) + ": empty label universe");
  }
  if (id_components_ == 0) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string(law_name(code_)) + ": id_components must be >= 1");
  }
  for (std::size_t i = 0; i < universe_.size(); ++i) {
    if (!index_.emplace(universe_[i], static_cast<LabelIndex>(i)).second) {
      throw Error(ErrorCode::kInvalidConfig, std::string(law_name(code_)) +
                                                 ": duplicate universe id '" +
                                                 universe_[i] + "'");
    }
  }
  for (auto& p : prefixes) {
    p = detail::to_lower(detail::trim(p));
    if (!p.empty()) prefixes_.push_back(p);
  }
  std::sort(prefixes_.begin(), prefixes_.end(),
            [](const std::string& a, const std::string& b) {
              return a.size() != b.size() ? a.size() > b.size() : a < b;
            });
  prefixes_.erase(std::unique(prefixes_.begin(), prefixes_.end()),
                  prefixes_.end());
  try {
    std::regex probe(id_pattern_);
  } catch (const std::regex_error&) {
    throw Error(ErrorCode::kInvalidConfig, std::string(law_name(code_)) +
                                               ": bad id_pattern '" +
                                               id_pattern_ + "'");
  }
}

std::optional<LabelIndex> Jurisdiction::index_of(std::string_view id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Jurisdiction::render(std::string_view id) const {
  std::string out = citation_style_;
  const std::size_t n = out.find('N');
  if (n == std::string::npos) return std::string(id);
  out.replace(n, 1, id);
  return out;
}

LabelSet Jurisdiction::to_label_set(const std::vector<std::string>& ids) const {
  LabelSet set;
  set.reserve(ids.size());
  for (const auto& id : ids) {
    const auto index = index_of(id);
    if (!index) {
      throw Error(ErrorCode::kOutOfUniverse,
                  std::string(law_name(code_)) + ": '" + id +
                      "' is not in the label universe");
    }
    set.push_back(*index);
  }
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

std::vector<std::string> Jurisdiction::sorted_ids(
    std::vector<std::string> ids) const {
  std::vector<std::string> out;
  for (LabelIndex index : to_label_set(ids)) out.push_back(universe_[index]);
  return out;
}

const std::vector<std::string>& default_citation_prefixes() {
  static const std::vector<std::string> prefixes = {
      "article", "articles", "art.", "arts.", "art", "arts", "artigo",
      "artigos", "section", "sections", "sec.", "sec", "s.", "ss.", "s",
      "ss", "§", "§§", "principle", "principles", "clause", "clauses"};
  return prefixes;
}

JurisdictionRegistry JurisdictionRegistry::defaults() {
  std::vector<std::string> pipeda;
  for (int i = 1; i <= 10; ++i) pipeda.push_back("4." + std::to_string(i));
  std::vector<Jurisdiction> laws;
  laws.emplace_back(Law::kLGPD, "Art. N",
                    std::vector<std::string>{"5", "6", "7", "8", "11", "12",
                                             "15", "33", "34", "46"},
                    default_citation_prefixes(), "[1-9][0-9]{0,2}", 1, false);
  laws.emplace_back(Law::kPDPA, "s. N",
                    std::vector<std::string>{"13", "14", "15", "18", "20", "24",
                                             "25", "26", "27", "28"},
                    default_citation_prefixes(), "[1-9][0-9]{0,2}", 1, false);
  laws.emplace_back(Law::kPIPEDA, "§ N", pipeda, default_citation_prefixes(),
                    "4\\.[1-9][0-9]?", 2, true);
  return JurisdictionRegistry(std::move(laws));
}

JurisdictionRegistry::JurisdictionRegistry(std::vector<Jurisdiction> jurisdictions)
    : laws_(std::move(jurisdictions)) {
  std::sort(laws_.begin(), laws_.end(),
            [](const Jurisdiction& a, const Jurisdiction& b) {
              return a.code() < b.code();
            });
  for (std::size_t i = 1; i < laws_.size(); ++i) {
    if (laws_[i].code() == laws_[i - 1].code()) {
      throw Error(ErrorCode::kInvalidConfig,
                  "jurisdiction listed twice: " +
                      std::string(law_name(laws_[i].code())));
    }
  }
}

const Jurisdiction& JurisdictionRegistry::at(Law law) const {
  for (const auto& j : laws_) {
    if (j.code() == law) return j;
  }
  throw Error(ErrorCode::kUnknownJurisdiction,
              "jurisdiction not configured: " + std::string(law_name(law)));
}

std::optional<std::string> canonical_number(std::string_view token,
                                            const Jurisdiction& law) {
  auto parts = split_components(token);
  for (auto& part : parts) {
    if (!all_digits(part)) return std::nullopt;
    const std::size_t nz = part.find_first_not_of('0');
    part = nz == std::string::npos ? "0" : part.substr(nz);
  }
  if (parts.size() < law.id_components()) return std::nullopt;
  // A decimal never names an article of a law numbered by plain integers.
  if (law.id_components() == 1 && parts.size() > 1) return std::nullopt;
  parts.resize(law.id_components());
  std::string canonical = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) canonical += "." + parts[i];
  static thread_local std::map<std::string, std::regex> cache;
  auto it = cache.find(law.id_pattern());
  if (it == cache.end()) {
    it = cache.emplace(law.id_pattern(), std::regex(law.id_pattern())).first;
  }
  if (!std::regex_match(canonical, it->second)) return std::nullopt;
  return canonical;
}

ArticleId canonicalize_article(std::string_view raw, const Jurisdiction& law) {
  const auto unrecognized = [&] {
    return Error(ErrorCode::kUnrecognizedIdentifier,
                 std::string(law_name(law.code())) + ": '" + std::string(raw) +
                     "' is not an article identifier");
  };
  std::string s = detail::to_lower(detail::trim(raw));
  s = detail::strip_wrapping_punctuation(s);
  if (s.empty()) throw unrecognized();

  for (const auto& prefix : law.prefixes()) {
    if (s.size() <= prefix.size() || s.compare(0, prefix.size(), prefix) != 0) {
      continue;
    }
    const unsigned char next = static_cast<unsigned char>(s[prefix.size()]);
    if (std::isalpha(next)) continue;  // "section" must not match "s"
    s = detail::trim(std::string_view(s).substr(prefix.size()));
    break;
  }
  if (!s.empty() && s.front() == '.') s = detail::trim(std::string_view(s).substr(1));

  // number, then optional subdivisions such as "(1)(a)"
  std::size_t pos = 0;
  while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) ||
                            (s[pos] == '.' && pos + 1 < s.size() &&
                             std::isdigit(static_cast<unsigned char>(s[pos + 1]))))) {
    ++pos;
  }
  if (pos == 0) throw unrecognized();
  const std::string number = s.substr(0, pos);
  std::string_view rest = std::string_view(s).substr(pos);
  rest = detail::skip_subdivisions(rest);
  if (!detail::trim(rest).empty()) throw unrecognized();

  const auto canonical = canonical_number(number, law);
  if (!canonical) throw unrecognized();
  if (!law.contains(*canonical)) {
    throw Error(ErrorCode::kOutOfUniverse,
                std::string(law_name(law.code())) + ": '" + *canonical +
                    "' is not in the label universe");
  }
  return ArticleId{law.code(), *canonical};
}

std::string format_span(const Span& span) {
  return std::to_string(span.start) + "-" + std::to_string(span.end);
}

Span parse_span(std::string_view text) {
  const auto bad = [&] {
    return Error(ErrorCode::kInvalidSpan,
                 "invalid line range '" + std::string(text) + "'");
  };
  const auto parse_int = [&](std::string_view s) {
    std::uint32_t value = 0;
    if (!all_digits(s)) throw bad();
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw bad();
    return value;
  };
  const std::string t = detail::trim(text);
  const std::size_t dash = t.find('-');
  Span span;
  if (dash == std::string::npos) {
    span.start = span.end = parse_int(t);
  } else {
    span.start = parse_int(detail::trim(std::string_view(t).substr(0, dash)));
    span.end = parse_int(detail::trim(std::string_view(t).substr(dash + 1)));
  }
  if (span.start < 1 || span.start > span.end) throw bad();
  return span;
}

std::string normalize_path(std::string_view raw_path,
                           std::string_view project_root) {
  const auto invalid = [&](const std::string& why) {
    return Error(ErrorCode::kInvalidPath,
                 "invalid path '" + std::string(raw_path) + "': " + why);
  };
  std::string path = detail::trim(raw_path);
  std::replace(path.begin(), path.end(), '\\', '/');
  if (!project_root.empty()) {
    std::string root(project_root);
    std::replace(root.begin(), root.end(), '\\', '/');
    while (root.size() > 1 && root.back() == '/') root.pop_back();
    if (path.size() > root.size() && path.compare(0, root.size(), root) == 0 &&
        path[root.size()] == '/') {
      path.erase(0, root.size() + 1);
    }
  }
  const bool drive = path.size() >= 2 && std::isalpha(static_cast<unsigned char>(path[0])) &&
                     path[1] == ':';
  if (!path.empty() && (path.front() == '/' || drive)) {
    throw invalid("absolute path outside the project root");
  }
  std::string out;
  std::size_t begin = 0;
  while (begin <= path.size()) {
    std::size_t slash = path.find('/', begin);
    if (slash == std::string::npos) slash = path.size();
    const std::string_view segment = std::string_view(path).substr(begin, slash - begin);
    if (segment == "..") throw invalid("escapes the project root");
    if (!segment.empty() && segment != ".") {
      if (!out.empty()) out += '/';
      out += segment;
    }
    begin = slash + 1;
  }
  if (out.empty()) throw invalid("empty after normalization");
  return out;
}

std::pair<std::string, Span> split_pointer(std::string_view file_path_field) {
  const std::size_t colon = file_path_field.rfind(':');
  if (colon == std::string_view::npos || colon + 1 >= file_path_field.size()) {
    throw Error(ErrorCode::kInvalidSpan, "pointer '" + std::string(file_path_field) +
                                             "' has no ':start-end' suffix");
  }
  const Span span = parse_span(file_path_field.substr(colon + 1));
  return {normalize_path(file_path_field.substr(0, colon)), span};
}

void validate_instance(const RawInstance& instance,
                       const JurisdictionRegistry& registry) {
  const Evidence& e = instance.evidence;
  const auto where = [&] { return e.file_path + ":" + format_span(e.span); };
  if (e.repo_url.empty() || e.app_name.empty()) {
    throw Error(ErrorCode::kInvalidRecord, where() + ": missing provenance");
  }
  if (e.commit_id.empty() ||
      !std::all_of(e.commit_id.begin(), e.commit_id.end(), [](unsigned char c) {
        return std::isxdigit(c) != 0;
      })) {
    throw Error(ErrorCode::kInvalidRecord,
                where() + ": commit_id must be a hex string");
  }
  if (normalize_path(e.file_path) != e.file_path) {
    throw Error(ErrorCode::kInvalidPath, where() + ": path is not normalized");
  }
  if (e.span.start < 1 || e.span.start > e.span.end) {
    throw Error(ErrorCode::kInvalidSpan, where() + ": bad span");
  }
  if (instance.article_ids.empty()) {
    throw Error(ErrorCode::kInvalidRecord, where() + ": no article ids");
  }
  const Jurisdiction& law = registry.at(instance.law);
  for (const auto& id : instance.article_ids) {
    if (!law.contains(id)) {
      throw Error(ErrorCode::kOutOfUniverse, where() + ": '" + id +
                                                 "' is not a " +
                                                 std::string(law_name(instance.law)) +
                                                 " article");
    }
  }
}

std::string_view theme_name(Theme theme) {
  switch (theme) {
    case Theme::kConsent: return "Consent";
    case Theme::kNotice: return "Notice";
    case Theme::kCollection: return "Collection";
    case Theme::kRetention: return "Retention";
    case Theme::kSecurity: return "Security";
    case Theme::kTransfer: return "Transfer";
  }
  return "?";
}

ArticleId theme_anchor(Theme theme, Law law) {
  // Rows: Consent, Notice, Collection, Retention, Security, Transfer.
  static constexpr std::array<std::array<const char*, 6>, 3> kAnchors = {{
      {"7", "6", "6", "15", "46", "33"},
      {"13", "20", "18", "25", "24", "26"},
      {"4.3", "4.2", "4.4", "4.5", "4.7", "4.1"},
  }};
  return ArticleId{law, kAnchors[static_cast<std::size_t>(law)]
                                [static_cast<std::size_t>(theme)]};
}

std::string repository_name(std::string_view repo_url) {
  std::string url = detail::trim(repo_url);
  while (!url.empty() && url.back() == '/') url.pop_back();
  if (url.size() > 4 && url.compare(url.size() - 4, 4, ".git") == 0) {
    url.resize(url.size() - 4);
  }
  const std::size_t slash = url.find_last_of("/:");
  return slash == std::string::npos ? url : url.substr(slash + 1);
}

CorpusStats corpus_stats(const std::vector<RawInstance>& corpus,
                         const JurisdictionRegistry& registry) {
  using FileKey = std::tuple<std::string, std::string, std::string, std::string>;
  struct Accumulator {
    std::size_t instances = 0;
    std::set<FileKey> files;
    std::set<std::pair<FileKey, std::string>> modules;
    std::set<std::pair<FileKey, Span>> lines;
    std::set<std::tuple<std::string, Span, std::string>> snippets;
    std::map<std::string, std::size_t> labels;
  };
  std::map<Law, Accumulator> acc;
  std::set<std::string> repositories;
  // repository -> law -> themes cited
  std::map<std::string, std::map<Law, std::set<Theme>>> themes;

  for (const auto& inst : corpus) {
    const Evidence& e = inst.evidence;
    Accumulator& a = acc[inst.law];
    const FileKey file{e.repo_url, e.app_name, e.commit_id, e.file_path};
    ++a.instances;
    a.files.insert(file);
    a.modules.emplace(file, derive_module_name(e.file_path));
    a.lines.emplace(file, e.span);
    a.snippets.emplace(e.file_path, e.span, e.commit_id);
    const std::string repo = repository_name(e.repo_url);
    repositories.insert(repo);
    for (const auto& id : inst.article_ids) {
      ++a.labels[id];
      for (Theme theme : kAllThemes) {
        if (theme_anchor(theme, inst.law).id == id) themes[repo][inst.law].insert(theme);
      }
    }
  }

  CorpusStats stats;
  stats.repositories.assign(repositories.begin(), repositories.end());
  for (const auto& [law, a] : acc) {
    LawStats s;
    s.law = law;
    s.instances = a.instances;
    s.files = a.files.size();
    s.modules = a.modules.size();
    s.lines = a.lines.size();
    s.snippets = a.snippets.size();
    const Jurisdiction& j = registry.at(law);
    for (const auto& [id, count] : a.labels) s.label_frequency.push_back({id, count});
    std::sort(s.label_frequency.begin(), s.label_frequency.end(),
              [&](const LabelCount& x, const LabelCount& y) {
                if (x.count != y.count) return x.count > y.count;
                return j.index_of(x.id).value_or(0) < j.index_of(y.id).value_or(0);
              });
    stats.per_law.push_back(std::move(s));
    auto& row = stats.coverage[law];
    for (const auto& repo : stats.repositories) row[repo] = 0;
  }
  for (const auto& inst : corpus) {
    ++stats.coverage[inst.law][repository_name(inst.evidence.repo_url)];
  }
  for (std::size_t i = 0; i < stats.per_law.size(); ++i) {
    for (std::size_t k = i + 1; k < stats.per_law.size(); ++k) {
      const Law a = stats.per_law[i].law;
      const Law b = stats.per_law[k].law;
      std::size_t overlap = 0;
      for (const auto& [repo, by_law] : themes) {
        const auto ia = by_law.find(a);
        const auto ib = by_law.find(b);
        if (ia == by_law.end() || ib == by_law.end()) continue;
        for (Theme t : ia->second) overlap += ib->second.count(t);
      }
      stats.theme_overlap[{a, b}] = overlap;
      stats.theme_overlap[{b, a}] = overlap;
    }
  }
  return stats;
}

}  // namespace regeval
