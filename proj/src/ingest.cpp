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


#include "regeval/ingest.hpp"

#include <cctype>
#include <set>

#include "regeval/error.hpp"
#include "text_util.hpp"

namespace regeval {

namespace {

bool is_word_byte(unsigned char c) {
  return std::isalnum(c) || c == '_' || (c >= 0x80 && c != 0xC2);
}

bool is_section_sign(std::string_view s, std::size_t i) {
  return i + 1 < s.size() && static_cast<unsigned char>(s[i]) == 0xC2 &&
         static_cast<unsigned char>(s[i + 1]) == 0xA7;
}

bool is_list_word(std::string_view w) {
  return w == "and" || w == "or" || w == "e" || w == "y" || w == "et" || w == "ou";
}

bool has_prefix(const Jurisdiction& law, const std::string& candidate) {
  for (const auto& p : law.prefixes()) {
    if (p == candidate) return true;
  }
  return false;
}

class Lexer {
 public:
  Lexer(std::string_view text, const Jurisdiction& law) : s_(text), law_(law) {}

  std::vector<std::string> candidates() {
    std::vector<std::string> out;
    bool armed = true;  // start of text
    bool line_start = true;
    std::size_t i = 0;
    while (i < s_.size()) {
      const unsigned char c = static_cast<unsigned char>(s_[i]);
      if (c == '\n') {
        line_start = true;
        armed = false;
        ++i;
        continue;
      }
      if (std::isspace(c)) {
        ++i;
        continue;
      }
      if (is_section_sign(s_, i)) {
        while (is_section_sign(s_, i)) i += 2;
        armed = true;
        line_start = false;
        continue;
      }
      if (std::isdigit(c)) {
        std::size_t end = i;
        while (end < s_.size() &&
               (std::isdigit(static_cast<unsigned char>(s_[end])) ||
                (s_[end] == '.' && end + 1 < s_.size() &&
                 std::isdigit(static_cast<unsigned char>(s_[end + 1]))))) {
          ++end;
        }
        const std::string_view token = s_.substr(i, end - i);
        if (end < s_.size() && is_word_byte(static_cast<unsigned char>(s_[end])) &&
            detail::ordinal_mark_length(s_.substr(end)) == 0) {
          // "12th", "3d": not an identifier; swallow the whole run
          while (end < s_.size() && is_word_byte(static_cast<unsigned char>(s_[end]))) ++end;
          armed = false;
          line_start = false;
          i = end;
          continue;
        }
        const bool multi = token.find('.') != std::string_view::npos;
        if (line_start && !multi && is_enumerator(end)) {
          armed = false;
          line_start = false;
          i = end + 1;
          continue;
        }
        const bool accept = armed || line_start || (multi && law_.bare_ids());
        line_start = false;
        if (accept) {
          out.emplace_back(token);
          const std::string_view rest = detail::skip_subdivisions(s_.substr(end));
          i = s_.size() - rest.size();
          armed = true;
        } else {
          armed = false;
          i = end;
        }
        continue;
      }
      if (is_word_byte(c)) {
        std::size_t end = i;
        while (end < s_.size() && is_word_byte(static_cast<unsigned char>(s_[end]))) ++end;
        const std::string word = detail::to_lower(s_.substr(i, end - i));
        const bool after_apostrophe = i > 0 && (s_[i - 1] == '\'' || s_[i - 1] == '`');
        line_start = false;
        if (!after_apostrophe && end < s_.size() && s_[end] == '.' &&
            has_prefix(law_, word + ".")) {
          armed = true;
          i = end + 1;
          continue;
        }
        if (!after_apostrophe && has_prefix(law_, word) && (word.size() > 2 || next_is_space_or_digit(end))) {
          armed = true;
        } else if (!(armed && is_list_word(word))) {
          armed = false;
        }
        i = end;
        continue;
      }
      line_start = false;
      switch (c) {
        case '[': case ':': case '"': case '\'': case '`': case '{':
          armed = true;
          break;
        case ',': case ';': case '/': case '&': case '-': case '.': case '(': case ')':
        case ']': case '}': case '*':
          break;
        default:
          armed = false;
      }
      ++i;
    }
    return out;
  }

 private:
  // "1." or "1)" followed by whitespace or end of text.
  bool is_enumerator(std::size_t end) const {
    if (end >= s_.size() || (s_[end] != '.' && s_[end] != ')')) return false;
    return end + 1 >= s_.size() || std::isspace(static_cast<unsigned char>(s_[end + 1]));
  }

  bool next_is_space_or_digit(std::size_t end) const {
    if (end >= s_.size()) return false;
    const unsigned char n = static_cast<unsigned char>(s_[end]);
    return n == ' ' || n == '\t' || std::isdigit(n);
  }

  std::string_view s_;
  const Jurisdiction& law_;
};

}  // namespace

ParsedPrediction parse_prediction_text(std::string_view raw, const Jurisdiction& law,
                                       ParseMode /*mode*/) {
  // Both modes keep first-occurrence order; SET callers read it as the
  // output order and use as_set() for membership.
  ParsedPrediction parsed;
  std::set<std::string> seen;
  for (const auto& token : Lexer(raw, law).candidates()) {
    ++parsed.diagnostics.candidates;
    const auto canonical = canonical_number(token, law);
    if (!canonical) {
      parsed.diagnostics.unrecognized.push_back(token);
      continue;
    }
    if (!law.contains(*canonical)) {
      parsed.diagnostics.out_of_universe.push_back(*canonical);
      continue;
    }
    if (!seen.insert(*canonical).second) {
      ++parsed.diagnostics.duplicates;
      continue;
    }
    parsed.ids.push_back(*canonical);
  }
  parsed.diagnostics.empty = parsed.ids.empty();
  return parsed;
}

std::string render_prediction(const std::vector<std::string>& ids, const Jurisdiction& law) {
  std::string out;
  for (const auto& id : ids) {
    if (!out.empty()) out += ", ";
    out += law.render(id);
  }
  return out;
}

BoundPredictions bind_predictions(const std::vector<ResponseRecord>& responses,
                                  const GoldViews& gold,
                                  const JurisdictionRegistry& registry) {
  BoundPredictions out;

  std::map<Law, std::set<Task1Key>> task1_keys;
  std::map<Law, std::set<Task2Pointer>> task2_pointers;
  std::map<std::pair<Law, int>, std::pair<std::size_t, std::map<std::size_t, std::size_t>>>
      gold_shape;
  for (const auto& [law, records] : gold.task1) {
    auto& shape = gold_shape[{law, 1}];
    for (Granularity g : kAllGranularities) {
      for (const auto& k : task1_gold_keys(records, g)) {
        task1_keys[law].insert(k.key);
        ++shape.first;
        ++shape.second[k.gold->size()];
      }
    }
  }
  for (const auto& [law, records] : gold.task2) {
    auto& shape = gold_shape[{law, 2}];
    for (const auto& r : records) {
      task2_pointers[law].insert(r.pointer);
      ++shape.first;
      ++shape.second[r.gold.size()];
    }
  }

  std::set<std::string> models;
  for (const auto& r : responses) models.insert(r.model);
  for (const auto& model : models) {
    for (const auto& [law_task, shape] : gold_shape) {
      BindingStats& s = out.stats[{model, law_task.first, law_task.second}];
      s.gold = shape.first;
      s.gold_cardinality = shape.second;
    }
  }

  std::map<BindingKey, std::set<std::string>> bound_keys;
  for (const auto& r : responses) {
    if (r.task != 1 && r.task != 2) {
      throw Error(ErrorCode::kInvalidRecord, "response task must be 1 or 2");
    }
    const Jurisdiction& law = registry.at(r.law);
    BindingStats& s = out.stats[{r.model, r.law, r.task}];
    ++s.responses;
    if (r.status == ResponseStatus::kExhaustedRetries) ++s.exhausted;
    const ParsedPrediction parsed = parse_prediction_text(
        r.status == ResponseStatus::kOk ? std::string_view(r.text) : std::string_view(),
        law, r.task == 1 ? ParseMode::kRanked : ParseMode::kSet);
    s.out_of_universe += parsed.diagnostics.out_of_universe.size();
    s.unrecognized += parsed.diagnostics.unrecognized.size();
    s.duplicates += parsed.diagnostics.duplicates;
    if (parsed.diagnostics.empty) ++s.empty_outputs;

    const std::string key_text = r.task == 1 ? r.key.to_string() : r.pointer.to_string();
    const bool known = r.task == 1 ? task1_keys[r.law].count(r.key) > 0
                                   : task2_pointers[r.law].count(r.pointer) > 0;
    if (!known) {
      s.orphans.push_back(key_text);
    } else if (bound_keys[{r.model, r.law, r.task}].insert(key_text).second) {
      ++s.bound;
      ++s.predicted_cardinality[parsed.ids.size()];
    }
    if (r.task == 1) {
      out.task1[r.model][r.law].push_back({r.key, parsed.ids});
    } else if (known) {
      out.task2[r.model][r.law].push_back({r.pointer, parsed.ids});
    }
  }
  return out;
}

}  // namespace regeval
