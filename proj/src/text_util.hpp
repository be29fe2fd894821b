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

#ifndef REGEVAL_SRC_TEXT_UTIL_HPP_
#define REGEVAL_SRC_TEXT_UTIL_HPP_

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

namespace regeval::detail {

inline std::string trim(std::string_view s) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

inline std::string to_upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

/// Length of a UTF-8 ordinal / degree sign at the start of `s`, else 0.
inline std::size_t ordinal_mark_length(std::string_view s) {
  if (s.size() >= 2 && static_cast<unsigned char>(s[0]) == 0xC2 &&
      (static_cast<unsigned char>(s[1]) == 0xBA ||
       static_cast<unsigned char>(s[1]) == 0xB0)) {
    return 2;
  }
  return 0;
}

/// Drops quotes, brackets and trailing sentence punctuation around a token.
/// A closing parenthesis survives when it balances an opening one.
inline std::string strip_wrapping_punctuation(std::string s) {
  constexpr std::string_view kLeading = "([{\"'`*-";
  constexpr std::string_view kTrailing = ".,;:)]}\"'`*!?";
  bool changed = true;
  while (changed && !s.empty()) {
    changed = false;
    if (kLeading.find(s.front()) != std::string_view::npos) {
      s.erase(0, 1);
      changed = true;
      continue;
    }
    if (s.size() >= 2 && ordinal_mark_length(std::string_view(s).substr(s.size() - 2)) == 2) {
      s.resize(s.size() - 2);
      changed = true;
      continue;
    }
    const char back = s.back();
    if (kTrailing.find(back) != std::string_view::npos) {
      if (back == ')' && std::count(s.begin(), s.end(), '(') >=
                             std::count(s.begin(), s.end(), ')')) {
        break;
      }
      s.pop_back();
      changed = true;
    }
    s = trim(s);
  }
  return s;
}

/// Skips an ordinal mark and subdivision groups like "(1)" or " (a)".
inline std::string_view skip_subdivisions(std::string_view rest) {
  rest.remove_prefix(ordinal_mark_length(rest));
  for (;;) {
    std::size_t i = 0;
    while (i < rest.size() && rest[i] == ' ') ++i;
    if (i >= rest.size() || rest[i] != '(') return rest;
    std::size_t k = i + 1;
    while (k < rest.size() && std::isalnum(static_cast<unsigned char>(rest[k]))) ++k;
    if (k == i + 1 || k - i - 1 > 4 || k >= rest.size() || rest[k] != ')') return rest;
    rest.remove_prefix(k + 1);
  }
}

/// FNV-1a, used where a hash must be stable across platforms and runs.
inline std::uint64_t fnv1a(std::string_view s, std::uint64_t seed = 0xcbf29ce484222325ULL) {
  std::uint64_t h = seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace regeval::detail

#endif  // REGEVAL_SRC_TEXT_UTIL_HPP_
