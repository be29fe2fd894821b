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

#include <gtest/gtest.h>

#include "regeval/corpus.hpp"
#include "regeval/error.hpp"
#include "test_util.hpp"

namespace regeval {
namespace {

using testing::instance;
using testing::registry;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kIoError;
}

TEST(Canonicalize, CitationForms) {
  EXPECT_EQ(canonicalize_article("Art. 7", registry().at(Law::kLGPD)),
            (ArticleId{Law::kLGPD, "7"}));
  EXPECT_EQ(canonicalize_article("4.3", registry().at(Law::kPIPEDA)),
            (ArticleId{Law::kPIPEDA, "4.3"}));
  EXPECT_EQ(canonicalize_article("s. 13(1)", registry().at(Law::kPDPA)).id, "13");
  EXPECT_EQ(canonicalize_article("§ 4.3", registry().at(Law::kPIPEDA)).id, "4.3");
}

TEST(Canonicalize, Rejects) {
  EXPECT_EQ(code_of([] { canonicalize_article("banana", registry().at(Law::kPDPA)); }),
            ErrorCode::kUnrecognizedIdentifier);
  EXPECT_EQ(code_of([] { canonicalize_article("Art. 99", registry().at(Law::kLGPD)); }),
            ErrorCode::kOutOfUniverse);
}

TEST(Canonicalize, LawIsPartOfIdentity) {
  EXPECT_NE((ArticleId{Law::kLGPD, "7"}), (ArticleId{Law::kPDPA, "7"}));
}

TEST(Jurisdiction, RenderUsesCitationStyle) {
  EXPECT_EQ(registry().at(Law::kLGPD).render("7"), "Art. 7");
  EXPECT_EQ(registry().at(Law::kPDPA).render("13"), "s. 13");
  EXPECT_EQ(registry().at(Law::kPIPEDA).render("4.3"), "§ 4.3");
}

TEST(Jurisdiction, PipedaUniverseIsTenPrinciples) {
  const auto& u = registry().at(Law::kPIPEDA).universe();
  ASSERT_EQ(u.size(), 10u);
  EXPECT_EQ(u.front(), "4.1");
  EXPECT_EQ(u.back(), "4.10");
}

TEST(Jurisdiction, LabelSetIsSortedAndThrowsOutside) {
  const auto& lgpd = registry().at(Law::kLGPD);
  const LabelSet s = lgpd.to_label_set({"46", "7", "7"});
  ASSERT_EQ(s.size(), 2u);
  EXPECT_LT(s[0], s[1]);
  EXPECT_EQ(code_of([&] { lgpd.to_label_set({"9999"}); }), ErrorCode::kOutOfUniverse);
}

TEST(NormalizePath, Examples) {
  EXPECT_EQ(normalize_path("src\\main\\A.kt"), "src/main/A.kt");
  EXPECT_EQ(normalize_path("./app/B.java"), "app/B.java");
  EXPECT_EQ(code_of([] { normalize_path("../x.kt"); }), ErrorCode::kInvalidPath);
  EXPECT_EQ(normalize_path("/work/proj/app/C.kt", "/work/proj"), "app/C.kt");
}

TEST(Span, ParseAndFormat) {
  EXPECT_EQ(parse_span("12"), (Span{12, 12}));
  EXPECT_EQ(parse_span("10-14"), (Span{10, 14}));
  EXPECT_EQ(format_span({10, 14}), "10-14");
  EXPECT_EQ(code_of([] { parse_span("14-10"); }), ErrorCode::kInvalidSpan);
  EXPECT_EQ(code_of([] { parse_span("0"); }), ErrorCode::kInvalidSpan);
  const auto [path, span] = split_pointer("app/src/A.kt:10-14");
  EXPECT_EQ(path, "app/src/A.kt");
  EXPECT_EQ(span, (Span{10, 14}));
}

TEST(ValidateInstance, AcceptsWellFormedAndRejectsEmptyGold) {
  RawInstance ok = instance(Law::kLGPD, "app/A.kt", {1, 2}, {"7"});
  EXPECT_NO_THROW(validate_instance(ok, registry()));
  RawInstance bad = ok;
  bad.article_ids.clear();
  EXPECT_THROW(validate_instance(bad, registry()), Error);
}

TEST(ThemeAnchor, Examples) {
  EXPECT_EQ(theme_anchor(Theme::kSecurity, Law::kLGPD).id, "46");
  EXPECT_EQ(theme_anchor(Theme::kSecurity, Law::kPDPA).id, "24");
  EXPECT_EQ(theme_anchor(Theme::kConsent, Law::kPIPEDA).id, "4.3");
  for (Theme t : kAllThemes) {
    for (Law law : kAllLaws) EXPECT_TRUE(registry().at(law).contains(theme_anchor(t, law).id));
  }
}

TEST(CorpusStats, CountsFilesAndCoverage) {
  const std::vector<RawInstance> corpus = {
      instance(Law::kLGPD, "app/A.kt", {1, 2}, {"7"}),
      instance(Law::kLGPD, "app/A.kt", {5, 6}, {"46"}),
      instance(Law::kLGPD, "app/B.kt", {1, 1}, {"7"}),
  };
  const CorpusStats s = corpus_stats(corpus, registry());
  ASSERT_EQ(s.per_law.size(), 1u);
  EXPECT_EQ(s.per_law[0].files, 2u);
  EXPECT_EQ(s.per_law[0].instances, 3u);
  EXPECT_EQ(s.per_law[0].label_frequency.front().id, "7");
  EXPECT_EQ(s.per_law[0].label_frequency.front().count, 2u);
}

TEST(CorpusStats, CoverageMatrixShape) {
  const std::vector<RawInstance> corpus = {
      instance(Law::kLGPD, "app/A.kt", {1, 2}, {"7"}),
      instance(Law::kPDPA, "app/A.kt", {1, 2}, {"13"}),
  };
  const CorpusStats s = corpus_stats(corpus, registry());
  EXPECT_EQ(s.coverage.size(), 2u);
  EXPECT_EQ(s.repositories.size(), 1u);
  EXPECT_EQ(s.repositories[0], "demo");
}

TEST(CorpusStats, ThemeOverlapCountsSharedAnchors) {
  const std::vector<RawInstance> corpus = {
      instance(Law::kLGPD, "app/A.kt", {1, 2}, {"46"}),
      instance(Law::kPDPA, "app/A.kt", {1, 2}, {"24"}),
  };
  const CorpusStats s = corpus_stats(corpus, registry());
  EXPECT_EQ(s.theme_overlap.at({Law::kLGPD, Law::kPDPA}), 1u);
}

TEST(RepositoryName, StripsGitSuffix) {
  EXPECT_EQ(repository_name("https://x/y/Dash.git"), "Dash");
}

}  // namespace
}  // namespace regeval
