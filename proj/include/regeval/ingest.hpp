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


// Extraction of native article identifiers from free model output, and the
// join of parsed responses onto the gold views.

#ifndef REGEVAL_INGEST_HPP_
#define REGEVAL_INGEST_HPP_

#include <map>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "regeval/corpus.hpp"
#include "regeval/multilabel.hpp"
#include "regeval/responses.hpp"
#include "regeval/retrieval.hpp"
#include "regeval/shaping.hpp"

namespace regeval {

enum class ParseMode { kRanked, kSet };

struct ParseDiagnostics {
  std::size_t candidates = 0;
  std::vector<std::string> out_of_universe;  // canonical forms, document order
  std::vector<std::string> unrecognized;     // raw tokens
  std::size_t duplicates = 0;
  bool empty = false;  // nothing survived
};

struct ParsedPrediction {
  /// First-occurrence order, duplicate-free. In SET mode this is also the
  /// output order used for the prediction-first label ranking.
  std::vector<std::string> ids;
  ParseDiagnostics diagnostics;

  /// SET view: ids in universe order.
  std::vector<std::string> as_set(const Jurisdiction& law) const {
    return law.sorted_ids(ids);
  }
};

/// Never throws on model text. A number counts as a candidate when it
/// follows a citation prefix ("Art.", "s.", "§", ...), continues a list
/// started by one, or stands where a bare list is expected (start of text or
/// line, after '[', ':' or a quote). Line-start enumerators such as "1." are
/// skipped. Multi-component tokens ("4.3") are candidates on their own for
/// laws whose grammar allows bare ids.
ParsedPrediction parse_prediction_text(std::string_view raw, const Jurisdiction& law,
                                       ParseMode mode);

/// Renders ids in citation style joined by ", "; parsing the result gives
/// the ids back.
std::string render_prediction(const std::vector<std::string>& ids, const Jurisdiction& law);

struct BindingStats {
  std::size_t gold = 0;
  std::size_t responses = 0;
  std::size_t bound = 0;
  std::size_t exhausted = 0;
  std::size_t empty_outputs = 0;
  std::size_t out_of_universe = 0;
  std::size_t unrecognized = 0;
  std::size_t duplicates = 0;
  /// OrphanPrediction incidents: responses whose key/pointer is not a gold one.
  std::vector<std::string> orphans;
  /// label count -> number of bound predictions / gold entries
  std::map<std::size_t, std::size_t> predicted_cardinality;
  std::map<std::size_t, std::size_t> gold_cardinality;

  double coverage() const {
    return gold == 0 ? 0.0 : static_cast<double>(bound) / static_cast<double>(gold);
  }
};

/// (model, law, task)
using BindingKey = std::tuple<std::string, Law, int>;

struct BoundPredictions {
  std::map<std::string, std::map<Law, std::vector<RankedPrediction>>> task1;
  std::map<std::string, std::map<Law, std::vector<SetPrediction>>> task2;
  std::map<BindingKey, BindingStats> stats;
};

/// Task 1 responses whose key is not a gold key are reported as orphans but
/// kept, so the relaxed policy can still fall back on them. Task 2 orphans
/// are dropped. Exhausted responses bind as empty predictions.
BoundPredictions bind_predictions(const std::vector<ResponseRecord>& responses,
                                  const GoldViews& gold,
                                  const JurisdictionRegistry& registry);

}  // namespace regeval

#endif  // REGEVAL_INGEST_HPP_
