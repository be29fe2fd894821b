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


// JSON file formats. Objects are emitted with sorted keys so identical
// content always serializes to identical bytes.

#ifndef REGEVAL_IO_HPP_
#define REGEVAL_IO_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "regeval/composites.hpp"
#include "regeval/corpus.hpp"
#include "regeval/harness.hpp"
#include "regeval/multilabel.hpp"
#include "regeval/responses.hpp"
#include "regeval/retrieval.hpp"
#include "regeval/shaping.hpp"
#include "regeval/synthetic.hpp"

namespace regeval::io {

using Json = nlohmann::json;

/// Throws kIoError.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
/// Throws kIoError or kInvalidRecord on malformed JSON.
Json read_json_file(const std::string& path);
/// Two-space indent, trailing newline.
std::string dump(const Json& json);

// dataset.json: array of {app_name, repo_url, commit_id, article_id,
// file_path "path:start-end", snippet, note[, law]}. article_id is a string,
// an integer or a list of those. A record without "law" takes
// `default_law`; with neither, kInvalidRecord.
std::vector<RawInstance> dataset_from_json(const Json& json, const JurisdictionRegistry& registry,
                                           std::optional<Law> default_law = std::nullopt);
Json dataset_to_json(const std::vector<RawInstance>& corpus);

// jurisdictions.json: {"jurisdictions": [{code, citation_style, universe,
// prefixes?, id_pattern, id_components, bare_ids}]}. Laws not listed keep
// their defaults.
JurisdictionRegistry registry_from_json(const Json& json);
Json registry_to_json(const JurisdictionRegistry& registry);

Json task1_to_json(Law law, const std::vector<Task1Record>& records);
std::vector<Task1Record> task1_from_json(const Json& json);
Json task2_to_json(Law law, const std::vector<Task2Record>& records);
std::vector<Task2Record> task2_from_json(const Json& json);

Json key_to_json(const Task1Key& key);
Task1Key key_from_json(const Json& json);
Json pointer_to_json(const Task2Pointer& pointer);
Task2Pointer pointer_from_json(const Json& json);

/// model -> law -> predictions
using Task1Table = std::map<std::string, std::map<Law, std::vector<RankedPrediction>>>;
using Task2Table = std::map<std::string, std::map<Law, std::vector<SetPrediction>>>;

// predictions_task1.json: array of {model, law, key fields, granularity,
// module?, span?, ranking}. predictions_task2.json: array of {model, law,
// file_path, span, commit_id, labels}.
Json predictions_task1_to_json(const Task1Table& table);
Task1Table predictions_task1_from_json(const Json& json);
Json predictions_task2_to_json(const Task2Table& table);
Task2Table predictions_task2_from_json(const Json& json);

/// One JSON object per line. Without timestamps the output depends only on
/// the run's content.
std::string responses_to_jsonl(const std::vector<ResponseRecord>& records,
                               bool include_timestamps = true);
std::vector<ResponseRecord> responses_from_jsonl(const std::string& text);

/// Missing fields keep their defaults; unknown fields are rejected.
RunConfig run_config_from_json(const Json& json);
Json run_config_to_json(const RunConfig& config);

CompositeConfig composite_config_from_json(const Json& json);
Json composite_config_to_json(const CompositeConfig& config);

SyntheticSpec synthetic_spec_from_json(const Json& json);
Json synthetic_spec_to_json(const SyntheticSpec& spec);

/// {"models": {model: {law: {"task1": x, "task2": y}}}}
std::map<std::string, std::map<Law, LawTaskScores>> rcs_fixture_from_json(const Json& json);

}  // namespace regeval::io

#endif  // REGEVAL_IO_HPP_
