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


#include "regeval/io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "regeval/error.hpp"

namespace regeval::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kInvalidRecord, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) bad(std::string("expected an object with field '") + name + "'");
  const auto it = j.find(name);
  if (it == j.end()) bad(std::string("missing field '") + name + "'");
  return *it;
}

std::string string_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_string()) bad(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

std::string optional_string(const Json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_string()) bad(std::string("field '") + name + "' must be a string");
  return it->get<std::string>();
}

std::vector<std::string> string_list(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_array()) bad(std::string("field '") + name + "' must be an array");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) bad(std::string("field '") + name + "' must hold strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

double number_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number()) bad(std::string("field '") + name + "' must be a number");
  return v.get<double>();
}

void reject_unknown(const Json& j, std::initializer_list<const char*> known, const char* what) {
  for (const auto& [k, _] : j.items()) {
    bool ok = false;
    for (const char* name : known) ok = ok || k == name;
    if (!ok) throw Error(ErrorCode::kInvalidConfig, std::string(what) + ": unknown field '" + k + "'");
  }
}

Json excerpt_json(const Excerpt& e) { return {{"span", format_span(e.span)}, {"text", e.text}}; }

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for '" + path + "'");
}

Json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    bad("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string dump(const Json& json) { return json.dump(2) + "\n"; }

std::vector<RawInstance> dataset_from_json(const Json& json, const JurisdictionRegistry& registry,
                                           std::optional<Law> default_law) {
  if (!json.is_array()) bad("dataset must be a JSON array");
  std::vector<RawInstance> out;
  out.reserve(json.size());
  for (std::size_t n = 0; n < json.size(); ++n) {
    const Json& j = json[n];
    const std::string where = "dataset record " + std::to_string(n);
    try {
      RawInstance inst;
      const std::string law_text = optional_string(j, "law");
      if (!law_text.empty()) {
        inst.law = parse_law(law_text);
      } else if (default_law) {
        inst.law = *default_law;
      } else {
        bad("no 'law' field and no default law");
      }
      const Jurisdiction& law = registry.at(inst.law);
      Evidence& e = inst.evidence;
      e.app_name = string_field(j, "app_name");
      e.repo_url = string_field(j, "repo_url");
      e.commit_id = string_field(j, "commit_id");
      std::tie(e.file_path, e.span) = split_pointer(string_field(j, "file_path"));
      e.snippet = string_field(j, "snippet");
      inst.note = optional_string(j, "note");

      const Json& ids = field(j, "article_id");
      std::vector<Json> items;
      if (ids.is_array()) {
        items.assign(ids.begin(), ids.end());
      } else {
        items.push_back(ids);
      }
      std::vector<std::string> canonical;
      for (const auto& item : items) {
        std::string raw;
        if (item.is_string()) {
          raw = item.get<std::string>();
        } else if (item.is_number_integer()) {
          raw = std::to_string(item.get<long long>());
        } else {
          bad("article_id entries must be strings or integers");
        }
        canonical.push_back(canonicalize_article(raw, law).id);
      }
      inst.article_ids = law.sorted_ids(std::move(canonical));
      validate_instance(inst, registry);
      out.push_back(std::move(inst));
    } catch (const Error& err) {
      throw Error(err.code(), where + ": " + err.what());
    }
  }
  return out;
}

Json dataset_to_json(const std::vector<RawInstance>& corpus) {
  Json out = Json::array();
  for (const auto& inst : corpus) {
    const Evidence& e = inst.evidence;
    out.push_back({{"law", std::string(law_name(inst.law))},
                   {"app_name", e.app_name},
                   {"repo_url", e.repo_url},
                   {"commit_id", e.commit_id},
                   {"article_id", inst.article_ids},
                   {"file_path", e.file_path + ":" + format_span(e.span)},
                   {"snippet", e.snippet},
                   {"note", inst.note}});
  }
  return out;
}

JurisdictionRegistry registry_from_json(const Json& json) {
  const Json& list = field(json, "jurisdictions");
  if (!list.is_array()) bad("'jurisdictions' must be an array");
  const JurisdictionRegistry defaults = JurisdictionRegistry::defaults();
  std::map<Law, Jurisdiction> laws;
  for (const auto& j : list) {
    const Law code = parse_law(string_field(j, "code"));
    const Jurisdiction& d = defaults.at(code);
    std::vector<std::string> prefixes =
        j.contains("prefixes") ? string_list(j, "prefixes") : default_citation_prefixes();
    const auto components = j.contains("id_components")
                                ? static_cast<std::size_t>(number_field(j, "id_components"))
                                : d.id_components();
    const bool bare = j.contains("bare_ids") ? field(j, "bare_ids").get<bool>() : d.bare_ids();
    const std::string style =
        j.contains("citation_style") ? string_field(j, "citation_style") : d.citation_style();
    const std::string pattern =
        j.contains("id_pattern") ? string_field(j, "id_pattern") : d.id_pattern();
    try {
      laws.insert_or_assign(code, Jurisdiction(code, style, string_list(j, "universe"),
                                               std::move(prefixes), pattern, components, bare));
    } catch (const Error& e) {
      throw Error(ErrorCode::kInvalidConfig, std::string(law_name(code)) + ": " + e.what());
    }
  }
  std::vector<Jurisdiction> all;
  for (Law law : kAllLaws) {
    const auto it = laws.find(law);
    all.push_back(it != laws.end() ? it->second : defaults.at(law));
  }
  return JurisdictionRegistry(std::move(all));
}

Json registry_to_json(const JurisdictionRegistry& registry) {
  Json list = Json::array();
  for (const auto& j : registry.all()) {
    list.push_back({{"code", std::string(law_name(j.code()))},
                    {"citation_style", j.citation_style()},
                    {"universe", j.universe()},
                    {"prefixes", j.prefixes()},
                    {"id_pattern", j.id_pattern()},
                    {"id_components", j.id_components()},
                    {"bare_ids", j.bare_ids()}});
  }
  return {{"jurisdictions", list}};
}

Json task1_to_json(Law law, const std::vector<Task1Record>& records) {
  Json list = Json::array();
  for (const auto& r : records) {
    Json lines = Json::array();
    for (const auto& l : r.lines) {
      Json ex = Json::array();
      for (const auto& e : l.excerpts) ex.push_back(excerpt_json(e));
      lines.push_back({{"span", format_span(l.span)}, {"gold", l.gold}, {"excerpts", ex}});
    }
    list.push_back({{"repo_url", r.identity.repo_url},
                    {"app_name", r.identity.app_name},
                    {"commit_id", r.identity.commit_id},
                    {"file_path", r.identity.file_path},
                    {"sections",
                     {{"file", {{"gold", r.file_gold}}},
                      {"module", {{"name", r.module}, {"gold", r.module_gold}}},
                      {"line", lines}}}});
  }
  return {{"law", std::string(law_name(law))}, {"task", 1}, {"records", list}};
}

std::vector<Task1Record> task1_from_json(const Json& json) {
  const Law law = parse_law(string_field(json, "law"));
  std::vector<Task1Record> out;
  for (const auto& j : field(json, "records")) {
    Task1Record r;
    r.law = law;
    r.identity = {string_field(j, "repo_url"), string_field(j, "app_name"),
                  string_field(j, "commit_id"), string_field(j, "file_path")};
    const Json& s = field(j, "sections");
    r.file_gold = string_list(field(s, "file"), "gold");
    r.module = string_field(field(s, "module"), "name");
    r.module_gold = string_list(field(s, "module"), "gold");
    for (const auto& l : field(s, "line")) {
      LineEntry e;
      e.span = parse_span(string_field(l, "span"));
      e.gold = string_list(l, "gold");
      for (const auto& x : field(l, "excerpts")) {
        e.excerpts.push_back({parse_span(string_field(x, "span")), string_field(x, "text")});
      }
      r.lines.push_back(std::move(e));
    }
    out.push_back(std::move(r));
  }
  return out;
}

Json task2_to_json(Law law, const std::vector<Task2Record>& records) {
  Json list = Json::array();
  for (const auto& r : records) {
    list.push_back({{"file_path", r.pointer.file_path},
                    {"span", format_span(r.pointer.span)},
                    {"commit_id", r.pointer.commit_id},
                    {"repo_url", r.repo_url},
                    {"app_name", r.app_name},
                    {"snippet", r.snippet},
                    {"gold", r.gold}});
  }
  return {{"law", std::string(law_name(law))}, {"task", 2}, {"records", list}};
}

std::vector<Task2Record> task2_from_json(const Json& json) {
  const Law law = parse_law(string_field(json, "law"));
  std::vector<Task2Record> out;
  for (const auto& j : field(json, "records")) {
    Task2Record r;
    r.law = law;
    r.pointer = pointer_from_json(j);
    r.repo_url = string_field(j, "repo_url");
    r.app_name = string_field(j, "app_name");
    r.snippet = string_field(j, "snippet");
    r.gold = string_list(j, "gold");
    out.push_back(std::move(r));
  }
  return out;
}

Json key_to_json(const Task1Key& key) {
  Json j = {{"repo_url", key.identity.repo_url},
            {"app_name", key.identity.app_name},
            {"commit_id", key.identity.commit_id},
            {"file_path", key.identity.file_path},
            {"granularity", std::string(granularity_name(key.granularity))}};
  if (key.granularity == Granularity::kModule) j["module"] = key.module;
  if (key.granularity == Granularity::kLine) j["span"] = format_span(key.span);
  return j;
}

Task1Key key_from_json(const Json& j) {
  Task1Key key;
  key.identity = {string_field(j, "repo_url"), string_field(j, "app_name"),
                  string_field(j, "commit_id"), normalize_path(string_field(j, "file_path"))};
  key.granularity = parse_granularity(string_field(j, "granularity"));
  if (key.granularity == Granularity::kModule) key.module = string_field(j, "module");
  if (key.granularity == Granularity::kLine) key.span = parse_span(string_field(j, "span"));
  return key;
}

Json pointer_to_json(const Task2Pointer& p) {
  return {{"file_path", p.file_path}, {"span", format_span(p.span)}, {"commit_id", p.commit_id}};
}

Task2Pointer pointer_from_json(const Json& j) {
  return {normalize_path(string_field(j, "file_path")), parse_span(string_field(j, "span")),
          string_field(j, "commit_id")};
}

Json predictions_task1_to_json(const Task1Table& table) {
  Json out = Json::array();
  for (const auto& [model, laws] : table) {
    for (const auto& [law, preds] : laws) {
      for (const auto& p : preds) {
        Json j = key_to_json(p.key);
        j["model"] = model;
        j["law"] = std::string(law_name(law));
        j["ranking"] = p.ranking;
        out.push_back(std::move(j));
      }
    }
  }
  return out;
}

Task1Table predictions_task1_from_json(const Json& json) {
  if (!json.is_array()) bad("predictions must be a JSON array");
  Task1Table out;
  for (const auto& j : json) {
    out[string_field(j, "model")][parse_law(string_field(j, "law"))].push_back(
        {key_from_json(j), string_list(j, "ranking")});
  }
  return out;
}

Json predictions_task2_to_json(const Task2Table& table) {
  Json out = Json::array();
  for (const auto& [model, laws] : table) {
    for (const auto& [law, preds] : laws) {
      for (const auto& p : preds) {
        Json j = pointer_to_json(p.pointer);
        j["model"] = model;
        j["law"] = std::string(law_name(law));
        j["labels"] = p.labels;
        out.push_back(std::move(j));
      }
    }
  }
  return out;
}

Task2Table predictions_task2_from_json(const Json& json) {
  if (!json.is_array()) bad("predictions must be a JSON array");
  Task2Table out;
  for (const auto& j : json) {
    out[string_field(j, "model")][parse_law(string_field(j, "law"))].push_back(
        {pointer_from_json(j), string_list(j, "labels")});
  }
  return out;
}

std::string responses_to_jsonl(const std::vector<ResponseRecord>& records,
                               bool include_timestamps) {
  std::string out;
  for (const auto& r : records) {
    Json j = {{"model", r.model},
              {"task", r.task},
              {"law", std::string(law_name(r.law))},
              {"text", r.text},
              {"status", std::string(status_name(r.status))},
              {"attempts", r.attempts}};
    if (r.task == 1) {
      j["key"] = key_to_json(r.key);
    } else {
      j["pointer"] = pointer_to_json(r.pointer);
    }
    if (!r.last_error.empty()) j["last_error"] = r.last_error;
    if (include_timestamps) {
      j["requested_at_ms"] = r.requested_at_ms;
      j["completed_at_ms"] = r.completed_at_ms;
    }
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<ResponseRecord> responses_from_jsonl(const std::string& text) {
  std::vector<ResponseRecord> out;
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const Json j = Json::parse(line);
      ResponseRecord r;
      r.model = string_field(j, "model");
      r.task = static_cast<int>(number_field(j, "task"));
      r.law = parse_law(string_field(j, "law"));
      if (r.task == 1) {
        r.key = key_from_json(field(j, "key"));
      } else if (r.task == 2) {
        r.pointer = pointer_from_json(field(j, "pointer"));
      } else {
        bad("task must be 1 or 2");
      }
      r.text = string_field(j, "text");
      r.status = j.contains("status") ? parse_status(string_field(j, "status"))
                                      : ResponseStatus::kOk;
      r.attempts = j.contains("attempts") ? static_cast<int>(number_field(j, "attempts")) : 1;
      r.last_error = optional_string(j, "last_error");
      if (j.contains("requested_at_ms")) r.requested_at_ms = field(j, "requested_at_ms").get<std::int64_t>();
      if (j.contains("completed_at_ms")) r.completed_at_ms = field(j, "completed_at_ms").get<std::int64_t>();
      out.push_back(std::move(r));
    } catch (const Json::exception& e) {
      bad("raw responses line " + std::to_string(n) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), "raw responses line " + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

RunConfig run_config_from_json(const Json& j) {
  reject_unknown(j,
                 {"temperature", "max_tokens", "timeout_s", "retries", "concurrency", "models",
                  "backoff_s", "context_lines", "monitor_interval_s", "tasks"},
                 "run config");
  RunConfig c;
  const auto seconds = [](double s) {
    return std::chrono::milliseconds(static_cast<long long>(std::llround(s * 1000.0)));
  };
  try {
    if (j.contains("temperature")) c.temperature = j.at("temperature").get<double>();
    if (j.contains("max_tokens")) c.max_tokens = j.at("max_tokens").get<int>();
    if (j.contains("timeout_s")) c.timeout = seconds(j.at("timeout_s").get<double>());
    if (j.contains("retries")) c.retries = j.at("retries").get<int>();
    if (j.contains("concurrency")) c.concurrency = j.at("concurrency").get<std::size_t>();
    if (j.contains("models")) c.models = j.at("models").get<std::vector<std::string>>();
    if (j.contains("backoff_s")) c.backoff = seconds(j.at("backoff_s").get<double>());
    if (j.contains("context_lines")) c.context_lines = j.at("context_lines").get<std::size_t>();
    if (j.contains("monitor_interval_s")) {
      c.monitor_interval = seconds(j.at("monitor_interval_s").get<double>());
    }
    if (j.contains("tasks")) c.tasks = j.at("tasks").get<std::vector<int>>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("run config: ") + e.what());
  }
  return c;
}

Json run_config_to_json(const RunConfig& c) {
  return {{"temperature", c.temperature},
          {"max_tokens", c.max_tokens},
          {"timeout_s", static_cast<double>(c.timeout.count()) / 1000.0},
          {"retries", c.retries},
          {"concurrency", c.effective_concurrency()},
          {"models", c.models},
          {"backoff_s", static_cast<double>(c.backoff.count()) / 1000.0},
          {"context_lines", c.context_lines},
          {"monitor_interval_s", static_cast<double>(c.monitor_interval.count()) / 1000.0},
          {"tasks", c.tasks}};
}

CompositeConfig composite_config_from_json(const Json& j) {
  reject_unknown(j, {"alpha", "beta", "gamma", "delta", "ridge", "epsilon", "pooling"},
                 "composite config");
  CompositeConfig c;
  try {
    if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
    if (j.contains("beta")) c.beta = j.at("beta").get<double>();
    if (j.contains("gamma")) c.gamma = j.at("gamma").get<double>();
    if (j.contains("delta")) c.delta = j.at("delta").get<double>();
    if (j.contains("ridge")) c.ridge = j.at("ridge").get<double>();
    if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
    if (j.contains("pooling")) {
      const auto p = j.at("pooling").get<std::string>();
      if (p == "per_law_task") {
        c.pooling = CovariancePooling::kPerLawTask;
      } else if (p == "across_laws") {
        c.pooling = CovariancePooling::kAcrossLaws;
      } else {
        throw Error(ErrorCode::kInvalidConfig, "pooling must be per_law_task or across_laws");
      }
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("composite config: ") + e.what());
  }
  c.validate();
  return c;
}

Json composite_config_to_json(const CompositeConfig& c) {
  return {{"alpha", c.alpha},
          {"beta", c.beta},
          {"gamma", c.gamma},
          {"delta", c.delta},
          {"ridge", c.ridge},
          {"epsilon", c.epsilon},
          {"pooling", c.pooling == CovariancePooling::kPerLawTask ? "per_law_task" : "across_laws"}};
}

SyntheticSpec synthetic_spec_from_json(const Json& j) {
  reject_unknown(j,
                 {"seed", "laws", "repositories", "label_decay", "max_labels_per_instance",
                  "max_labels_per_file", "overlap_rate", "duplicate_rate"},
                 "synthetic spec");
  SyntheticSpec s;
  try {
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("repositories")) s.repositories = j.at("repositories").get<std::size_t>();
    if (j.contains("label_decay")) s.label_decay = j.at("label_decay").get<double>();
    if (j.contains("max_labels_per_instance")) {
      s.max_labels_per_instance = j.at("max_labels_per_instance").get<std::size_t>();
    }
    if (j.contains("max_labels_per_file")) {
      s.max_labels_per_file = j.at("max_labels_per_file").get<std::size_t>();
    }
    if (j.contains("overlap_rate")) s.overlap_rate = j.at("overlap_rate").get<double>();
    if (j.contains("duplicate_rate")) s.duplicate_rate = j.at("duplicate_rate").get<double>();
    if (j.contains("laws")) {
      for (const auto& l : j.at("laws")) {
        s.laws.push_back({parse_law(l.at("law").get<std::string>()),
                          l.at("files").get<std::size_t>(), l.at("instances").get<std::size_t>()});
      }
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidSpec, std::string("synthetic spec: ") + e.what());
  }
  return s;
}

Json synthetic_spec_to_json(const SyntheticSpec& s) {
  Json laws = Json::array();
  for (const auto& l : s.laws) {
    laws.push_back({{"law", std::string(law_name(l.law))},
                    {"files", l.files},
                    {"instances", l.instances}});
  }
  return {{"seed", s.seed},
          {"laws", laws},
          {"repositories", s.repositories},
          {"label_decay", s.label_decay},
          {"max_labels_per_instance", s.max_labels_per_instance},
          {"max_labels_per_file", s.max_labels_per_file},
          {"overlap_rate", s.overlap_rate},
          {"duplicate_rate", s.duplicate_rate}};
}

std::map<std::string, std::map<Law, LawTaskScores>> rcs_fixture_from_json(const Json& json) {
  std::map<std::string, std::map<Law, LawTaskScores>> out;
  const Json& models = field(json, "models");
  if (!models.is_object()) bad("'models' must be an object");
  for (const auto& [model, laws] : models.items()) {
    for (const auto& [law, scores] : laws.items()) {
      LawTaskScores s;
      if (scores.contains("task1")) s.task1 = number_field(scores, "task1");
      if (scores.contains("task2")) s.task2 = number_field(scores, "task2");
      out[model][parse_law(law)] = s;
    }
  }
  return out;
}

}  // namespace regeval::io
