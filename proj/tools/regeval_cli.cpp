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


// regeval command-line entry point.

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regeval/composites.hpp"
#include "regeval/corpus.hpp"
#include "regeval/error.hpp"
#include "regeval/harness.hpp"
#include "regeval/ingest.hpp"
#include "regeval/io.hpp"
#include "regeval/report.hpp"
#include "regeval/shaping.hpp"
#include "regeval/synthetic.hpp"

namespace fs = std::filesystem;
using regeval::io::Json;

namespace {

struct Common {
  std::string jurisdictions;
  std::string law;
};

struct CompositeFlags {
  std::string config;
  std::optional<double> alpha, beta, gamma, delta, ridge, epsilon;
  std::string pooling;

  void add(CLI::App* cmd) {
    cmd->add_option("--config", config, "composite config JSON");
    cmd->add_option("--alpha", alpha, "SGS granularity penalty");
    cmd->add_option("--beta", beta, "CRGS cross-law penalty");
    cmd->add_option("--gamma", gamma, "task-gap penalty");
    cmd->add_option("--delta", delta, "OCS cross-law penalty");
    cmd->add_option("--ridge", ridge, "covariance ridge");
    cmd->add_option("--epsilon", epsilon, "numeric floor");
    cmd->add_option("--pooling", pooling, "per_law_task or across_laws");
  }

  regeval::CompositeConfig resolve() const {
    Json j = config.empty() ? Json::object() : regeval::io::read_json_file(config);
    if (alpha) j["alpha"] = *alpha;
    if (beta) j["beta"] = *beta;
    if (gamma) j["gamma"] = *gamma;
    if (delta) j["delta"] = *delta;
    if (ridge) j["ridge"] = *ridge;
    if (epsilon) j["epsilon"] = *epsilon;
    if (!pooling.empty()) j["pooling"] = pooling;
    return regeval::io::composite_config_from_json(j);
  }
};

regeval::JurisdictionRegistry load_registry(const Common& c) {
  if (c.jurisdictions.empty()) return regeval::JurisdictionRegistry::defaults();
  return regeval::io::registry_from_json(regeval::io::read_json_file(c.jurisdictions));
}

std::optional<regeval::Law> law_filter(const Common& c) {
  if (c.law.empty()) return std::nullopt;
  return regeval::parse_law(c.law);
}

Json common_settings(const Common& c, const regeval::JurisdictionRegistry& registry) {
  Json j = {{"law", c.law.empty() ? Json(nullptr) : Json(c.law)}};
  j["jurisdictions"] = regeval::io::registry_to_json(registry).at("jurisdictions");
  return j;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw regeval::Error(regeval::ErrorCode::kIoError, "cannot create '" + dir + "'");
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

std::vector<regeval::RawInstance> load_corpus(const std::string& path, const Common& c,
                                              const regeval::JurisdictionRegistry& registry) {
  auto corpus = regeval::io::dataset_from_json(regeval::io::read_json_file(path), registry,
                                               law_filter(c));
  if (const auto law = law_filter(c)) {
    std::erase_if(corpus, [&](const regeval::RawInstance& r) { return r.law != *law; });
  }
  return corpus;
}

regeval::GoldViews load_views(const std::string& dir, std::optional<regeval::Law> only) {
  regeval::GoldViews views;
  for (int task : {1, 2}) {
    const std::string path = join(dir, "task" + std::to_string(task) + ".json");
    if (!fs::exists(path)) continue;
    const Json doc = regeval::io::read_json_file(path);
    for (const auto& v : doc.at("views")) {
      if (task == 1) {
        auto records = regeval::io::task1_from_json(v);
        if (records.empty()) continue;
        const auto law = records.front().law;
        if (!only || *only == law) views.task1[law] = std::move(records);
      } else {
        auto records = regeval::io::task2_from_json(v);
        if (records.empty()) continue;
        const auto law = records.front().law;
        if (!only || *only == law) views.task2[law] = std::move(records);
      }
    }
  }
  if (views.task1.empty() && views.task2.empty()) {
    throw regeval::Error(regeval::ErrorCode::kEmptyCorpus, "no task views under '" + dir + "'");
  }
  return views;
}

void write_views(const std::string& dir, const regeval::GoldViews& views, const Json& settings) {
  Json v1 = Json::array(), v2 = Json::array();
  for (const auto& [law, records] : views.task1) v1.push_back(regeval::io::task1_to_json(law, records));
  for (const auto& [law, records] : views.task2) v2.push_back(regeval::io::task2_to_json(law, records));
  regeval::io::write_text_file(join(dir, "task1.json"),
                               regeval::io::dump({{"settings", settings}, {"views", v1}}));
  regeval::io::write_text_file(join(dir, "task2.json"),
                               regeval::io::dump({{"settings", settings}, {"views", v2}}));
}

Json stats_json(const regeval::CorpusStats& s) {
  Json per_law = Json::object();
  for (const auto& l : s.per_law) {
    Json freq = Json::array();
    for (const auto& c : l.label_frequency) freq.push_back({{"id", c.id}, {"count", c.count}});
    per_law[std::string(regeval::law_name(l.law))] = {{"instances", l.instances},
                                                      {"files", l.files},
                                                      {"modules", l.modules},
                                                      {"lines", l.lines},
                                                      {"snippets", l.snippets},
                                                      {"label_frequency", freq}};
  }
  Json coverage = Json::object();
  for (const auto& [law, repos] : s.coverage) {
    Json row = Json::object();
    for (const auto& [repo, n] : repos) row[repo] = n;
    coverage[std::string(regeval::law_name(law))] = row;
  }
  Json overlap = Json::object();
  for (const auto& [pair, n] : s.theme_overlap) {
    overlap[std::string(regeval::law_name(pair.first)) + "-" +
            std::string(regeval::law_name(pair.second))] = n;
  }
  return {{"per_law", per_law},
          {"repositories", s.repositories},
          {"coverage", coverage},
          {"theme_overlap", overlap}};
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (begin <= s.size()) {
    const std::size_t comma = s.find(',', begin);
    const std::string part = s.substr(begin, comma == std::string::npos ? std::string::npos : comma - begin);
    if (!part.empty()) out.push_back(part);
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return out;
}

// "name=profile" pairs
std::map<std::string, regeval::Profile> parse_profiles(const std::vector<std::string>& specs) {
  std::map<std::string, regeval::Profile> out;
  for (const auto& s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      out.emplace(s, regeval::Profile::parse(s));
    } else {
      out.emplace(s.substr(0, eq), regeval::Profile::parse(s.substr(eq + 1)));
    }
  }
  return out;
}

void print_error(const std::string& code, const std::string& message) {
  std::cerr << Json{{"error", code}, {"message", message}}.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regeval: regulation-aware evaluation of code compliance predictions"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--jurisdictions", common.jurisdictions, "jurisdictions.json");
  app.add_option("--law", common.law, "restrict to one law (LGPD, PDPA, PIPEDA)");

  // stats
  std::string stats_dataset, stats_out;
  auto* stats = app.add_subcommand("stats", "corpus statistics");
  stats->add_option("--dataset", stats_dataset, "dataset.json")->required();
  stats->add_option("--out", stats_out, "output JSON (stdout when omitted)");

  // shape
  std::string shape_dataset, shape_out;
  std::vector<std::string> shape_exclude;
  bool shape_no_default_excludes = false;
  auto* shape = app.add_subcommand("shape", "build task1.json / task2.json");
  shape->add_option("--dataset", shape_dataset, "dataset.json")->required();
  shape->add_option("--out-dir", shape_out, "output directory")->required();
  shape->add_option("--exclude", shape_exclude, "extra path exclusion pattern");
  shape->add_flag("--no-default-excludes", shape_no_default_excludes);

  // run
  std::string run_views, run_config, run_out, run_replay, run_transport = "profile", run_models;
  std::vector<std::string> run_profiles;
  auto* run = app.add_subcommand("run", "query models and log raw responses");
  run->add_option("--views", run_views, "directory holding task1.json / task2.json")->required();
  run->add_option("--config", run_config, "run_config.json");
  run->add_option("--models", run_models, "comma-separated model names");
  run->add_option("--transport", run_transport, "profile or replay")
      ->check(CLI::IsMember({"profile", "replay"}));
  run->add_option("--profile", run_profiles, "name=profile for the profile transport");
  run->add_option("--replay", run_replay, "raw_responses.jsonl to re-serve");
  run->add_option("--out-dir", run_out, "output directory")->required();

  // parse
  std::string parse_views, parse_responses, parse_out;
  auto* parse = app.add_subcommand("parse", "raw responses to prediction tables");
  parse->add_option("--views", parse_views, "directory holding task views")->required();
  parse->add_option("--responses", parse_responses, "raw_responses.jsonl")->required();
  parse->add_option("--out-dir", parse_out, "output directory")->required();

  // eval
  std::string eval_views, eval_preds, eval_out, eval_policy = "strict";
  int eval_task = 0;
  CompositeFlags eval_flags;
  auto* eval = app.add_subcommand("eval", "base metrics, coverage and composites");
  eval->add_option("--views", eval_views, "directory holding task views")->required();
  eval->add_option("--predictions", eval_preds, "directory holding predictions_task*.json")
      ->required();
  eval->add_option("--out-dir", eval_out, "output directory")->required();
  eval->add_option("--policy", eval_policy, "strict or relaxed")
      ->check(CLI::IsMember({"strict", "relaxed"}));
  eval->add_option("--task", eval_task, "1, 2, or 0 for both")->check(CLI::Range(0, 2));
  eval_flags.add(eval);

  // compose
  std::string compose_input, compose_out;
  CompositeFlags compose_flags;
  auto* compose = app.add_subcommand("compose", "composites from results.json or an RCS table");
  compose->add_option("--input", compose_input, "results.json or RCS fixture")->required();
  compose->add_option("--out-dir", compose_out, "output directory")->required();
  compose_flags.add(compose);

  // synth
  std::string synth_spec, synth_out;
  std::optional<std::uint64_t> synth_seed;
  std::size_t synth_instances = 60, synth_files = 20;
  std::vector<std::string> synth_profiles;
  auto* synth = app.add_subcommand("synth", "synthetic corpus and scripted predictions");
  synth->add_option("--spec", synth_spec, "synthetic_spec.json");
  synth->add_option("--seed", synth_seed, "override the spec seed");
  synth->add_option("--instances", synth_instances, "instances per law without a spec");
  synth->add_option("--files", synth_files, "files per law without a spec");
  synth->add_option("--profile", synth_profiles, "name=profile scripted models to emit");
  synth->add_option("--out-dir", synth_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("UsageError", e.what());
    std::cerr << app.help() << std::endl;
    return 2;
  }

  try {
    const auto registry = load_registry(common);
    Json settings = common_settings(common, registry);

    if (*stats) {
      const auto corpus = load_corpus(stats_dataset, common, registry);
      Json out = stats_json(regeval::corpus_stats(corpus, registry));
      settings["dataset"] = stats_dataset;
      out["settings"] = settings;
      if (stats_out.empty()) {
        std::cout << regeval::io::dump(out);
      } else {
        regeval::io::write_text_file(stats_out, regeval::io::dump(out));
      }
    } else if (*shape) {
      regeval::ShapingOptions options;
      if (shape_no_default_excludes) options.exclude_patterns.clear();
      for (const auto& p : shape_exclude) options.exclude_patterns.push_back(p);
      const auto corpus = load_corpus(shape_dataset, common, registry);
      const auto views = regeval::shape_all(corpus, registry, options);
      settings["exclude_patterns"] = options.exclude_patterns;
      ensure_dir(shape_out);
      write_views(shape_out, views, settings);
    } else if (*run) {
      const auto views = load_views(run_views, law_filter(common));
      regeval::RunConfig config = run_config.empty()
                                      ? regeval::RunConfig{}
                                      : regeval::io::run_config_from_json(
                                            regeval::io::read_json_file(run_config));
      const auto profiles = parse_profiles(run_profiles);
      if (!run_models.empty()) config.models = split_csv(run_models);
      std::unique_ptr<regeval::Transport> transport;
      if (run_transport == "replay") {
        if (run_replay.empty()) {
          throw regeval::Error(regeval::ErrorCode::kTransportConfigError, "--replay is required");
        }
        transport = std::make_unique<regeval::ReplayTransport>(
            regeval::io::responses_from_jsonl(regeval::io::read_text_file(run_replay)));
      } else {
        if (config.models.empty()) {
          for (const auto& [m, _] : profiles) config.models.push_back(m);
        }
        transport = std::make_unique<regeval::ProfileTransport>(profiles, views, registry);
      }
      ensure_dir(run_out);
      const auto result = regeval::execute_run(config, views, registry, *transport);
      regeval::io::write_text_file(join(run_out, "raw_responses.jsonl"),
                                   regeval::io::responses_to_jsonl(result.records));
      regeval::io::write_text_file(join(run_out, "run.log"), result.log);
      Json effective = regeval::io::run_config_to_json(config);
      effective["transport"] = run_transport;
      effective["overrides"] = config.overrides();
      regeval::io::write_text_file(join(run_out, "run_config.json"), regeval::io::dump(effective));
    } else if (*parse) {
      const auto views = load_views(parse_views, law_filter(common));
      const auto responses =
          regeval::io::responses_from_jsonl(regeval::io::read_text_file(parse_responses));
      const auto bound = regeval::bind_predictions(responses, views, registry);
      ensure_dir(parse_out);
      regeval::io::write_text_file(join(parse_out, "predictions_task1.json"),
                                   regeval::io::dump(regeval::io::predictions_task1_to_json(bound.task1)));
      regeval::io::write_text_file(join(parse_out, "predictions_task2.json"),
                                   regeval::io::dump(regeval::io::predictions_task2_to_json(bound.task2)));
      Json diag = Json::array();
      for (const auto& [key, s] : bound.stats) {
        Json pc = Json::object(), gc = Json::object();
        for (const auto& [k, n] : s.predicted_cardinality) pc[std::to_string(k)] = n;
        for (const auto& [k, n] : s.gold_cardinality) gc[std::to_string(k)] = n;
        diag.push_back({{"model", std::get<0>(key)},
                        {"law", std::string(regeval::law_name(std::get<1>(key)))},
                        {"task", std::get<2>(key)},
                        {"gold", s.gold},
                        {"responses", s.responses},
                        {"bound", s.bound},
                        {"coverage", s.coverage()},
                        {"exhausted", s.exhausted},
                        {"empty_outputs", s.empty_outputs},
                        {"out_of_universe", s.out_of_universe},
                        {"unrecognized", s.unrecognized},
                        {"duplicates", s.duplicates},
                        {"orphans", s.orphans},
                        {"predicted_cardinality", pc},
                        {"gold_cardinality", gc}});
      }
      regeval::io::write_text_file(join(parse_out, "parse_diagnostics.json"),
                                   regeval::io::dump({{"settings", settings}, {"bindings", diag}}));
    } else if (*eval) {
      auto views = load_views(eval_views, law_filter(common));
      if (eval_task == 1) views.task2.clear();
      if (eval_task == 2) views.task1.clear();
      if (!fs::exists(join(eval_preds, "predictions_task1.json")) &&
          !fs::exists(join(eval_preds, "predictions_task2.json"))) {
        throw regeval::Error(regeval::ErrorCode::kIoError,
                             "no predictions_task1.json or predictions_task2.json in '" +
                                 eval_preds + "'");
      }
      const auto read_table = [&](const char* name) {
        const std::string path = join(eval_preds, name);
        return fs::exists(path) ? regeval::io::read_json_file(path) : Json::array();
      };
      const auto t1 = eval_task == 2 ? regeval::io::Task1Table{}
                                     : regeval::io::predictions_task1_from_json(
                                           read_table("predictions_task1.json"));
      const auto t2 = eval_task == 1 ? regeval::io::Task2Table{}
                                     : regeval::io::predictions_task2_from_json(
                                           read_table("predictions_task2.json"));
      const auto cfg = eval_flags.resolve();
      const auto results = regeval::evaluate_all(views, registry, t1, t2,
                                                 regeval::parse_policy(eval_policy));
      const auto composites = regeval::compose(regeval::composite_inputs(results), cfg);
      settings["task"] = eval_task;
      settings["policy"] = eval_policy;
      const Json doc = regeval::results_to_json(results, composites, settings);
      ensure_dir(eval_out);
      regeval::io::write_text_file(join(eval_out, "results.json"), regeval::io::dump(doc));
      regeval::io::write_text_file(join(eval_out, "report.txt"), regeval::render_report(doc));
      regeval::io::write_text_file(join(eval_out, "plot_data_task1.csv"), regeval::plot_csv_task1(doc));
      regeval::io::write_text_file(join(eval_out, "plot_data_task2.csv"), regeval::plot_csv_task2(doc));
    } else if (*compose) {
      const Json input = regeval::io::read_json_file(compose_input);
      const auto cfg = compose_flags.resolve();
      settings["input"] = compose_input;
      Json doc;
      bool has_base = false;
      if (input.contains("models") && input.at("models").is_object()) {
        for (const auto& [_, b] : input.at("models").items()) {
          has_base = has_base || b.contains("task1") || b.contains("task2");
        }
      }
      if (has_base) {
        const auto report = regeval::compose(regeval::composite_inputs_from_results(input), cfg);
        doc = regeval::composites_to_json(report, settings);
      } else {
        const auto report =
            regeval::compose_from_rcs(regeval::io::rcs_fixture_from_json(input), cfg);
        doc = regeval::composites_to_json(report, settings);
      }
      ensure_dir(compose_out);
      regeval::io::write_text_file(join(compose_out, "composites.json"), regeval::io::dump(doc));
      regeval::io::write_text_file(join(compose_out, "report.txt"), regeval::render_report(doc));
    } else if (*synth) {
      regeval::SyntheticSpec spec;
      if (!synth_spec.empty()) {
        spec = regeval::io::synthetic_spec_from_json(regeval::io::read_json_file(synth_spec));
      } else {
        for (auto law : regeval::kAllLaws) {
          if (const auto only = law_filter(common); only && *only != law) continue;
          spec.laws.push_back({law, synth_files, synth_instances});
        }
      }
      if (synth_seed) spec.seed = *synth_seed;
      const auto corpus = regeval::generate_corpus(spec, registry);
      ensure_dir(synth_out);
      regeval::io::write_text_file(join(synth_out, "dataset.json"),
                                   regeval::io::dump(regeval::io::dataset_to_json(corpus)));
      regeval::io::write_text_file(join(synth_out, "synthetic_spec.json"),
                                   regeval::io::dump(regeval::io::synthetic_spec_to_json(spec)));
      if (!synth_profiles.empty()) {
        const auto views = regeval::shape_all(corpus, registry);
        regeval::io::Task1Table t1;
        regeval::io::Task2Table t2;
        for (const auto& [name, profile] : parse_profiles(synth_profiles)) {
          auto p = regeval::scripted_model(profile, views, registry);
          t1[name] = std::move(p.task1);
          t2[name] = std::move(p.task2);
        }
        regeval::io::write_text_file(join(synth_out, "predictions_task1.json"),
                                     regeval::io::dump(regeval::io::predictions_task1_to_json(t1)));
        regeval::io::write_text_file(join(synth_out, "predictions_task2.json"),
                                     regeval::io::dump(regeval::io::predictions_task2_to_json(t2)));
      }
    }
  } catch (const regeval::Error& e) {
    print_error(std::string(regeval::error_code_name(e.code())), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error("InternalError", e.what());
    return 1;
  }
  return 0;
}
