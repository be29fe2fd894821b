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


#include "regeval/report.hpp"

#include <cstdio>
#include <set>
#include <sstream>

#include "regeval/error.hpp"

namespace regeval {

using io::Json;

EvaluationResults evaluate_all(const GoldViews& gold, const JurisdictionRegistry& registry,
                               const io::Task1Table& task1, const io::Task2Table& task2,
                               MatchPolicy policy, Execution execution) {
  EvaluationResults out;
  out.policy = policy;
  std::set<std::string> models;
  for (const auto& [m, _] : task1) models.insert(m);
  for (const auto& [m, _] : task2) models.insert(m);

  static const std::vector<RankedPrediction> kNoRanked;
  static const std::vector<SetPrediction> kNoSets;
  for (const auto& model : models) {
    const auto t1 = task1.find(model);
    const auto t2 = task2.find(model);
    for (const auto& [law, records] : gold.task1) {
      const std::vector<RankedPrediction>* preds = &kNoRanked;
      if (t1 != task1.end()) {
        if (const auto it = t1->second.find(law); it != t1->second.end()) preds = &it->second;
      }
      const Jurisdiction& j = registry.at(law);
      Task1Result r;
      const Task1Evaluation strict = evaluate_task1(records, j, *preds, MatchPolicy::kStrict, execution);
      const Task1Evaluation relaxed = evaluate_task1(records, j, *preds, MatchPolicy::kRelaxed, execution);
      r.strict = strict.reports;
      r.relaxed = relaxed.reports;
      r.scored = policy == MatchPolicy::kStrict ? strict : relaxed;
      out.task1[model][law] = std::move(r);
    }
    for (const auto& [law, records] : gold.task2) {
      const std::vector<SetPrediction>* preds = &kNoSets;
      if (t2 != task2.end()) {
        if (const auto it = t2->second.find(law); it != t2->second.end()) preds = &it->second;
      }
      out.task2[model][law] = evaluate_task2(records, registry.at(law), *preds, {}, execution);
    }
  }
  return out;
}

CompositeInputs composite_inputs(const EvaluationResults& results) {
  CompositeInputs in;
  for (const auto& [model, laws] : results.task1) {
    for (const auto& [law, r] : laws) in[model][law].task1_levels = r.scored.levels;
  }
  for (const auto& [model, laws] : results.task2) {
    for (const auto& [law, e] : laws) in[model][law].task2 = e.oriented;
  }
  return in;
}

namespace {

Json metric_object(const MetricVector& v, const std::array<std::string_view, kMetricCount>& names) {
  Json j = Json::object();
  for (std::size_t k = 0; k < kMetricCount; ++k) j[std::string(names[k])] = v[k];
  return j;
}

MetricVector metric_vector(const Json& j, const std::array<std::string_view, kMetricCount>& names) {
  MetricVector v{};
  for (std::size_t k = 0; k < kMetricCount; ++k) {
    const std::string name(names[k]);
    if (!j.contains(name) || !j.at(name).is_number()) {
      throw Error(ErrorCode::kInvalidRecord, "results: missing metric '" + name + "'");
    }
    v[k] = j.at(name).get<double>();
  }
  return v;
}

Json coverage_object(const KeyMatchReport& r) {
  return {{"gold_keys", r.gold_keys},
          {"matched_keys", r.matched_keys},
          {"fallback_matches", r.fallback_matches},
          {"coverage", r.coverage()},
          {"duplicate_keys", r.duplicate_keys.size()},
          {"orphans", r.orphans.size()}};
}

Json law_map(const std::map<Law, double>& m) {
  Json j = Json::object();
  for (const auto& [law, v] : m) j[std::string(law_name(law))] = v;
  return j;
}

Json composite_block(const ModelComposite& c) {
  Json sgs = Json::object();
  for (const auto& [law, v] : c.sgs) sgs[std::string(law_name(law))] = metric_object(v, kTask1MetricNames);
  Json j = {{"sgs", sgs},
            {"task1_rcs", law_map(c.task1_rcs)},
            {"task2_rcs", law_map(c.task2_rcs)},
            {"coupled", law_map(c.coupled)}};
  j["task1_crgs"] = c.task1_crgs ? Json(*c.task1_crgs) : Json(nullptr);
  j["task2_crgs"] = c.task2_crgs ? Json(*c.task2_crgs) : Json(nullptr);
  j["ocs"] = c.ocs ? Json(*c.ocs) : Json(nullptr);
  return j;
}

}  // namespace

Json results_to_json(const EvaluationResults& results, const CompositeReport& composites,
                     const Json& settings) {
  Json models = Json::object();
  for (const auto& [model, laws] : results.task1) {
    Json t1 = Json::object();
    for (const auto& [law, r] : laws) {
      Json levels = Json::object(), strict = Json::object(), relaxed = Json::object();
      for (Granularity g : kAllGranularities) {
        const auto i = static_cast<std::size_t>(g);
        const std::string name(granularity_name(g));
        levels[name] = metric_object(r.scored.levels[i], kTask1MetricNames);
        strict[name] = coverage_object(r.strict[i]);
        relaxed[name] = coverage_object(r.relaxed[i]);
      }
      t1[std::string(law_name(law))] = {{"levels", levels},
                                        {"coverage", {{"strict", strict}, {"relaxed", relaxed}}},
                                        {"truncated_rankings", r.scored.truncated_rankings},
                                        {"dropped_labels", r.scored.dropped_labels}};
    }
    models[model]["task1"] = t1;
  }
  for (const auto& [model, laws] : results.task2) {
    Json t2 = Json::object();
    for (const auto& [law, e] : laws) {
      t2[std::string(law_name(law))] = {
          {"metrics", metric_object(e.oriented, kTask2MetricNames)},
          {"hamming_loss", e.hamming},
          {"coverage_error", e.nce},
          {"coverage",
           {{"gold_pointers", e.report.gold_pointers},
            {"matched", e.report.matched},
            {"coverage", e.report.coverage()},
            {"duplicates", e.report.duplicates.size()},
            {"orphans", e.report.orphans.size()}}},
          {"dropped_labels", e.dropped_labels}};
    }
    models[model]["task2"] = t2;
  }
  for (const auto& [model, c] : composites.models) models[model]["composites"] = composite_block(c);
  return {{"policy", std::string(policy_name(results.policy))},
          {"composite_config", io::composite_config_to_json(composites.config)},
          {"settings", settings},
          {"models", models}};
}

Json composites_to_json(const CompositeReport& composites, const Json& settings) {
  Json models = Json::object();
  for (const auto& [model, c] : composites.models) models[model]["composites"] = composite_block(c);
  return {{"composite_config", io::composite_config_to_json(composites.config)},
          {"settings", settings},
          {"models", models}};
}

CompositeInputs composite_inputs_from_results(const Json& results) {
  CompositeInputs in;
  if (!results.contains("models")) throw Error(ErrorCode::kInvalidRecord, "results: no 'models'");
  for (const auto& [model, block] : results.at("models").items()) {
    if (block.contains("task1")) {
      for (const auto& [law, t1] : block.at("task1").items()) {
        std::array<MetricVector, 3> levels{};
        for (Granularity g : kAllGranularities) {
          levels[static_cast<std::size_t>(g)] =
              metric_vector(t1.at("levels").at(std::string(granularity_name(g))), kTask1MetricNames);
        }
        in[model][parse_law(law)].task1_levels = levels;
      }
    }
    if (block.contains("task2")) {
      for (const auto& [law, t2] : block.at("task2").items()) {
        in[model][parse_law(law)].task2 = metric_vector(t2.at("metrics"), kTask2MetricNames);
      }
    }
  }
  return in;
}

namespace {

std::string fixed4(const Json& v) {
  if (v.is_null()) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v.get<double>());
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::size_t model_width(const Json& models) {
  std::size_t w = 6;
  for (const auto& [m, _] : models.items()) w = std::max(w, m.size() + 2);
  return w;
}

}  // namespace

std::string render_report(const Json& results) {
  std::ostringstream os;
  const Json& models = results.at("models");
  const std::size_t mw = model_width(models);
  os << "regeval report\n";
  if (results.contains("policy")) os << "key matching: " << results.at("policy").get<std::string>() << "\n";

  bool any1 = false, any2 = false, anyc = false;
  for (const auto& [_, b] : models.items()) {
    any1 = any1 || b.contains("task1");
    any2 = any2 || b.contains("task2");
    anyc = anyc || b.contains("composites");
  }

  if (any1) {
    os << "\nTask 1 base metrics\n";
    os << pad("model", mw) << pad("law", 8) << pad("level", 8);
    for (auto n : kTask1MetricNames) os << pad(std::string(n), 9);
    os << "\n";
    for (const auto& [m, b] : models.items()) {
      if (!b.contains("task1")) continue;
      for (const auto& [law, t1] : b.at("task1").items()) {
        for (Granularity g : kAllGranularities) {
          const std::string level(granularity_name(g));
          os << pad(m, mw) << pad(law, 8) << pad(level, 8);
          for (auto n : kTask1MetricNames) os << pad(fixed4(t1.at("levels").at(level).at(std::string(n))), 9);
          os << "\n";
        }
      }
    }
    os << "\nTask 1 key coverage (matched/gold)\n";
    os << pad("model", mw) << pad("law", 8) << pad("level", 8) << pad("strict", 14) << "relaxed\n";
    for (const auto& [m, b] : models.items()) {
      if (!b.contains("task1")) continue;
      for (const auto& [law, t1] : b.at("task1").items()) {
        for (Granularity g : kAllGranularities) {
          const std::string level(granularity_name(g));
          const auto cell = [&](const char* policy) {
            const Json& c = t1.at("coverage").at(policy).at(level);
            return std::to_string(c.at("matched_keys").get<std::size_t>()) + "/" +
                   std::to_string(c.at("gold_keys").get<std::size_t>());
          };
          os << pad(m, mw) << pad(law, 8) << pad(level, 8) << pad(cell("strict"), 14)
             << cell("relaxed") << "\n";
        }
      }
    }
  }

  if (any2) {
    os << "\nTask 2 base metrics (oriented)\n";
    os << pad("model", mw) << pad("law", 8);
    for (auto n : kTask2MetricNames) os << pad(std::string(n), 18);
    os << "coverage\n";
    for (const auto& [m, b] : models.items()) {
      if (!b.contains("task2")) continue;
      for (const auto& [law, t2] : b.at("task2").items()) {
        os << pad(m, mw) << pad(law, 8);
        for (auto n : kTask2MetricNames) os << pad(fixed4(t2.at("metrics").at(std::string(n))), 18);
        const Json& c = t2.at("coverage");
        os << c.at("matched").get<std::size_t>() << "/" << c.at("gold_pointers").get<std::size_t>()
           << "\n";
      }
    }
  }

  if (anyc) {
    bool any_sgs = false;
    for (const auto& [_, b] : models.items()) {
      any_sgs = any_sgs || (b.contains("composites") && !b.at("composites").at("sgs").empty());
    }
    if (any_sgs) {
      os << "\nSGS per Task 1 metric\n";
      os << pad("model", mw) << pad("law", 8);
      for (auto n : kTask1MetricNames) os << pad(std::string(n), 9);
      os << "\n";
      for (const auto& [m, b] : models.items()) {
        if (!b.contains("composites")) continue;
        for (const auto& [law, s] : b.at("composites").at("sgs").items()) {
          os << pad(m, mw) << pad(law, 8);
          for (auto n : kTask1MetricNames) os << pad(fixed4(s.at(std::string(n))), 9);
          os << "\n";
        }
      }
    }
    os << "\nRCS by regulation\n";
    os << pad("model", mw) << pad("law", 8) << pad("T1-RCS", 9) << pad("T2-RCS", 9) << "S\n";
    for (const auto& [m, b] : models.items()) {
      if (!b.contains("composites")) continue;
      const Json& c = b.at("composites");
      std::set<std::string> laws;
      for (const char* section : {"task1_rcs", "task2_rcs", "coupled"}) {
        for (const auto& [law, _] : c.at(section).items()) laws.insert(law);
      }
      for (const auto& law : laws) {
        const auto get = [&](const char* section) {
          return c.at(section).contains(law) ? c.at(section).at(law) : Json(nullptr);
        };
        os << pad(m, mw) << pad(law, 8) << pad(fixed4(get("task1_rcs")), 9)
           << pad(fixed4(get("task2_rcs")), 9) << fixed4(get("coupled")) << "\n";
      }
    }
    os << "\nCross-regulation summary\n";
    os << pad("model", mw) << pad("T1-CRGS", 9) << pad("T2-CRGS", 9) << "OCS\n";
    for (const auto& [m, b] : models.items()) {
      if (!b.contains("composites")) continue;
      const Json& c = b.at("composites");
      os << pad(m, mw) << pad(fixed4(c.at("task1_crgs")), 9) << pad(fixed4(c.at("task2_crgs")), 9)
         << fixed4(c.at("ocs")) << "\n";
    }
  }

  if (results.contains("composite_config")) {
    os << "\ncomposite config: " << results.at("composite_config").dump() << "\n";
  }
  if (results.contains("settings")) os << "settings: " << results.at("settings").dump() << "\n";
  return os.str();
}

std::string plot_csv_task1(const Json& results) {
  std::ostringstream os;
  os << "model,law,level";
  for (auto n : kTask1MetricNames) os << "," << n;
  os << "\n";
  for (const auto& [m, b] : results.at("models").items()) {
    if (!b.contains("task1")) continue;
    for (const auto& [law, t1] : b.at("task1").items()) {
      for (Granularity g : kAllGranularities) {
        const std::string level(granularity_name(g));
        os << m << "," << law << "," << level;
        for (auto n : kTask1MetricNames) {
          char buf[40];
          std::snprintf(buf, sizeof buf, "%.17g", t1.at("levels").at(level).at(std::string(n)).get<double>());
          os << "," << buf;
        }
        os << "\n";
      }
    }
  }
  return os.str();
}

std::string plot_csv_task2(const Json& results) {
  std::ostringstream os;
  os << "model,law";
  for (auto n : kTask2MetricNames) os << "," << n;
  os << "\n";
  for (const auto& [m, b] : results.at("models").items()) {
    if (!b.contains("task2")) continue;
    for (const auto& [law, t2] : b.at("task2").items()) {
      os << m << "," << law;
      for (auto n : kTask2MetricNames) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", t2.at("metrics").at(std::string(n)).get<double>());
        os << "," << buf;
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace regeval
