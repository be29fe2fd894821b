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


// Evaluation fan-out over models and laws, and the results.json /
// report.txt / plot CSV emitters.

#ifndef REGEVAL_REPORT_HPP_
#define REGEVAL_REPORT_HPP_

#include <array>
#include <map>
#include <string>

#include "regeval/composites.hpp"
#include "regeval/io.hpp"
#include "regeval/multilabel.hpp"
#include "regeval/retrieval.hpp"

namespace regeval {

struct Task1Result {
  Task1Evaluation scored;  // under the active policy
  std::array<KeyMatchReport, 3> strict{};
  std::array<KeyMatchReport, 3> relaxed{};
};

struct EvaluationResults {
  MatchPolicy policy = MatchPolicy::kStrict;
  std::map<std::string, std::map<Law, Task1Result>> task1;
  std::map<std::string, std::map<Law, Task2Evaluation>> task2;
};

/// Every model seen in either table is scored on every law of the gold
/// views; a model with no predictions for a law scores zeros there.
EvaluationResults evaluate_all(const GoldViews& gold, const JurisdictionRegistry& registry,
                               const io::Task1Table& task1, const io::Task2Table& task2,
                               MatchPolicy policy, Execution execution = Execution::kParallel);

CompositeInputs composite_inputs(const EvaluationResults& results);

/// Full-precision dump: base metrics, coverage, composites and `settings`.
io::Json results_to_json(const EvaluationResults& results, const CompositeReport& composites,
                         const io::Json& settings);

/// Composites only (e.g. computed from published RCS values).
io::Json composites_to_json(const CompositeReport& composites, const io::Json& settings);

/// Reads the base metrics back out of results.json.
CompositeInputs composite_inputs_from_results(const io::Json& results);

/// Human summary of a results.json document, numbers at 4 decimals.
std::string render_report(const io::Json& results);

/// model,law,level,<six Task 1 metrics>
std::string plot_csv_task1(const io::Json& results);
/// model,law,<six oriented Task 2 metrics>
std::string plot_csv_task2(const io::Json& results);

}  // namespace regeval

#endif  // REGEVAL_REPORT_HPP_
