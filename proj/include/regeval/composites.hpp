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

// Stability-aware aggregation of base metric vectors:
//
//   SGS   harmonic mean over file/module/line with a CV^2 penalty
//   RCS   TOPSIS closeness to the all-ones ideal under a Mahalanobis metric
//   CRGS  geometric mean over laws with a variance penalty
//   OCS   per-law harmonic coupling of the two tasks, then CRGS-style fusion
//
// Variances and standard deviations are population (divide-by-n) moments.

#ifndef REGEVAL_COMPOSITES_HPP_
#define REGEVAL_COMPOSITES_HPP_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "regeval/corpus.hpp"
#include "regeval/labels.hpp"

namespace regeval {

enum class CovariancePooling {
  kPerLawTask,  // one cohort per (law, task)
  kAcrossLaws,  // one cohort per task, pooling every law's vectors
};

struct CompositeConfig {
  double alpha = 1.0;    // SGS volatility penalty
  double beta = 2.0;     // CRGS cross-law penalty
  double gamma = 2.0;    // OCS task-gap penalty
  double delta = 2.0;    // OCS cross-law penalty
  double ridge = 0.1;    // covariance regularizer
  double epsilon = 1e-6;
  CovariancePooling pooling = CovariancePooling::kPerLawTask;

  /// Throws kInvalidConfig on negative weights or non-positive ridge/epsilon.
  void validate() const;
};

double sgs(const std::array<double, 3>& levels, double alpha, double epsilon);

/// Dense symmetric K x K matrix, row-major.
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t n, double fill = 0.0)
      : n_(n), data_(n * n, fill) {}
  static SquareMatrix identity(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// Sample covariance (n-1) of the cohort's columns plus ridge * I. A single
/// row has zero sample covariance, leaving ridge * I.
SquareMatrix cohort_covariance(std::span<const std::vector<double>> cohort,
                               double ridge);

/// sqrt((x-y)^T C^-1 (x-y)) via a Cholesky solve. Throws
/// kSingularCovariance when C is not positive definite.
double mahalanobis(std::span<const double> x, std::span<const double> y,
                   const SquareMatrix& covariance);

/// TOPSIS closeness of z to the all-ones ideal vs the all-zeros anti-ideal.
double rcs_with_covariance(std::span<const double> z, const SquareMatrix& covariance);

/// RCS of cohort[index], covariance estimated from the whole cohort.
double rcs(std::span<const std::vector<double>> cohort, std::size_t index,
           const CompositeConfig& config);

/// Geometric mean of max(r, eps) times exp(-beta * Var(r)).
double crgs(std::span<const double> per_law, double beta, double epsilon);

double couple_tasks(double task1_rcs, double task2_rcs, double gamma, double epsilon);

struct LawTaskScores {
  std::optional<double> task1;
  std::optional<double> task2;
};

/// Throws kMissingLaw when a law lacks either task score.
double ocs(const std::map<Law, LawTaskScores>& per_law, const CompositeConfig& config);

/// Base inputs for one model under one law. Either task may be absent.
struct ModelLawMetrics {
  std::optional<std::array<MetricVector, 3>> task1_levels;  // by Granularity
  std::optional<MetricVector> task2;
};

using ModelName = std::string;
using CompositeInputs = std::map<ModelName, std::map<Law, ModelLawMetrics>>;

struct ModelComposite {
  std::map<Law, MetricVector> sgs;  // per Task 1 metric
  std::map<Law, double> task1_rcs;
  std::map<Law, double> task2_rcs;
  std::optional<double> task1_crgs;
  std::optional<double> task2_crgs;
  std::map<Law, double> coupled;  // S per law
  std::optional<double> ocs;
};

struct CompositeReport {
  CompositeConfig config;
  std::map<ModelName, ModelComposite> models;
};

/// Full composite pipeline. RCS cohorts are the models in `inputs`.
CompositeReport compose(const CompositeInputs& inputs, const CompositeConfig& config);

/// CRGS/coupling/OCS straight from per-law RCS values (e.g. published tables).
CompositeReport compose_from_rcs(
    const std::map<ModelName, std::map<Law, LawTaskScores>>& rcs_values,
    const CompositeConfig& config);

}  // namespace regeval

#endif  // REGEVAL_COMPOSITES_HPP_
