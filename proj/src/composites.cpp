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

#include "regeval/composites.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "regeval/error.hpp"

namespace regeval {

namespace {

double population_mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double population_variance(std::span<const double> v) {
  const double m = population_mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return acc / static_cast<double>(v.size());
}

// Geometric mean of floored values times the variance penalty; shared by
// CRGS and the OCS fusion step.
double stability_fusion(std::span<const double> values, double weight, double epsilon) {
  if (values.empty()) throw Error(ErrorCode::kMissingLaw, "no per-law scores to aggregate");
  double log_sum = 0.0;
  for (double v : values) log_sum += std::log(std::max(v, epsilon));
  const double geometric = std::exp(log_sum / static_cast<double>(values.size()));
  return geometric * std::exp(-weight * population_variance(values));
}

}  // namespace

void CompositeConfig::validate() const {
  const auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidConfig, what);
  };
  if (alpha < 0 || beta < 0 || gamma < 0 || delta < 0) {
    fail("composite weights alpha/beta/gamma/delta must be >= 0");
  }
  if (!(ridge > 0)) fail("ridge must be > 0");
  if (!(epsilon > 0)) fail("epsilon must be > 0");
}

double sgs(const std::array<double, 3>& levels, double alpha, double epsilon) {
  double inv_sum = 0.0;
  for (double v : levels) inv_sum += 1.0 / (v + epsilon);
  const double harmonic = 3.0 / inv_sum;
  const double mean = std::max(population_mean(levels), epsilon);
  const double cv = std::sqrt(population_variance(levels)) / mean;
  return harmonic * std::exp(-alpha * cv * cv);
}

SquareMatrix SquareMatrix::identity(std::size_t n) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix cohort_covariance(std::span<const std::vector<double>> cohort, double ridge) {
  if (cohort.empty()) throw Error(ErrorCode::kInvalidConfig, "empty cohort");
  const std::size_t k = cohort.front().size();
  for (const auto& row : cohort) {
    if (row.size() != k) {
      throw Error(ErrorCode::kLengthMismatch, "cohort vectors differ in length");
    }
  }
  SquareMatrix c(k);
  const std::size_t n = cohort.size();
  if (n >= 2) {
    std::vector<double> mean(k, 0.0);
    for (const auto& row : cohort) {
      for (std::size_t j = 0; j < k; ++j) mean[j] += row[j];
    }
    for (auto& m : mean) m /= static_cast<double>(n);
    for (const auto& row : cohort) {
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
          c(a, b) += (row[a] - mean[a]) * (row[b] - mean[b]);
        }
      }
    }
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) c(a, b) /= static_cast<double>(n - 1);
    }
  }
  for (std::size_t i = 0; i < k; ++i) c(i, i) += ridge;
  return c;
}

double mahalanobis(std::span<const double> x, std::span<const double> y,
                   const SquareMatrix& covariance) {
  const std::size_t k = covariance.size();
  if (x.size() != k || y.size() != k) {
    throw Error(ErrorCode::kLengthMismatch, "vector length does not match covariance");
  }
  // Cholesky factor, lower triangle.
  SquareMatrix l(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = covariance(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= l(i, p) * l(j, p);
      if (i == j) {
        if (!(s > 0.0) || !std::isfinite(s)) {
          throw Error(ErrorCode::kSingularCovariance,
                      "covariance is not positive definite (check ridge > 0)");
        }
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  // Forward substitution: L w = x - y, distance^2 = |w|^2.
  std::vector<double> w(k);
  double sq = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double s = x[i] - y[i];
    for (std::size_t p = 0; p < i; ++p) s -= l(i, p) * w[p];
    w[i] = s / l(i, i);
    sq += w[i] * w[i];
  }
  return std::sqrt(sq);
}

double rcs_with_covariance(std::span<const double> z, const SquareMatrix& covariance) {
  const std::vector<double> ideal(z.size(), 1.0);
  const std::vector<double> anti(z.size(), 0.0);
  const double d_plus = mahalanobis(z, ideal, covariance);
  const double d_minus = mahalanobis(z, anti, covariance);
  return d_minus / (d_plus + d_minus);
}

double rcs(std::span<const std::vector<double>> cohort, std::size_t index,
           const CompositeConfig& config) {
  if (index >= cohort.size()) throw Error(ErrorCode::kInvalidConfig, "cohort index out of range");
  if (cohort[index].size() < 2) {
    throw Error(ErrorCode::kInvalidConfig, "RCS needs at least two metrics");
  }
  return rcs_with_covariance(cohort[index], cohort_covariance(cohort, config.ridge));
}

double crgs(std::span<const double> per_law, double beta, double epsilon) {
  return stability_fusion(per_law, beta, epsilon);
}

double couple_tasks(double task1_rcs, double task2_rcs, double gamma, double epsilon) {
  return 2.0 * task1_rcs * task2_rcs / (task1_rcs + task2_rcs + epsilon) *
         std::exp(-gamma * std::abs(task1_rcs - task2_rcs));
}

double ocs(const std::map<Law, LawTaskScores>& per_law, const CompositeConfig& config) {
  std::vector<double> coupled;
  for (const auto& [law, scores] : per_law) {
    if (!scores.task1 || !scores.task2) {
      throw Error(ErrorCode::kMissingLaw, std::string(law_name(law)) +
                                              " lacks a " + (scores.task1 ? "Task 2" : "Task 1") +
                                              " score");
    }
    coupled.push_back(couple_tasks(*scores.task1, *scores.task2, config.gamma, config.epsilon));
  }
  return stability_fusion(coupled, config.delta, config.epsilon);
}

namespace {

void fill_cross_law(ModelComposite& m, const CompositeConfig& config) {
  std::map<Law, LawTaskScores> per_law;
  for (const auto& [law, v] : m.task1_rcs) per_law[law].task1 = v;
  for (const auto& [law, v] : m.task2_rcs) per_law[law].task2 = v;

  std::vector<double> t1, t2;
  for (const auto& [law, v] : m.task1_rcs) t1.push_back(v);
  for (const auto& [law, v] : m.task2_rcs) t2.push_back(v);
  if (!t1.empty()) m.task1_crgs = crgs(t1, config.beta, config.epsilon);
  if (!t2.empty()) m.task2_crgs = crgs(t2, config.beta, config.epsilon);

  bool complete = !per_law.empty();
  for (const auto& [law, s] : per_law) {
    if (s.task1 && s.task2) {
      m.coupled[law] = couple_tasks(*s.task1, *s.task2, config.gamma, config.epsilon);
    } else {
      complete = false;
    }
  }
  if (complete) m.ocs = ocs(per_law, config);
}

}  // namespace

CompositeReport compose(const CompositeInputs& inputs, const CompositeConfig& config) {
  config.validate();
  CompositeReport report;
  report.config = config;

  // (task, law) -> cohort rows and owning models. Pooling collapses the law.
  struct Cohort {
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<ModelName, Law>> owners;
  };
  std::map<std::pair<int, int>, Cohort> cohorts;
  const auto cohort_key = [&](int task, Law law) {
    return std::make_pair(task, config.pooling == CovariancePooling::kAcrossLaws
                                    ? -1
                                    : static_cast<int>(law));
  };

  for (const auto& [model, laws] : inputs) {
    ModelComposite& mc = report.models[model];
    for (const auto& [law, metrics] : laws) {
      if (metrics.task1_levels) {
        MetricVector s{};
        for (std::size_t k = 0; k < kMetricCount; ++k) {
          s[k] = sgs({(*metrics.task1_levels)[0][k], (*metrics.task1_levels)[1][k],
                      (*metrics.task1_levels)[2][k]},
                     config.alpha, config.epsilon);
        }
        mc.sgs[law] = s;
        Cohort& c = cohorts[cohort_key(1, law)];
        c.rows.emplace_back(s.begin(), s.end());
        c.owners.emplace_back(model, law);
      }
      if (metrics.task2) {
        Cohort& c = cohorts[cohort_key(2, law)];
        c.rows.emplace_back(metrics.task2->begin(), metrics.task2->end());
        c.owners.emplace_back(model, law);
      }
    }
  }

  // Each cohort's covariance needs every member before any RCS is emitted.
  for (const auto& [key, cohort] : cohorts) {
    const SquareMatrix cov = cohort_covariance(cohort.rows, config.ridge);
    for (std::size_t i = 0; i < cohort.rows.size(); ++i) {
      const auto& [model, law] = cohort.owners[i];
      const double score = rcs_with_covariance(cohort.rows[i], cov);
      (key.first == 1 ? report.models[model].task1_rcs : report.models[model].task2_rcs)[law] =
          score;
    }
  }
  for (auto& [model, mc] : report.models) fill_cross_law(mc, config);
  return report;
}

CompositeReport compose_from_rcs(
    const std::map<ModelName, std::map<Law, LawTaskScores>>& rcs_values,
    const CompositeConfig& config) {
  config.validate();
  CompositeReport report;
  report.config = config;
  for (const auto& [model, laws] : rcs_values) {
    ModelComposite& mc = report.models[model];
    for (const auto& [law, s] : laws) {
      if (s.task1) mc.task1_rcs[law] = *s.task1;
      if (s.task2) mc.task2_rcs[law] = *s.task2;
    }
    fill_cross_law(mc, config);
  }
  return report;
}

}  // namespace regeval
