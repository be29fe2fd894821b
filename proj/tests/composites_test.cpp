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

#include <cmath>

#include "regeval/composites.hpp"
#include "regeval/error.hpp"

namespace regeval {
namespace {

constexpr double kEps = 1e-6;

TEST(Sgs, Examples) {
  EXPECT_NEAR(sgs({0.5, 0.5, 0.5}, 1.0, kEps), 0.5, 2 * kEps);
  EXPECT_NEAR(sgs({0.2, 0.4, 0.8}, 1.0, kEps), 0.2576, 1e-4);
  EXPECT_LT(sgs({0.0, 0.5, 0.5}, 1.0, kEps), 10 * kEps);
}

TEST(Sgs, AllZeroLevelsStayFinite) {
  const double v = sgs({0.0, 0.0, 0.0}, 1.0, kEps);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_LT(v, 2 * kEps);
}

TEST(Mahalanobis, Examples) {
  const std::vector<double> p = {0.3, 0.7};
  EXPECT_EQ(mahalanobis(p, p, SquareMatrix::identity(2)), 0.0);
  const std::vector<double> x = {3.0, 4.0}, o = {0.0, 0.0};
  EXPECT_NEAR(mahalanobis(x, o, SquareMatrix::identity(2)), 5.0, 1e-12);
  SquareMatrix c(2);
  c(0, 0) = 4.0;
  c(1, 1) = 1.0;
  const std::vector<double> d = {2.0, 0.0};
  EXPECT_NEAR(mahalanobis(d, o, c), 1.0, 1e-12);
}

TEST(Mahalanobis, SingularThrows) {
  const std::vector<double> x = {1.0, 0.0}, o = {0.0, 0.0};
  try {
    mahalanobis(x, o, SquareMatrix(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingularCovariance);
  }
}

TEST(Rcs, Examples) {
  const SquareMatrix id = SquareMatrix::identity(2);
  EXPECT_NEAR(rcs_with_covariance(std::vector<double>{1, 1}, id), 1.0, 1e-12);
  EXPECT_NEAR(rcs_with_covariance(std::vector<double>{0, 0}, id), 0.0, 1e-12);
  EXPECT_NEAR(rcs_with_covariance(std::vector<double>{1, 0}, id), 0.5, 1e-12);
}

TEST(Rcs, SingletonCohortUsesRidgeOnly) {
  const std::vector<std::vector<double>> cohort = {{0.2, 0.9, 0.4}};
  const SquareMatrix c = cohort_covariance(cohort, 0.1);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(c(i, j), i == j ? 0.1 : 0.0);
  }
  // Ridge * I is isotropic, so RCS equals the Euclidean closeness.
  const double dp = std::sqrt(0.64 + 0.01 + 0.36), dm = std::sqrt(0.04 + 0.81 + 0.16);
  EXPECT_NEAR(rcs(cohort, 0, CompositeConfig{}), dm / (dp + dm), 1e-12);
}

TEST(Rcs, SampleCovariance) {
  const std::vector<std::vector<double>> cohort = {{0.0, 1.0}, {1.0, 0.0}};
  const SquareMatrix c = cohort_covariance(cohort, 0.0 + 1e-9);
  EXPECT_NEAR(c(0, 0), 0.5, 1e-8);
  EXPECT_NEAR(c(0, 1), -0.5, 1e-12);
}

TEST(Rcs, RejectsBadInputs) {
  const std::vector<std::vector<double>> one_metric = {{0.5}};
  EXPECT_THROW(rcs(one_metric, 0, CompositeConfig{}), Error);
  const std::vector<std::vector<double>> cohort = {{0.5, 0.5}};
  EXPECT_THROW(rcs(cohort, 3, CompositeConfig{}), Error);
}

TEST(Crgs, Examples) {
  EXPECT_NEAR(crgs(std::vector<double>{0.3270, 0.3100, 0.3998}, 2.0, kEps), 0.3425, 5e-5);
  EXPECT_NEAR(crgs(std::vector<double>{0.0342, 0.0396, 0.1576}, 2.0, kEps), 0.0594, 5e-5);
  EXPECT_NEAR(crgs(std::vector<double>{0.6, 0.6, 0.6}, 2.0, kEps), 0.6, 1e-12);
  EXPECT_THROW(crgs(std::vector<double>{}, 2.0, kEps), Error);
}

TEST(Coupling, Examples) {
  EXPECT_NEAR(couple_tasks(0.4, 0.4, 2.0, kEps), 0.4, 2 * kEps);
  EXPECT_NEAR(couple_tasks(0.3270, 0.3932, 2.0, kEps), 0.3128, 1e-4);
  EXPECT_NEAR(couple_tasks(0.0, 1.0, 2.0, kEps), 0.0, 1e-12);
}

TEST(Ocs, FixedPointAndCollapse) {
  std::map<Law, LawTaskScores> equal;
  for (Law law : kAllLaws) equal[law] = {0.45, 0.45};
  EXPECT_NEAR(ocs(equal, CompositeConfig{}), couple_tasks(0.45, 0.45, 2.0, kEps), 1e-12);
  std::map<Law, LawTaskScores> collapsed = equal;
  collapsed[Law::kPDPA] = {0.0, 0.0};
  EXPECT_LT(ocs(collapsed, CompositeConfig{}), 0.02);
}

TEST(Ocs, MissingTaskThrows) {
  std::map<Law, LawTaskScores> m = {{Law::kLGPD, {0.5, std::nullopt}}};
  try {
    ocs(m, CompositeConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingLaw);
  }
}

TEST(Config, Validation) {
  CompositeConfig c;
  EXPECT_NO_THROW(c.validate());
  c.ridge = 0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.alpha = -1;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.epsilon = 0;
  EXPECT_THROW(c.validate(), Error);
}

CompositeInputs two_model_inputs() {
  CompositeInputs in;
  for (const auto& [model, base] : {std::pair{"strong", 0.8}, std::pair{"weak", 0.2}}) {
    for (Law law : kAllLaws) {
      ModelLawMetrics m;
      std::array<MetricVector, 3> levels;
      for (auto& l : levels) l.fill(base);
      m.task1_levels = levels;
      MetricVector t2;
      t2.fill(base + 0.05);
      m.task2 = t2;
      in[model][law] = m;
    }
  }
  return in;
}

TEST(Compose, StrongModelWinsEverywhere) {
  const CompositeReport r = compose(two_model_inputs(), CompositeConfig{});
  const auto& strong = r.models.at("strong");
  const auto& weak = r.models.at("weak");
  for (Law law : kAllLaws) {
    EXPECT_GT(strong.task1_rcs.at(law), weak.task1_rcs.at(law));
    EXPECT_GT(strong.task2_rcs.at(law), weak.task2_rcs.at(law));
    for (double v : strong.sgs.at(law)) EXPECT_NEAR(v, 0.8, 2 * kEps);
  }
  ASSERT_TRUE(strong.ocs && weak.ocs);
  EXPECT_GT(*strong.ocs, *weak.ocs);
}

TEST(Compose, PoolingAcrossLawsChangesCohorts) {
  CompositeInputs in = two_model_inputs();
  (*in["weak"][Law::kPDPA].task1_levels)[0].fill(0.6);
  CompositeConfig pooled;
  pooled.pooling = CovariancePooling::kAcrossLaws;
  const auto a = compose(in, CompositeConfig{});
  const auto b = compose(in, pooled);
  EXPECT_NE(a.models.at("strong").task1_rcs.at(Law::kLGPD),
            b.models.at("strong").task1_rcs.at(Law::kLGPD));
}

TEST(Compose, MissingTaskOmitsOcsOnly) {
  CompositeInputs in = two_model_inputs();
  in["weak"][Law::kPIPEDA].task2.reset();
  const auto r = compose(in, CompositeConfig{});
  EXPECT_FALSE(r.models.at("weak").ocs);
  EXPECT_TRUE(r.models.at("weak").task1_crgs);
  EXPECT_TRUE(r.models.at("weak").task2_crgs);
  EXPECT_EQ(r.models.at("weak").coupled.size(), 2u);
  EXPECT_TRUE(r.models.at("strong").ocs);
}

TEST(ComposeFromRcs, MatchesDirectFormulas) {
  std::map<ModelName, std::map<Law, LawTaskScores>> values;
  values["m"][Law::kLGPD] = {0.3270, 0.3932};
  values["m"][Law::kPDPA] = {0.3100, 0.4100};
  values["m"][Law::kPIPEDA] = {0.3998, 0.3500};
  const auto r = compose_from_rcs(values, CompositeConfig{});
  const auto& m = r.models.at("m");
  EXPECT_NEAR(*m.task1_crgs, crgs(std::vector<double>{0.3270, 0.3100, 0.3998}, 2.0, kEps), 1e-15);
  EXPECT_NEAR(*m.ocs, ocs(values["m"], CompositeConfig{}), 1e-15);
}

}  // namespace
}  // namespace regeval
