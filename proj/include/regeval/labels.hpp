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

#ifndef REGEVAL_LABELS_HPP_
#define REGEVAL_LABELS_HPP_

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace regeval {

/// Position of a label in its jurisdiction's universe.
using LabelIndex = std::uint32_t;
/// Sorted, duplicate-free.
using LabelSet = std::vector<LabelIndex>;
/// Ordered, duplicate-free.
using Ranking = std::vector<LabelIndex>;

inline constexpr std::size_t kMetricCount = 6;
/// Six base metrics, all oriented higher-is-better.
using MetricVector = std::array<double, kMetricCount>;

inline constexpr std::array<std::string_view, kMetricCount> kTask1MetricNames = {
    "Acc@1", "Acc@5", "R-Prec", "MRR", "MAP", "nDCG@5"};

inline constexpr std::array<std::string_view, kMetricCount> kTask2MetricNames = {
    "micro_f1", "macro_f1", "weighted_f1", "jaccard", "one_minus_nce",
    "one_minus_hamming"};

}  // namespace regeval

#endif  // REGEVAL_LABELS_HPP_
