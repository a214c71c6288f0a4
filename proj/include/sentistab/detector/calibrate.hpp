// Copyright 2026 The sentistab Authors.
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

#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "sentistab/corpus/corpus.hpp"

namespace sentistab::detector {

struct ScoredSample {
  std::string id;
  corpus::Label label = corpus::Label::Unknown;
  double score = 0.0;
};

struct CalibrationReport {
  double best_threshold = 0.0;  // may be +-infinity
  double best_f1 = 0.0;
  std::vector<std::pair<double, double>> roc_points;  // (fpr, tpr), one per candidate threshold
  std::vector<ScoredSample> score_table;
};

/// F1 of the llm class from confusion counts; 0 when there are no true
/// positives.
double f1_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

/// Candidate thresholds: -inf, midpoints of adjacent distinct scores, +inf.
/// Picks the one maximizing F1 of the rule score < threshold => llm; ties go
/// to the smaller threshold. Throws SingleClassInput unless both labels are
/// present, InvalidArgument on unknown labels or non-finite scores.
CalibrationReport calibrate(std::span<const ScoredSample> scored);

/// Infinite thresholds are written as the strings "inf" / "-inf".
nlohmann::ordered_json to_json(const CalibrationReport& report);

}  // namespace sentistab::detector
