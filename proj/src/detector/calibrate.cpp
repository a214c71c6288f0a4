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

#include "sentistab/detector/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sentistab/error.hpp"

namespace sentistab::detector {

using nlohmann::ordered_json;

double f1_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
  if (tp == 0) return 0.0;
  return 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
}

CalibrationReport calibrate(std::span<const ScoredSample> scored) {
  std::size_t n_llm = 0;
  std::size_t n_human = 0;
  for (const auto& s : scored) {
    if (!std::isfinite(s.score)) throw Error(ErrorCode::InvalidArgument, "score of '" + s.id + "' is not finite");
    if (s.label == corpus::Label::Llm) {
      ++n_llm;
    } else if (s.label == corpus::Label::Human) {
      ++n_human;
    } else {
      throw Error(ErrorCode::InvalidArgument, "sample '" + s.id + "' has no ground-truth label");
    }
  }
  if (n_llm == 0 || n_human == 0) {
    throw Error(ErrorCode::SingleClassInput, "calibration needs both human and llm samples");
  }

  std::vector<std::pair<double, bool>> sorted;  // (score, is_llm)
  sorted.reserve(scored.size());
  for (const auto& s : scored) sorted.emplace_back(s.score, s.label == corpus::Label::Llm);
  std::sort(sorted.begin(), sorted.end());

  CalibrationReport report;
  report.score_table.assign(scored.begin(), scored.end());

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::size_t tp = 0;
  std::size_t fp = 0;
  auto consider = [&](double threshold) {
    const double f1 = f1_from_counts(tp, fp, n_llm - tp);
    report.roc_points.emplace_back(static_cast<double>(fp) / static_cast<double>(n_human),
                                   static_cast<double>(tp) / static_cast<double>(n_llm));
    if (report.roc_points.size() == 1 || f1 > report.best_f1) {
      report.best_f1 = f1;
      report.best_threshold = threshold;
    }
  };

  consider(-kInf);
  std::size_t i = 0;
  while (i < sorted.size()) {
    const double value = sorted[i].first;
    // Every sample at this score flips to llm together.
    while (i < sorted.size() && sorted[i].first == value) {
      sorted[i].second ? ++tp : ++fp;
      ++i;
    }
    if (i == sorted.size()) {
      consider(kInf);
    } else {
      // Adjacent doubles can round the midpoint down onto `value`.
      const double mid = (value + sorted[i].first) / 2.0;
      consider(mid > value ? mid : sorted[i].first);
    }
  }
  return report;
}

ordered_json to_json(const CalibrationReport& report) {
  auto number = [](double v) {
    if (std::isinf(v)) return ordered_json(v > 0 ? "inf" : "-inf");
    return ordered_json(v);
  };
  ordered_json j;
  j["best_threshold"] = number(report.best_threshold);
  j["best_f1"] = report.best_f1;
  j["roc_points"] = ordered_json::array();
  for (const auto& [fpr, tpr] : report.roc_points) j["roc_points"].push_back({fpr, tpr});
  j["score_table"] = ordered_json::array();
  for (const auto& s : report.score_table) {
    j["score_table"].push_back({{"id", s.id}, {"label", corpus::to_string(s.label)}, {"score", s.score}});
  }
  return j;
}

}  // namespace sentistab::detector
