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

#include <cstddef>
#include <optional>
#include <span>

#include "json.hpp"
#include "sentistab/corpus/corpus.hpp"
#include "sentistab/detector/detector.hpp"

namespace sentistab::eval {

struct Confusion {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

  friend bool operator==(const Confusion&, const Confusion&) = default;
};

/// llm is the positive class. F1 is 0 when precision + recall is 0.
struct MetricsBundle {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::optional<double> auroc;  // unset unless both classes are present
  Confusion confusion;

  friend bool operator==(const MetricsBundle&, const MetricsBundle&) = default;
};

struct Outcome {
  detector::Verdict verdict = detector::Verdict::Human;
  corpus::Label label = corpus::Label::Unknown;
  double score = 0.0;
};

/// Low scores indicate llm, so AUROC is P(score_llm < score_human) with
/// ties counted as one half. Throws EmptyInput, or InvalidArgument for an
/// unknown label.
MetricsBundle compute_metrics(std::span<const Outcome> outcomes);

/// Rank-statistic AUROC; nullopt when a class is missing.
std::optional<double> auroc_low_is_positive(std::span<const Outcome> outcomes);

/// {precision, recall, f1, auroc (null when unset), confusion {tp, fp, tn, fn}}.
nlohmann::ordered_json to_json(const MetricsBundle& m);

}  // namespace sentistab::eval
