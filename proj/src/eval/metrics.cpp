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

#include "sentistab/eval/metrics.hpp"

#include <algorithm>
#include <vector>

#include "sentistab/error.hpp"

namespace sentistab::eval {

using nlohmann::ordered_json;

std::optional<double> auroc_low_is_positive(std::span<const Outcome> outcomes) {
  // Sort once; for each llm sample count humans strictly above and tied.
  std::vector<std::pair<double, bool>> sorted;
  sorted.reserve(outcomes.size());
  std::size_t n_llm = 0;
  for (const auto& o : outcomes) {
    const bool llm = o.label == corpus::Label::Llm;
    n_llm += llm ? 1 : 0;
    sorted.emplace_back(o.score, llm);
  }
  const std::size_t n_human = sorted.size() - n_llm;
  if (n_llm == 0 || n_human == 0) return std::nullopt;
  std::sort(sorted.begin(), sorted.end());

  // Walk groups of equal score from the top, tracking humans seen above.
  double wins = 0.0;
  std::size_t humans_above = 0;
  std::size_t i = sorted.size();
  while (i > 0) {
    std::size_t j = i;
    const double value = sorted[i - 1].first;
    std::size_t group_llm = 0, group_human = 0;
    while (j > 0 && sorted[j - 1].first == value) {
      sorted[j - 1].second ? ++group_llm : ++group_human;
      --j;
    }
    wins += static_cast<double>(group_llm) *
            (static_cast<double>(humans_above) + 0.5 * static_cast<double>(group_human));
    humans_above += group_human;
    i = j;
  }
  return wins / (static_cast<double>(n_llm) * static_cast<double>(n_human));
}

MetricsBundle compute_metrics(std::span<const Outcome> outcomes) {
  if (outcomes.empty()) throw Error(ErrorCode::EmptyInput, "no outcomes to score");
  MetricsBundle m;
  for (const auto& o : outcomes) {
    const bool predicted_llm = o.verdict == detector::Verdict::Llm;
    switch (o.label) {
      case corpus::Label::Llm:
        predicted_llm ? ++m.confusion.tp : ++m.confusion.fn;
        break;
      case corpus::Label::Human:
        predicted_llm ? ++m.confusion.fp : ++m.confusion.tn;
        break;
      case corpus::Label::Unknown:
        throw Error(ErrorCode::InvalidArgument, "outcome without ground-truth label");
    }
  }
  const auto& c = m.confusion;
  m.precision = c.tp + c.fp ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp) : 0.0;
  m.recall = c.tp + c.fn ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn) : 0.0;
  m.f1 = m.precision + m.recall > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  m.auroc = auroc_low_is_positive(outcomes);
  return m;
}

ordered_json to_json(const MetricsBundle& m) {
  ordered_json j;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["auroc"] = m.auroc ? ordered_json(*m.auroc) : ordered_json(nullptr);
  j["confusion"] = {{"tp", m.confusion.tp}, {"fp", m.confusion.fp}, {"tn", m.confusion.tn}, {"fn", m.confusion.fn}};
  return j;
}

}  // namespace sentistab::eval
