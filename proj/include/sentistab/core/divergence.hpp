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

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentistab/core/distribution.hpp"

namespace sentistab::core {

/// sigma of one transformed text, tagged with the prompt (or inverse pair)
/// that produced it.
struct PromptDistribution {
  std::string prompt_id;
  SentimentDistribution distribution;

  friend bool operator==(const PromptDistribution&, const PromptDistribution&) = default;
};

struct StabilityRecord {
  SentimentDistribution original;
  std::vector<PromptDistribution> rewrites;
  std::vector<PromptDistribution> round_trips;

  friend bool operator==(const StabilityRecord&, const StabilityRecord&) = default;
};

struct DivergenceScore {
  double sdc = 0.0;
  std::optional<double> sdp;
  std::optional<double> signed_divergence;

  friend bool operator==(const DivergenceScore&, const DivergenceScore&) = default;
};

enum class Metric { Sdc, Sdp, Signed };

std::string_view to_string(Metric metric);
/// Accepts "sdc", "sdp" or "signed"; throws InvalidArgument otherwise.
Metric parse_metric(std::string_view name);

/// sum_c |log a_c - log b_c|; symmetric in its arguments.
double log_l1(const SentimentDistribution& a, const SentimentDistribution& b);

/// Mean over rewrites of log_l1(original, rewrite). Throws EmptyRewrites.
double sdc_score(const StabilityRecord& rec);

/// Mean over round trips of log_l1(original, round_trip). Throws EmptyRoundTrips.
double sdp_score(const StabilityRecord& rec);

/// sum_c [log sigma_c(x) - mean_i log sigma_c(x'_i)]. Antisymmetric when
/// there is a single rewrite. Throws EmptyRewrites.
double signed_divergence(const StabilityRecord& rec);

/// [sigma(x), sigma(x'_1), ..., sigma(x'_I)] in class order, length 3(1+I).
/// Rewrites appear in the order stored, which build_stability_record keeps
/// aligned with the prompt set. Throws EmptyRewrites.
std::vector<double> feature_embedding(const StabilityRecord& rec);

/// All three statistics; sdp is set only when round trips are present.
DivergenceScore score_record(const StabilityRecord& rec);

/// Selects the statistic used by the decision rule. Throws EmptyRoundTrips
/// when metric is Sdp and the score carries no sdp value.
double select_metric(const DivergenceScore& score, Metric metric);

}  // namespace sentistab::core
