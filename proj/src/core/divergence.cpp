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

#include "sentistab/core/divergence.hpp"

#include <algorithm>
#include <cmath>

#include "sentistab/error.hpp"

namespace sentistab::core {

namespace {

// Summing in sorted order makes every mean below exactly invariant under
// permutation of the rewrite list.
double sorted_sum(std::vector<double>& terms) {
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

double mean_log_l1(const SentimentDistribution& original,
                   const std::vector<PromptDistribution>& others) {
  std::vector<double> terms;
  terms.reserve(others.size());
  for (const auto& o : others) terms.push_back(log_l1(original, o.distribution));
  return sorted_sum(terms) / static_cast<double>(terms.size());
}

}  // namespace

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::Sdc: return "sdc";
    case Metric::Sdp: return "sdp";
    case Metric::Signed: return "signed";
  }
  return "sdc";
}

Metric parse_metric(std::string_view name) {
  if (name == "sdc") return Metric::Sdc;
  if (name == "sdp") return Metric::Sdp;
  if (name == "signed") return Metric::Signed;
  throw Error(ErrorCode::InvalidArgument, "unknown metric '" + std::string(name) + "'");
}

double log_l1(const SentimentDistribution& a, const SentimentDistribution& b) {
  double total = 0.0;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    total += std::fabs(std::log(a[c]) - std::log(b[c]));
  }
  return total;
}

double sdc_score(const StabilityRecord& rec) {
  if (rec.rewrites.empty()) throw Error(ErrorCode::EmptyRewrites, "SDC needs at least one rewrite");
  return mean_log_l1(rec.original, rec.rewrites);
}

double sdp_score(const StabilityRecord& rec) {
  if (rec.round_trips.empty()) {
    throw Error(ErrorCode::EmptyRoundTrips, "SDP needs at least one round trip");
  }
  return mean_log_l1(rec.original, rec.round_trips);
}

double signed_divergence(const StabilityRecord& rec) {
  if (rec.rewrites.empty()) {
    throw Error(ErrorCode::EmptyRewrites, "signed divergence needs at least one rewrite");
  }
  const auto n = static_cast<double>(rec.rewrites.size());
  double total = 0.0;
  std::vector<double> logs(rec.rewrites.size());
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    // Differences first, so an unchanged rewrite contributes exactly zero.
    const double base = std::log(rec.original[c]);
    for (std::size_t i = 0; i < rec.rewrites.size(); ++i) {
      logs[i] = base - std::log(rec.rewrites[i].distribution[c]);
    }
    total += sorted_sum(logs) / n;
  }
  return total;
}

std::vector<double> feature_embedding(const StabilityRecord& rec) {
  if (rec.rewrites.empty()) {
    throw Error(ErrorCode::EmptyRewrites, "feature embedding needs at least one rewrite");
  }
  std::vector<double> out;
  out.reserve(kNumClasses * (1 + rec.rewrites.size()));
  out.insert(out.end(), rec.original.values().begin(), rec.original.values().end());
  for (const auto& r : rec.rewrites) {
    out.insert(out.end(), r.distribution.values().begin(), r.distribution.values().end());
  }
  return out;
}

DivergenceScore score_record(const StabilityRecord& rec) {
  DivergenceScore score;
  score.sdc = sdc_score(rec);
  score.signed_divergence = signed_divergence(rec);
  if (!rec.round_trips.empty()) score.sdp = sdp_score(rec);
  return score;
}

double select_metric(const DivergenceScore& score, Metric metric) {
  switch (metric) {
    case Metric::Sdc:
      return score.sdc;
    case Metric::Sdp:
      if (!score.sdp) throw Error(ErrorCode::EmptyRoundTrips, "score has no SDP value");
      return *score.sdp;
    case Metric::Signed:
      if (!score.signed_divergence) {
        throw Error(ErrorCode::EmptyRewrites, "score has no signed divergence");
      }
      return *score.signed_divergence;
  }
  return score.sdc;
}

}  // namespace sentistab::core
