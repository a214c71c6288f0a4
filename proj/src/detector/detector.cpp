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

#include "sentistab/detector/detector.hpp"

#include <omp.h>

#include <optional>
#include <unordered_set>

#include "sentistab/error.hpp"

namespace sentistab::detector {

using nlohmann::ordered_json;

std::string_view to_string(Verdict v) { return v == Verdict::Llm ? "llm" : "human"; }

ordered_json to_json(const DetectionResult& r) {
  auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
  ordered_json j;
  j["sample_id"] = r.sample_id;
  j["metric"] = core::to_string(r.metric);
  j["threshold"] = r.threshold;
  j["score"] = r.score;
  j["verdict"] = to_string(r.verdict);
  j["scores"] = {{"sdc", r.scores.sdc}, {"sdp", opt(r.scores.sdp)}, {"signed", opt(r.scores.signed_divergence)}};
  j["analyzer_calls"] = r.analyzer_calls;
  j["llm_call_count"] = r.llm_call_count();
  j["llm_calls"] = ordered_json::array();
  for (const auto& call : r.llm_calls) j["llm_calls"].push_back({{"stage", call.stage}, {"key", call.cache_key}});
  return j;
}

DetectionResult detect(const corpus::TextSample& sample, const DetectorConfig& cfg) {
  if (!cfg.prompts || !cfg.analyzer || !cfg.rewriter) {
    throw Error(ErrorCode::ConfigError, "detector needs prompts, analyzer and rewriter");
  }
  if (sample.word_count() == 0) throw Error(ErrorCode::EmptyText, "sample '" + sample.id + "' has no tokens");

  auto options = cfg.record;
  if (cfg.metric == core::Metric::Sdp) options.with_sdp = true;

  DetectionResult result;
  result.sample_id = sample.id;
  result.metric = cfg.metric;
  result.threshold = cfg.threshold;
  try {
    result.record = rewrite::build_stability_record(sample.text, *cfg.prompts, *cfg.rewriter,
                                                    *cfg.analyzer, options, &result.llm_calls);
  } catch (const Error& e) {
    throw e.with_context("sample " + sample.id);
  }
  result.analyzer_calls = 1 + result.record.rewrites.size() + result.record.round_trips.size();
  result.scores = core::score_record(result.record);
  result.score = core::select_metric(result.scores, cfg.metric);
  result.verdict = decide(result.score, cfg.threshold);
  return result;
}

BatchOutcome detect_batch(std::span<const corpus::TextSample> samples, const DetectorConfig& cfg,
                          int parallelism) {
  std::unordered_set<std::string_view> ids;
  for (const auto& s : samples) {
    if (!ids.insert(s.id).second) throw Error(ErrorCode::DuplicateId, "duplicate sample id '" + s.id + "'");
  }

  std::vector<std::optional<DetectionResult>> slots(samples.size());
  std::vector<std::optional<SampleError>> failures(samples.size());
  const auto n = static_cast<std::ptrdiff_t>(samples.size());
  const int threads = parallelism > 0 ? parallelism : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      slots[idx] = detect(samples[idx], cfg);
    } catch (const Error& e) {
      failures[idx] = SampleError{idx, samples[idx].id, e.code(), e.detail()};
    } catch (const std::exception& e) {
      failures[idx] = SampleError{idx, samples[idx].id, ErrorCode::InvalidArgument, e.what()};
    }
  }

  BatchOutcome out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (slots[i]) out.results.push_back(std::move(*slots[i]));
    if (failures[i]) out.errors.push_back(std::move(*failures[i]));
  }
  return out;
}

}  // namespace sentistab::detector
