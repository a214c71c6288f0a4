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

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "sentistab/core/divergence.hpp"
#include "sentistab/corpus/corpus.hpp"
#include "sentistab/error.hpp"
#include "sentistab/gateway/gateway.hpp"
#include "sentistab/rewrite/stability.hpp"

namespace sentistab::detector {

enum class Verdict { Llm, Human };

std::string_view to_string(Verdict v);

/// score < threshold => llm. Ties go to human.
inline Verdict decide(double score, double threshold) {
  return score < threshold ? Verdict::Llm : Verdict::Human;
}

struct DetectorConfig {
  core::Metric metric = core::Metric::Sdc;
  double threshold = 0.5;
  std::shared_ptr<const rewrite::PromptSet> prompts;
  std::shared_ptr<const sentiment::SentimentAnalyzer> analyzer;
  std::shared_ptr<const rewrite::Rewriter> rewriter;
  /// with_sdp is forced on when metric is Sdp.
  rewrite::RecordOptions record;
};

struct DetectionResult {
  std::string sample_id;
  core::DivergenceScore scores;
  core::Metric metric = core::Metric::Sdc;
  double score = 0.0;  // the selected metric
  double threshold = 0.0;
  Verdict verdict = Verdict::Human;
  std::size_t analyzer_calls = 0;
  gateway::CallLog llm_calls;
  core::StabilityRecord record;

  std::size_t llm_call_count() const noexcept { return llm_calls.size(); }
};

/// Field order: sample_id, metric, threshold, score, verdict, scores {sdc,
/// sdp, signed}, analyzer_calls, llm_call_count, llm_calls [{stage, key}].
/// Missing scores are null.
nlohmann::ordered_json to_json(const DetectionResult& r);

/// Runs the full pipeline on one sample. Throws EmptyText when the text has
/// no tokens; backend errors are rethrown with the sample id prepended.
DetectionResult detect(const corpus::TextSample& sample, const DetectorConfig& cfg);

struct SampleError {
  std::size_t index = 0;
  std::string sample_id;
  ErrorCode code = ErrorCode::InvalidArgument;
  std::string message;
};

struct BatchOutcome {
  std::vector<DetectionResult> results;  // successes, input order
  std::vector<SampleError> errors;       // failures, input order
};

/// Fail-soft batch over an OpenMP worker pool of `parallelism` threads.
/// Output does not depend on parallelism for a fixed cache. Throws
/// DuplicateId when two samples share an id.
BatchOutcome detect_batch(std::span<const corpus::TextSample> samples, const DetectorConfig& cfg,
                          int parallelism);

}  // namespace sentistab::detector
