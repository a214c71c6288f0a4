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

#include <string_view>

#include "sentistab/core/divergence.hpp"
#include "sentistab/rewrite/rewriter.hpp"
#include "sentistab/sentiment/analyzer.hpp"

namespace sentistab::rewrite {

struct RecordOptions {
  /// Also run every inverse pair and analyze the round trips.
  bool with_sdp = false;
  /// Round-trip the LER rewrite (pair j uses the rewrite of prompt j mod I)
  /// instead of the original text.
  bool sdp_on_rewrite = true;
};

/// sigma(original) once, one rewrite + analysis per LER prompt (in prompt
/// set order) and, with_sdp, one round trip + analysis per inverse pair.
/// Analyzer calls: 1 + I (+ number of pairs with SDP). Backend errors are
/// rethrown annotated with the prompt or pair id.
core::StabilityRecord build_stability_record(std::string_view text, const PromptSet& ps,
                                             const Rewriter& rw,
                                             const sentiment::SentimentAnalyzer& analyzer,
                                             const RecordOptions& opts = {},
                                             gateway::CallLog* log = nullptr);

}  // namespace sentistab::rewrite
