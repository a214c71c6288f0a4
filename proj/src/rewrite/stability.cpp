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

#include "sentistab/rewrite/stability.hpp"

#include <vector>

#include "sentistab/error.hpp"

namespace sentistab::rewrite {

core::StabilityRecord build_stability_record(std::string_view text, const PromptSet& ps,
                                             const Rewriter& rw,
                                             const sentiment::SentimentAnalyzer& analyzer,
                                             const RecordOptions& opts, gateway::CallLog* log) {
  core::StabilityRecord rec;
  rec.original = analyzer.analyze(text, log);

  std::vector<std::string> rewritten;
  rewritten.reserve(ps.ler().size());
  for (const auto& prompt : ps.ler()) {
    try {
      rewritten.push_back(rw.rewrite(text, prompt, log));
      rec.rewrites.push_back({prompt.id, analyzer.analyze(rewritten.back(), log)});
    } catch (const Error& e) {
      throw e.with_context("prompt " + prompt.id);
    }
  }

  if (opts.with_sdp) {
    for (std::size_t j = 0; j < ps.pairs().size(); ++j) {
      const auto& pair = ps.pairs()[j];
      const std::string_view source =
          opts.sdp_on_rewrite ? std::string_view(rewritten[j % rewritten.size()]) : text;
      try {
        const auto back = rw.round_trip(source, pair, log);
        rec.round_trips.push_back({pair.id, analyzer.analyze(back, log)});
      } catch (const Error& e) {
        throw e.with_context("pair " + pair.id);
      }
    }
  }
  return rec;
}

}  // namespace sentistab::rewrite
