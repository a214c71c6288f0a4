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

#include <filesystem>
#include <memory>
#include <optional>

#include "json.hpp"
#include "sentistab/detector/detector.hpp"
#include "sentistab/gateway/gateway.hpp"
#include "sentistab/sentiment/lexicon.hpp"

namespace sentistab {

/// Everything a detector run needs, wired together from a config document.
/// The gateway exists only when some backend is "llm".
struct Pipeline {
  std::shared_ptr<gateway::Gateway> gateway;
  std::shared_ptr<const sentiment::ValenceLexicon> lexicon;
  detector::DetectorConfig detector;
};

struct PipelineOverrides {
  std::optional<core::Metric> metric;
  std::optional<double> threshold;
  std::optional<gateway::Mode> mode;
  std::optional<std::size_t> prompt_count;
};

/// Builds a pipeline from the detector config schema documented in
/// docs/config.md. Relative paths resolve against base_dir. Throws
/// ConfigError naming the offending key.
Pipeline build_pipeline(const nlohmann::json& cfg, const std::filesystem::path& base_dir,
                        const PipelineOverrides& overrides = {});

/// Reads a JSON file; ConfigError when it does not parse.
nlohmann::json read_json_file(const std::filesystem::path& path);

/// Loads the lexicon named by `path` (or the bundled default when empty).
std::shared_ptr<const sentiment::ValenceLexicon> load_lexicon_or_default(
    const std::filesystem::path& path = {});

}  // namespace sentistab
