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
#include <string>
#include <vector>

#include "json.hpp"
#include "sentistab/sentiment/analyzer.hpp"

namespace sentistab::rewrite {

/// One low-emotional rewriting instruction.
struct LerPrompt {
  std::string id;
  std::string instruction;
};

/// Forward / inverse instruction pair whose composition should be a
/// semantic round trip.
struct InversePair {
  std::string id;
  std::string forward;
  std::string inverse;
};

inline constexpr std::size_t kMaxBuiltinPrompts = 9;

class PromptSet {
 public:
  /// Throws ConfigError: empty ler list, duplicate ids, empty instructions.
  PromptSet(std::vector<LerPrompt> ler, std::vector<InversePair> pairs,
            sentiment::SentimentPrompt sentiment);

  /// The first `ler_count` built-in instructions (1..9) plus the default
  /// person-conversion pair and the default sentiment prompt.
  static PromptSet builtin(std::size_t ler_count = 3);

  const std::vector<LerPrompt>& ler() const noexcept { return ler_; }
  const std::vector<InversePair>& pairs() const noexcept { return pairs_; }
  const sentiment::SentimentPrompt& sentiment() const noexcept { return sentiment_; }

  /// Keeps the first `count` LER prompts (ConfigError if count is 0 or too large).
  PromptSet first(std::size_t count) const;

  const LerPrompt& prompt(std::string_view id) const;    // UnknownPrompt
  const InversePair& pair(std::string_view id) const;    // UnknownPair

 private:
  std::vector<LerPrompt> ler_;
  std::vector<InversePair> pairs_;
  sentiment::SentimentPrompt sentiment_;
};

/// JSON form: {"ler": [{"id", "instruction"}...], "pairs": [{"id", "forward",
/// "inverse"}...], "sentiment": "<template with {text}>"}. "pairs" and
/// "sentiment" are optional and fall back to the built-ins.
PromptSet prompt_set_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PromptSet& ps);
PromptSet load_prompt_set(const std::filesystem::path& path);

}  // namespace sentistab::rewrite
