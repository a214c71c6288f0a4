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

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "sentistab/core/distribution.hpp"
#include "sentistab/gateway/gateway.hpp"
#include "sentistab/sentiment/lexicon.hpp"

namespace sentistab::sentiment {

/// Produces sigma(x) for a text.
class SentimentAnalyzer {
 public:
  virtual ~SentimentAnalyzer() = default;
  virtual std::string backend_id() const = 0;
  /// LLM calls made on behalf of this analysis are appended to log.
  virtual core::SentimentDistribution analyze(std::string_view text,
                                              gateway::CallLog* log = nullptr) const = 0;
};

class LexiconAnalyzer final : public SentimentAnalyzer {
 public:
  explicit LexiconAnalyzer(std::shared_ptr<const ValenceLexicon> lexicon)
      : lexicon_(std::move(lexicon)) {}

  std::string backend_id() const override { return "lexicon"; }
  core::SentimentDistribution analyze(std::string_view text,
                                      gateway::CallLog* log = nullptr) const override;
  const ValenceLexicon& lexicon() const noexcept { return *lexicon_; }

 private:
  std::shared_ptr<const ValenceLexicon> lexicon_;
};

inline constexpr std::string_view kTextPlaceholder = "{text}";

/// Instruction sent to the LLM analyzer; `template_text` holds exactly one
/// {text} placeholder.
class SentimentPrompt {
 public:
  static SentimentPrompt default_prompt();
  /// Throws ConfigError unless the template holds exactly one placeholder.
  explicit SentimentPrompt(std::string template_text);

  const std::string& template_text() const noexcept { return template_; }
  std::string render(std::string_view text) const;

 private:
  std::string template_;
};

/// Extracts (negative, neutral, positive) from a model reply. Accepts a JSON
/// array of three numbers, a JSON object keyed by class name, labeled
/// "negative: x" lines, or exactly three bare numbers (comma-separated or
/// otherwise). Returns nullopt when none of these yields three finite
/// non-negative numbers.
std::optional<std::array<double, 3>> parse_sentiment_reply(std::string_view reply);

inline constexpr std::string_view kFormatRepairInstruction =
    "Your previous reply could not be parsed. Reply with exactly three "
    "non-negative numbers separated by commas, in the order negative, "
    "neutral, positive, and nothing else.";

class LlmAnalyzer final : public SentimentAnalyzer {
 public:
  LlmAnalyzer(gateway::Gateway& gw, gateway::LlmTarget target, SentimentPrompt prompt)
      : gateway_(gw), target_(std::move(target)), prompt_(std::move(prompt)) {}

  std::string backend_id() const override { return "llm"; }
  /// One request at temperature 0; on an unparseable reply, one follow-up
  /// with kFormatRepairInstruction, then MalformedReply.
  core::SentimentDistribution analyze(std::string_view text,
                                      gateway::CallLog* log = nullptr) const override;

 private:
  gateway::Gateway& gateway_;
  gateway::LlmTarget target_;
  SentimentPrompt prompt_;
};

}  // namespace sentistab::sentiment
