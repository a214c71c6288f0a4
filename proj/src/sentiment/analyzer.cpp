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

#include "sentistab/sentiment/analyzer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>

#include "json.hpp"
#include "sentistab/error.hpp"

namespace sentistab::sentiment {

using nlohmann::json;

core::SentimentDistribution LexiconAnalyzer::analyze(std::string_view text,
                                                     gateway::CallLog*) const {
  return lexicon_analyze(text, *lexicon_);
}

SentimentPrompt SentimentPrompt::default_prompt() {
  return SentimentPrompt(
      "Classify the sentiment of the text below. Reply with three probabilities "
      "for the classes negative, neutral and positive, in that order, separated "
      "by commas and summing to 1.\n\nText:\n{text}");
}

SentimentPrompt::SentimentPrompt(std::string template_text) : template_(std::move(template_text)) {
  const auto first = template_.find(kTextPlaceholder);
  if (first == std::string::npos ||
      template_.find(kTextPlaceholder, first + kTextPlaceholder.size()) != std::string::npos) {
    throw Error(ErrorCode::ConfigError, "sentiment prompt must contain exactly one {text} placeholder");
  }
}

std::string SentimentPrompt::render(std::string_view text) const {
  std::string out = template_;
  out.replace(out.find(kTextPlaceholder), kTextPlaceholder.size(), text);
  return out;
}

namespace {

bool valid_triple(const std::array<double, 3>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x) && x >= 0.0; });
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string strip_code_fence(std::string_view reply) {
  std::string s(reply);
  const auto open = s.find("```");
  if (open == std::string::npos) return s;
  const auto body = s.find('\n', open);
  const auto close = s.find("```", open + 3);
  if (body == std::string::npos || close == std::string::npos || close < body) return s;
  return s.substr(body + 1, close - body - 1);
}

std::optional<std::array<double, 3>> from_json(std::string_view reply) {
  auto j = json::parse(strip_code_fence(reply), nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  std::array<double, 3> v{};
  if (j.is_array() && j.size() == 3) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (!j[i].is_number()) return std::nullopt;
      v[i] = j[i].get<double>();
    }
    return v;
  }
  if (j.is_object()) {
    static constexpr std::array<std::string_view, 3> kNames = {"negative", "neutral", "positive"};
    std::array<bool, 3> seen{};
    for (const auto& [key, value] : j.items()) {
      const auto k = lower(key);
      for (std::size_t i = 0; i < 3; ++i) {
        if (k == kNames[i] && value.is_number()) {
          v[i] = value.get<double>();
          seen[i] = true;
        }
      }
    }
    if (seen[0] && seen[1] && seen[2]) return v;
  }
  return std::nullopt;
}

const std::string kNumber = R"(([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?))";

std::optional<std::array<double, 3>> from_labels(const std::string& reply) {
  static const std::regex labeled("\\b(negative|neutral|positive)\\b[\"']?\\s*[:=]\\s*" + kNumber,
                                  std::regex::icase);
  std::array<double, 3> v{};
  std::array<bool, 3> seen{};
  for (std::sregex_iterator it(reply.begin(), reply.end(), labeled), end; it != end; ++it) {
    const auto label = lower((*it)[1].str());
    const std::size_t idx = label == "negative" ? 0 : label == "neutral" ? 1 : 2;
    if (!seen[idx]) {
      v[idx] = std::stod((*it)[2].str());
      seen[idx] = true;
    }
  }
  if (seen[0] && seen[1] && seen[2]) return v;
  return std::nullopt;
}

std::optional<std::array<double, 3>> from_bare_numbers(const std::string& reply) {
  static const std::regex number(kNumber);
  std::vector<double> found;
  for (std::sregex_iterator it(reply.begin(), reply.end(), number), end; it != end; ++it) {
    found.push_back(std::stod((*it)[1].str()));
    if (found.size() > 3) return std::nullopt;
  }
  if (found.size() != 3) return std::nullopt;
  return std::array<double, 3>{found[0], found[1], found[2]};
}

}  // namespace

std::optional<std::array<double, 3>> parse_sentiment_reply(std::string_view reply) {
  const std::string text(reply);
  for (auto parser : {+[](const std::string& s) { return from_json(s); }, &from_labels, &from_bare_numbers}) {
    std::optional<std::array<double, 3>> parsed;
    try {
      parsed = parser(text);
    } catch (const std::out_of_range&) {  // stod overflow
      parsed.reset();
    }
    if (parsed) return valid_triple(*parsed) ? parsed : std::nullopt;
  }
  return std::nullopt;
}

core::SentimentDistribution LlmAnalyzer::analyze(std::string_view text, gateway::CallLog* log) const {
  std::vector<gateway::ChatMessage> messages = {{"user", prompt_.render(text)}};
  const auto reply = gateway_.complete_logged(target_.request(messages), "sentiment", log);
  if (auto parsed = parse_sentiment_reply(reply)) return core::clamp_normalize(*parsed);

  messages.push_back({"assistant", reply});
  messages.push_back({"user", std::string(kFormatRepairInstruction)});
  const auto repaired = gateway_.complete_logged(target_.request(messages), "sentiment:repair", log);
  if (auto parsed = parse_sentiment_reply(repaired)) return core::clamp_normalize(*parsed);
  throw Error(ErrorCode::MalformedReply,
              "sentiment reply has no (negative, neutral, positive) triple: '" + repaired + "'");
}

}  // namespace sentistab::sentiment
