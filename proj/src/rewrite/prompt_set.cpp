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

#include "sentistab/rewrite/prompt_set.hpp"

#include <array>
#include <fstream>
#include <set>

#include "sentistab/error.hpp"

namespace sentistab::rewrite {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kMaxBuiltinPrompts> kBuiltinLer = {
    "Please rewrite this more straightforwardly.",
    "Polish this in a machine-like objective tone.",
    "Rewrite this text in a neutral, matter-of-fact register.",
    "Decrease the emotional intensity while preserving semantic content.",
    "Rewrite this paragraph objectively.",
    "Restate this text plainly, without emotive words.",
    "Rewrite this as a detached factual summary of the same content.",
    "Use a machine-like tone to rewrite this text.",
    "Rewrite this text calmly, keeping every fact unchanged.",
};

InversePair default_pair() {
  return {"person", "Convert first person to third person.",
          "Convert third person to first person."};
}

}  // namespace

PromptSet::PromptSet(std::vector<LerPrompt> ler, std::vector<InversePair> pairs,
                     sentiment::SentimentPrompt sentiment)
    : ler_(std::move(ler)), pairs_(std::move(pairs)), sentiment_(std::move(sentiment)) {
  if (ler_.empty()) throw Error(ErrorCode::ConfigError, "prompt set needs at least one LER prompt");
  std::set<std::string> ids;
  for (const auto& p : ler_) {
    if (p.id.empty() || p.instruction.empty()) {
      throw Error(ErrorCode::ConfigError, "LER prompt with empty id or instruction");
    }
    if (!ids.insert(p.id).second) throw Error(ErrorCode::ConfigError, "duplicate prompt id '" + p.id + "'");
  }
  std::set<std::string> pair_ids;
  for (const auto& p : pairs_) {
    if (p.id.empty() || p.forward.empty() || p.inverse.empty()) {
      throw Error(ErrorCode::ConfigError, "inverse pair with an empty field");
    }
    if (!pair_ids.insert(p.id).second) throw Error(ErrorCode::ConfigError, "duplicate pair id '" + p.id + "'");
  }
}

PromptSet PromptSet::builtin(std::size_t ler_count) {
  if (ler_count == 0 || ler_count > kMaxBuiltinPrompts) {
    throw Error(ErrorCode::ConfigError, "built-in prompt count must be in 1..9");
  }
  std::vector<LerPrompt> ler;
  for (std::size_t i = 0; i < ler_count; ++i) {
    ler.push_back({"ler" + std::to_string(i + 1), std::string(kBuiltinLer[i])});
  }
  return PromptSet(std::move(ler), {default_pair()}, sentiment::SentimentPrompt::default_prompt());
}

PromptSet PromptSet::first(std::size_t count) const {
  if (count == 0 || count > ler_.size()) {
    throw Error(ErrorCode::ConfigError, "requested " + std::to_string(count) + " LER prompts, set has " +
                                            std::to_string(ler_.size()));
  }
  return PromptSet({ler_.begin(), ler_.begin() + static_cast<std::ptrdiff_t>(count)}, pairs_, sentiment_);
}

const LerPrompt& PromptSet::prompt(std::string_view id) const {
  for (const auto& p : ler_) {
    if (p.id == id) return p;
  }
  throw Error(ErrorCode::UnknownPrompt, "no LER prompt '" + std::string(id) + "'");
}

const InversePair& PromptSet::pair(std::string_view id) const {
  for (const auto& p : pairs_) {
    if (p.id == id) return p;
  }
  throw Error(ErrorCode::UnknownPair, "no inverse pair '" + std::string(id) + "'");
}

PromptSet prompt_set_from_json(const json& j) {
  try {
    std::vector<LerPrompt> ler;
    for (const auto& p : j.at("ler")) {
      ler.push_back({p.at("id").get<std::string>(), p.at("instruction").get<std::string>()});
    }
    std::vector<InversePair> pairs;
    if (j.contains("pairs")) {
      for (const auto& p : j.at("pairs")) {
        pairs.push_back({p.at("id").get<std::string>(), p.at("forward").get<std::string>(),
                         p.at("inverse").get<std::string>()});
      }
    } else {
      pairs.push_back(default_pair());
    }
    auto sentiment = j.contains("sentiment")
                         ? sentiment::SentimentPrompt(j.at("sentiment").get<std::string>())
                         : sentiment::SentimentPrompt::default_prompt();
    return PromptSet(std::move(ler), std::move(pairs), std::move(sentiment));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("invalid prompt set: ") + e.what());
  }
}

json to_json(const PromptSet& ps) {
  json j;
  j["ler"] = json::array();
  for (const auto& p : ps.ler()) j["ler"].push_back({{"id", p.id}, {"instruction", p.instruction}});
  j["pairs"] = json::array();
  for (const auto& p : ps.pairs()) {
    j["pairs"].push_back({{"id", p.id}, {"forward", p.forward}, {"inverse", p.inverse}});
  }
  j["sentiment"] = ps.sentiment().template_text();
  return j;
}

PromptSet load_prompt_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open prompt set " + path.string());
  auto j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::ConfigError, "prompt set " + path.string() + " is not valid JSON");
  return prompt_set_from_json(j);
}

}  // namespace sentistab::rewrite
