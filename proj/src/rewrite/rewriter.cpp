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

#include "sentistab/rewrite/rewriter.hpp"

#include "sentistab/error.hpp"
#include "sentistab/text.hpp"

namespace sentistab::rewrite {

namespace {

// Walks the text token by token; `on_token` decides what replaces a token
// (nullopt keeps it), everything between tokens is copied through.
template <typename Fn>
std::string map_tokens(std::string_view text, Fn&& on_token, bool& changed) {
  std::string out;
  out.reserve(text.size());
  changed = false;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_token_byte(static_cast<unsigned char>(text[i]))) {
      out.push_back(text[i++]);
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_token_byte(static_cast<unsigned char>(text[j]))) ++j;
    const auto raw = text.substr(i, j - i);
    const auto lowered = tokenize(raw);
    std::optional<std::string> replacement = on_token(lowered.front());
    if (replacement) {
      out += *replacement;
      changed = true;
    } else {
      out.append(raw);
    }
    i = j;
  }
  return out;
}

}  // namespace

std::string remove_lexicon_tokens(std::string_view text, const sentiment::ValenceLexicon& lex) {
  bool changed = false;
  auto out = map_tokens(
      text,
      [&](const std::string& token) -> std::optional<std::string> {
        if (lex.contains(token)) return std::string();
        return std::nullopt;
      },
      changed);
  return changed ? collapse_whitespace(out) : std::string(text);
}

std::string mask_lexicon_tokens(std::string_view text, const sentiment::ValenceLexicon& lex,
                                std::string_view sentinel) {
  bool changed = false;
  return map_tokens(
      text,
      [&](const std::string& token) -> std::optional<std::string> {
        if (lex.contains(token)) return std::string(sentinel);
        return std::nullopt;
      },
      changed);
}

std::string NeutralizingRewriter::rewrite(std::string_view text, const LerPrompt&,
                                          gateway::CallLog*) const {
  return remove_lexicon_tokens(text, *lexicon_);
}

std::string LossyPairRewriter::round_trip(std::string_view text, const InversePair&,
                                          gateway::CallLog*) const {
  return mask_lexicon_tokens(text, *lexicon_);
}

std::string LlmRewriter::apply(std::string_view instruction, std::string_view text,
                               std::string_view stage, gateway::CallLog* log) const {
  auto reply = gateway_.complete_logged(
      target_.request({{"system", std::string(instruction)}, {"user", std::string(text)}}), stage, log);
  if (reply.empty()) throw Error(ErrorCode::EmptyResult, "backend returned an empty rewrite");
  return reply;
}

std::string LlmRewriter::rewrite(std::string_view text, const LerPrompt& prompt,
                                 gateway::CallLog* log) const {
  return apply(prompt.instruction, text, "rewrite:" + prompt.id, log);
}

std::string LlmRewriter::round_trip(std::string_view text, const InversePair& pair,
                                    gateway::CallLog* log) const {
  const auto forward = apply(pair.forward, text, "forward:" + pair.id, log);
  return apply(pair.inverse, forward, "inverse:" + pair.id, log);
}

std::string rewrite(std::string_view text, std::string_view prompt_id, const PromptSet& ps,
                    const Rewriter& rw, gateway::CallLog* log) {
  return rw.rewrite(text, ps.prompt(prompt_id), log);
}

std::string round_trip(std::string_view text, std::string_view pair_id, const PromptSet& ps,
                       const Rewriter& rw, gateway::CallLog* log) {
  return rw.round_trip(text, ps.pair(pair_id), log);
}

}  // namespace sentistab::rewrite
