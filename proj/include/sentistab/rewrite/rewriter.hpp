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
#include <string>
#include <string_view>

#include "sentistab/gateway/gateway.hpp"
#include "sentistab/rewrite/prompt_set.hpp"
#include "sentistab/sentiment/lexicon.hpp"

namespace sentistab::rewrite {

/// Token written by mock_lossy_pair in place of every valence word.
inline constexpr std::string_view kLossySentinel = "x17";

/// F1(. | p_i) and the inverse-pair round trip. Mock backends never touch
/// the network.
class Rewriter {
 public:
  virtual ~Rewriter() = default;
  virtual std::string backend_id() const = 0;
  virtual std::string rewrite(std::string_view text, const LerPrompt& prompt,
                              gateway::CallLog* log = nullptr) const = 0;
  virtual std::string round_trip(std::string_view text, const InversePair& pair,
                                 gateway::CallLog* log = nullptr) const = 0;
};

/// Returns every text verbatim.
class IdentityRewriter final : public Rewriter {
 public:
  std::string backend_id() const override { return "mock_identity"; }
  std::string rewrite(std::string_view text, const LerPrompt&, gateway::CallLog*) const override {
    return std::string(text);
  }
  std::string round_trip(std::string_view text, const InversePair&, gateway::CallLog*) const override {
    return std::string(text);
  }
};

/// Rewrite drops every lexicon token and collapses whitespace (only when
/// something was dropped). Round trip is the identity.
class NeutralizingRewriter final : public Rewriter {
 public:
  explicit NeutralizingRewriter(std::shared_ptr<const sentiment::ValenceLexicon> lexicon)
      : lexicon_(std::move(lexicon)) {}

  std::string backend_id() const override { return "mock_neutralizing"; }
  std::string rewrite(std::string_view text, const LerPrompt&, gateway::CallLog*) const override;
  std::string round_trip(std::string_view text, const InversePair&, gateway::CallLog*) const override {
    return std::string(text);
  }

 private:
  std::shared_ptr<const sentiment::ValenceLexicon> lexicon_;
};

/// Rewrite is the identity. The forward map of a round trip replaces every
/// lexicon token with kLossySentinel and the inverse map is the identity, so
/// valence information is lost exactly where a text carries some.
class LossyPairRewriter final : public Rewriter {
 public:
  explicit LossyPairRewriter(std::shared_ptr<const sentiment::ValenceLexicon> lexicon)
      : lexicon_(std::move(lexicon)) {}

  std::string backend_id() const override { return "mock_lossy_pair"; }
  std::string rewrite(std::string_view text, const LerPrompt&, gateway::CallLog*) const override {
    return std::string(text);
  }
  std::string round_trip(std::string_view text, const InversePair&, gateway::CallLog*) const override;

 private:
  std::shared_ptr<const sentiment::ValenceLexicon> lexicon_;
};

/// Chat-completion backed rewriter: system message = instruction, user
/// message = text, temperature 0. An empty completion raises EmptyResult.
class LlmRewriter final : public Rewriter {
 public:
  LlmRewriter(gateway::Gateway& gw, gateway::LlmTarget target)
      : gateway_(gw), target_(std::move(target)) {}

  std::string backend_id() const override { return "llm"; }
  std::string rewrite(std::string_view text, const LerPrompt& prompt,
                      gateway::CallLog* log = nullptr) const override;
  std::string round_trip(std::string_view text, const InversePair& pair,
                         gateway::CallLog* log = nullptr) const override;

 private:
  std::string apply(std::string_view instruction, std::string_view text, std::string_view stage,
                    gateway::CallLog* log) const;

  gateway::Gateway& gateway_;
  gateway::LlmTarget target_;
};

/// Looks the prompt up in `ps` (UnknownPrompt) and rewrites.
std::string rewrite(std::string_view text, std::string_view prompt_id, const PromptSet& ps,
                    const Rewriter& rw, gateway::CallLog* log = nullptr);
/// Looks the pair up in `ps` (UnknownPair) and round-trips.
std::string round_trip(std::string_view text, std::string_view pair_id, const PromptSet& ps,
                       const Rewriter& rw, gateway::CallLog* log = nullptr);

/// Token-level helpers behind the mock backends.
std::string remove_lexicon_tokens(std::string_view text, const sentiment::ValenceLexicon& lex);
std::string mask_lexicon_tokens(std::string_view text, const sentiment::ValenceLexicon& lex,
                                std::string_view sentinel = kLossySentinel);

}  // namespace sentistab::rewrite
