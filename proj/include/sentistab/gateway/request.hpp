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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace sentistab::gateway {

struct ChatMessage {
  std::string role;
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

/// One chat-completion call. Temperature is pinned to 0.
struct CompletionRequest {
  std::string endpoint;
  std::string model;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  std::optional<std::int64_t> seed;
};

/// Where LLM-backed components send their requests.
struct LlmTarget {
  std::string endpoint;
  std::string model;
  std::optional<std::int64_t> seed;

  CompletionRequest request(std::vector<ChatMessage> messages) const {
    return CompletionRequest{endpoint, model, std::move(messages), 0.0, seed};
  }
};

/// Canonical string: compact JSON object with the keys endpoint, model,
/// temperature, seed, messages in that order; seed is null when unset;
/// each message is {"content":..,"role":..} (sorted keys). Non-ASCII is
/// emitted as raw UTF-8.
std::string canonicalize(const CompletionRequest& req);

/// 64 lowercase hex chars: SHA-256 of canonicalize(req).
std::string cache_key(const CompletionRequest& req);

/// Builds a request from its JSON form; message objects may list their keys
/// in any order. Throws ConfigError on missing fields.
CompletionRequest request_from_json(const nlohmann::json& j);

/// Wire body POSTed to {endpoint}/chat/completions.
std::string wire_body(const CompletionRequest& req);

/// Throws InvalidArgument on an empty message list or nonzero temperature.
void validate(const CompletionRequest& req);

}  // namespace sentistab::gateway
