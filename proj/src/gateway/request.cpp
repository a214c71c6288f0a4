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

#include "sentistab/gateway/request.hpp"

#include "sentistab/error.hpp"
#include "sentistab/hashing.hpp"
#include "sentistab/text.hpp"

namespace sentistab::gateway {

using nlohmann::json;

namespace {

std::string quote(const std::string& s) {
  return json(s).dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace

std::string canonicalize(const CompletionRequest& req) {
  std::string out = "{\"endpoint\":" + quote(req.endpoint);
  out += ",\"model\":" + quote(req.model);
  out += ",\"temperature\":" + format_double(req.temperature);
  out += ",\"seed\":" + (req.seed ? std::to_string(*req.seed) : std::string("null"));
  out += ",\"messages\":[";
  for (std::size_t i = 0; i < req.messages.size(); ++i) {
    if (i) out += ',';
    out += "{\"content\":" + quote(req.messages[i].content);
    out += ",\"role\":" + quote(req.messages[i].role) + "}";
  }
  out += "]}";
  return out;
}

std::string cache_key(const CompletionRequest& req) { return sha256_hex(canonicalize(req)); }

CompletionRequest request_from_json(const json& j) {
  try {
    CompletionRequest req;
    req.endpoint = j.at("endpoint").get<std::string>();
    req.model = j.at("model").get<std::string>();
    req.temperature = j.value("temperature", 0.0);
    if (j.contains("seed") && !j.at("seed").is_null()) req.seed = j.at("seed").get<std::int64_t>();
    for (const auto& m : j.at("messages")) {
      req.messages.push_back({m.at("role").get<std::string>(), m.at("content").get<std::string>()});
    }
    return req;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("invalid request JSON: ") + e.what());
  }
}

std::string wire_body(const CompletionRequest& req) {
  json body;
  body["model"] = req.model;
  body["temperature"] = req.temperature;
  auto& messages = body["messages"] = json::array();
  for (const auto& m : req.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
  if (req.seed) body["seed"] = *req.seed;
  return body.dump(-1, ' ', false, json::error_handler_t::replace);
}

void validate(const CompletionRequest& req) {
  if (req.messages.empty()) throw Error(ErrorCode::InvalidArgument, "request has no messages");
  if (req.temperature != 0.0) throw Error(ErrorCode::InvalidArgument, "temperature must be 0");
}

}  // namespace sentistab::gateway
