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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <unordered_map>
#include <vector>

#include "sentistab/gateway/request.hpp"

namespace sentistab::gateway {

/// live: cache first, network on miss. record: always network, overwrite
/// the cache. replay: cache only, a miss is an error.
enum class Mode { Live, Replay, Record };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view name);

struct GatewayConfig {
  int max_in_flight = 4;
  int max_retries = 3;
  double backoff_base_seconds = 1.0;
  double backoff_factor = 2.0;
  double backoff_jitter = 0.2;
  double timeout_seconds = 60.0;
  std::filesystem::path cache_dir = ".sentistab-cache";
  Mode mode = Mode::Live;
  std::string api_key_env = "SENTI_API_KEY";
};

void validate(const GatewayConfig& cfg);

/// One gateway call as seen by the caller; collected per sample for audit.
struct LlmCall {
  std::string stage;
  std::string cache_key;
  bool from_cache = false;

  friend bool operator==(const LlmCall&, const LlmCall&) = default;
};
using CallLog = std::vector<LlmCall>;

struct CompletionResult {
  std::string text;
  std::string cache_key;
  bool from_cache = false;
  int attempts = 0;
};

struct GatewayStats {
  std::uint64_t calls = 0;              // complete() invocations
  std::uint64_t cache_hits = 0;
  std::uint64_t upstream_calls = 0;     // logical misses that went to the network
  std::uint64_t network_requests = 0;   // HTTP attempts, retries included
};

/// Thread-safe chat-completion client with a content-addressed disk cache.
/// Concurrent misses on one key share a single upstream call; at most
/// max_in_flight HTTP requests are outstanding at any time.
class Gateway {
 public:
  explicit Gateway(GatewayConfig cfg);
  ~Gateway();

  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  CompletionResult complete(const CompletionRequest& req);

  /// complete() plus an audit entry appended to log (when non-null).
  std::string complete_logged(const CompletionRequest& req, std::string_view stage, CallLog* log);

  GatewayStats stats() const;
  const GatewayConfig& config() const noexcept { return cfg_; }

 private:
  CompletionResult fetch_upstream(const CompletionRequest& req, const std::string& key);

  GatewayConfig cfg_;
  std::counting_semaphore<1 << 20> slots_;
  std::mutex mu_;
  std::unordered_map<std::string, std::shared_future<CompletionResult>> inflight_;
  std::atomic<std::uint64_t> calls_{0}, cache_hits_{0}, upstream_calls_{0}, network_requests_{0};
};

// Cache directory layout: {cache_dir}/{first 2 hex}/{full hex}.json holding
// {"request": canonical string, "reply": text, "timestamp": ISO-8601 UTC}.
std::filesystem::path cache_path(const std::filesystem::path& cache_dir, const std::string& key);
std::optional<std::string> cache_read(const std::filesystem::path& cache_dir, const std::string& key);
/// Write-temp-then-rename so readers never see a partial file.
void cache_write(const std::filesystem::path& cache_dir, const std::string& key,
                 const std::string& canonical, const std::string& reply);

struct CacheSummary {
  std::size_t entries = 0;
  std::uintmax_t bytes = 0;
};
CacheSummary cache_summary(const std::filesystem::path& cache_dir);
/// Removes every cache entry; returns the number removed.
std::size_t cache_clear(const std::filesystem::path& cache_dir);

}  // namespace sentistab::gateway
