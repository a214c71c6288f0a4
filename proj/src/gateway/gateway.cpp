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

#include "sentistab/gateway/gateway.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "sentistab/error.hpp"
#include "sentistab/hashing.hpp"

namespace sentistab::gateway {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Live: return "live";
    case Mode::Replay: return "replay";
    case Mode::Record: return "record";
  }
  return "live";
}

Mode parse_mode(std::string_view name) {
  if (name == "live") return Mode::Live;
  if (name == "replay") return Mode::Replay;
  if (name == "record") return Mode::Record;
  throw Error(ErrorCode::ConfigError, "unknown gateway mode '" + std::string(name) + "'");
}

void validate(const GatewayConfig& cfg) {
  if (cfg.max_in_flight < 1) throw Error(ErrorCode::ConfigError, "max_in_flight must be >= 1");
  if (cfg.max_retries < 0) throw Error(ErrorCode::ConfigError, "max_retries must be >= 0");
  if (cfg.timeout_seconds <= 0) throw Error(ErrorCode::ConfigError, "timeout must be positive");
  if (cfg.backoff_base_seconds < 0 || cfg.backoff_factor < 1 || cfg.backoff_jitter < 0 ||
      cfg.backoff_jitter >= 1) {
    throw Error(ErrorCode::ConfigError, "invalid backoff settings");
  }
  if (cfg.cache_dir.empty()) throw Error(ErrorCode::ConfigError, "cache_dir must be set");
}

// ---------------------------------------------------------------- cache

fs::path cache_path(const fs::path& cache_dir, const std::string& key) {
  return cache_dir / key.substr(0, 2) / (key + ".json");
}

std::optional<std::string> cache_read(const fs::path& cache_dir, const std::string& key) {
  const auto path = cache_path(cache_dir, key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    auto entry = json::parse(in);
    return entry.at("reply").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedResponse, "corrupt cache entry " + path.string() + ": " + e.what());
  }
}

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::atomic<std::uint64_t> g_temp_counter{0};

}  // namespace

void cache_write(const fs::path& cache_dir, const std::string& key, const std::string& canonical,
                 const std::string& reply) {
  const auto path = cache_path(cache_dir, key);
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create cache directory: " + ec.message());

  json entry = {{"request", canonical}, {"reply", reply}, {"timestamp", utc_timestamp()}};
  std::ostringstream tid;
  tid << std::this_thread::get_id();
  auto tmp = path;
  tmp += ".tmp." + tid.str() + "." + std::to_string(g_temp_counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << entry.dump(2, ' ', false, json::error_handler_t::replace) << '\n';
    if (!out) throw Error(ErrorCode::Io, "cannot write cache entry " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::Io, "cannot publish cache entry: " + ec.message());
  }
}

CacheSummary cache_summary(const fs::path& cache_dir) {
  CacheSummary summary;
  if (!fs::exists(cache_dir)) return summary;
  for (const auto& e : fs::recursive_directory_iterator(cache_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") {
      ++summary.entries;
      summary.bytes += e.file_size();
    }
  }
  return summary;
}

std::size_t cache_clear(const fs::path& cache_dir) {
  std::size_t removed = 0;
  if (!fs::exists(cache_dir)) return removed;
  std::vector<fs::path> victims;
  for (const auto& e : fs::recursive_directory_iterator(cache_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") victims.push_back(e.path());
  }
  for (const auto& p : victims) removed += fs::remove(p) ? 1 : 0;
  for (const auto& e : fs::directory_iterator(cache_dir)) {
    std::error_code ec;
    if (e.is_directory()) fs::remove(e.path(), ec);  // only succeeds when empty
  }
  return removed;
}

// -------------------------------------------------------------- gateway

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;    // prefix + /chat/completions
};

Endpoint split_endpoint(const std::string& endpoint) {
  const auto scheme_end = endpoint.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::ConfigError, "endpoint must start with http:// or https://: " + endpoint);
  }
  const auto path_start = endpoint.find('/', scheme_end + 3);
  Endpoint ep;
  ep.origin = endpoint.substr(0, path_start);
  std::string prefix = path_start == std::string::npos ? "" : endpoint.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  ep.path = prefix + "/chat/completions";
  return ep;
}

struct Attempt {
  std::optional<std::string> reply;
  ErrorCode code = ErrorCode::NetworkError;
  std::string message;
  bool retryable = false;
};

Attempt post_once(const CompletionRequest& req, const GatewayConfig& cfg, const std::string& api_key) {
  const auto ep = split_endpoint(req.endpoint);
  httplib::Client client(ep.origin);
  const auto timeout = std::chrono::duration<double>(cfg.timeout_seconds);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout);
  client.set_connection_timeout(micros);
  client.set_read_timeout(micros);
  client.set_write_timeout(micros);
  client.set_bearer_token_auth(api_key);

  Attempt out;
  auto res = client.Post(ep.path, wire_body(req), "application/json");
  if (!res) {
    const auto err = res.error();
    out.retryable = true;
    if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read) {
      out.code = ErrorCode::Timeout;
    } else {
      out.code = ErrorCode::NetworkError;
    }
    out.message = "request to " + req.endpoint + " failed: " + httplib::to_string(err);
    return out;
  }
  const int status = res->status;
  if (status == 401 || status == 403) {
    out.code = ErrorCode::AuthError;
    out.message = "HTTP " + std::to_string(status) + " from " + req.endpoint;
    return out;
  }
  if (status == 429) {
    out.code = ErrorCode::RateLimited;
    out.retryable = true;
    out.message = "HTTP 429 from " + req.endpoint;
    return out;
  }
  if (status < 200 || status >= 300) {
    out.code = ErrorCode::HttpError;
    out.retryable = status >= 500;
    out.message = "HTTP " + std::to_string(status) + " from " + req.endpoint;
    return out;
  }
  try {
    auto body = json::parse(res->body);
    const auto& content = body.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) throw json::type_error::create(302, "content is not a string", nullptr);
    out.reply = content.get<std::string>();
  } catch (const json::exception& e) {
    out.code = ErrorCode::MalformedResponse;
    out.message = std::string("response lacks choices[0].message.content: ") + e.what();
  }
  return out;
}

}  // namespace

Gateway::Gateway(GatewayConfig cfg)
    : cfg_(std::move(cfg)), slots_((validate(cfg_), cfg_.max_in_flight)) {}

Gateway::~Gateway() = default;

GatewayStats Gateway::stats() const {
  return {calls_.load(), cache_hits_.load(), upstream_calls_.load(), network_requests_.load()};
}

CompletionResult Gateway::complete(const CompletionRequest& req) {
  validate(req);
  ++calls_;
  const std::string key = cache_key(req);

  std::promise<CompletionResult> promise;
  std::shared_future<CompletionResult> shared;
  {
    std::unique_lock lock(mu_);
    if (auto it = inflight_.find(key); it != inflight_.end()) {
      shared = it->second;
    } else {
      if (cfg_.mode != Mode::Record) {
        if (auto cached = cache_read(cfg_.cache_dir, key)) {
          ++cache_hits_;
          return {std::move(*cached), key, true, 0};
        }
      }
      if (cfg_.mode == Mode::Replay) {
        throw Error(ErrorCode::MissingCacheEntry, "no cached reply for key " + key + " (replay mode)");
      }
      shared = promise.get_future().share();
      inflight_.emplace(key, shared);
      lock.unlock();

      // Leader: perform the upstream call and publish the outcome.
      try {
        auto result = fetch_upstream(req, key);
        cache_write(cfg_.cache_dir, key, canonicalize(req), result.text);
        promise.set_value(result);
      } catch (...) {
        promise.set_exception(std::current_exception());
      }
      std::lock_guard relock(mu_);
      inflight_.erase(key);
      return shared.get();
    }
  }
  // Follower: the leader's reply is shared, so it counts as a cache hit.
  auto result = shared.get();
  ++cache_hits_;
  result.from_cache = true;
  result.attempts = 0;
  return result;
}

std::string Gateway::complete_logged(const CompletionRequest& req, std::string_view stage,
                                     CallLog* log) {
  auto result = complete(req);
  if (log) log->push_back({std::string(stage), result.cache_key, result.from_cache});
  return std::move(result.text);
}

CompletionResult Gateway::fetch_upstream(const CompletionRequest& req, const std::string& key) {
  const char* api_key = std::getenv(cfg_.api_key_env.c_str());
  if (api_key == nullptr || *api_key == '\0') {
    throw Error(ErrorCode::AuthError, "environment variable " + cfg_.api_key_env + " is not set");
  }
  ++upstream_calls_;
  HashStream jitter(hash_rank(key), "backoff");
  Attempt last;
  for (int attempt = 1; attempt <= cfg_.max_retries + 1; ++attempt) {
    if (attempt > 1) {
      const double u = static_cast<double>(jitter.next() >> 11) * 0x1.0p-53;  // [0, 1)
      const double delay = cfg_.backoff_base_seconds *
                           std::pow(cfg_.backoff_factor, attempt - 2) *
                           (1.0 + cfg_.backoff_jitter * (2.0 * u - 1.0));
      std::this_thread::sleep_for(std::chrono::duration<double>(delay));
    }
    slots_.acquire();
    ++network_requests_;
    try {
      last = post_once(req, cfg_, api_key);
    } catch (...) {
      slots_.release();
      throw;
    }
    slots_.release();
    if (last.reply) return {std::move(*last.reply), key, false, attempt};
    if (!last.retryable) break;
  }
  throw Error(last.code, last.message);
}

}  // namespace sentistab::gateway
