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

#include <gtest/gtest.h>

#include <future>
#include <thread>

#include "json.hpp"
#include "sentistab/error.hpp"
#include "sentistab/gateway/gateway.hpp"
#include "support/fake_llm.hpp"
#include "support/fixtures.hpp"

namespace sentistab::gateway {
namespace {

namespace fs = std::filesystem;
using testing::FakeLlmServer;
using testing::FakeReply;
using testing::ScopedEnv;
using testing::TempDir;

CompletionRequest fixture_request() {
  CompletionRequest req;
  req.endpoint = "https://api.example.com/v1";
  req.model = "gpt-4o-mini";
  req.messages = {{"system", "Please rewrite this more straightforwardly."}, {"user", "The service was good."}};
  return req;
}

FakeLlmServer::Handler echo() {
  return [](const nlohmann::json& body) {
    return FakeReply{200, "echo:" + body.at("messages").back().at("content").get<std::string>(), ""};
  };
}

class GatewayTest : public ::testing::Test {
 protected:
  GatewayConfig config(Mode mode = Mode::Live) const {
    GatewayConfig cfg;
    cfg.cache_dir = dir.path() / "cache";
    cfg.mode = mode;
    cfg.backoff_base_seconds = 0.01;
    cfg.timeout_seconds = 5;
    return cfg;
  }
  CompletionRequest request(const std::string& text) const {
    CompletionRequest req;
    req.endpoint = server.endpoint();
    req.model = "fake-model";
    req.messages = {{"user", text}};
    return req;
  }

  TempDir dir;
  ScopedEnv key{"SENTI_API_KEY", "test-key"};
  FakeLlmServer server{echo()};
};

TEST(Canonical, FixtureStringAndDigest) {
  const auto req = fixture_request();
  EXPECT_EQ(canonicalize(req),
            R"({"endpoint":"https://api.example.com/v1","model":"gpt-4o-mini","temperature":0,"seed":null,)"
            R"("messages":[{"content":"Please rewrite this more straightforwardly.","role":"system"},)"
            R"({"content":"The service was good.","role":"user"}]})");
  // python3 tests/oracle/derive.py
  EXPECT_EQ(cache_key(req), "99813fee9f420904e3d9ca3ca5efceb871158b597e84307fedcbb4939f7f2cac");
  auto seeded = req;
  seeded.seed = 7;
  EXPECT_EQ(cache_key(seeded), "ccae1816c1fc7db9b1a40e15823cf8a42c709770422f255aca624491e289e8ee");
}

TEST(Canonical, KeyOrderDoesNotMatterModelDoes) {
  const auto a = request_from_json(nlohmann::json::parse(
      R"({"endpoint":"e","model":"m","messages":[{"role":"user","content":"hi"}]})"));
  const auto b = request_from_json(nlohmann::json::parse(
      R"({"messages":[{"content":"hi","role":"user"}],"model":"m","endpoint":"e"})"));
  EXPECT_EQ(canonicalize(a), canonicalize(b));
  auto c = a;
  c.model = "m2";
  EXPECT_NE(canonicalize(a), canonicalize(c));
  EXPECT_EQ(cache_key(a).size(), 64u);
}

TEST(Canonical, RequestValidation) {
  CompletionRequest empty = fixture_request();
  empty.messages.clear();
  EXPECT_THROW(validate(empty), Error);
  auto warm = fixture_request();
  warm.temperature = 0.7;
  EXPECT_THROW(validate(warm), Error);
}

TEST(Canonical, WireBody) {
  auto req = fixture_request();
  auto body = nlohmann::json::parse(wire_body(req));
  EXPECT_EQ(body.at("model"), "gpt-4o-mini");
  EXPECT_EQ(body.at("temperature"), 0);
  EXPECT_FALSE(body.contains("seed"));
  EXPECT_EQ(body.at("messages").size(), 2u);
  req.seed = 3;
  EXPECT_EQ(nlohmann::json::parse(wire_body(req)).at("seed"), 3);
}

TEST(Config, Validation) {
  GatewayConfig cfg;
  EXPECT_NO_THROW(validate(cfg));
  cfg.max_in_flight = 0;
  EXPECT_THROW(validate(cfg), Error);
  EXPECT_EQ(parse_mode("replay"), Mode::Replay);
  EXPECT_EQ(to_string(Mode::Record), "record");
  EXPECT_THROW(parse_mode("offline"), Error);
}

TEST(Cache, LayoutAndAtomicWrite) {
  TempDir dir;
  const std::string key(64, 'a');
  EXPECT_EQ(cache_path(dir.path(), key), dir.path() / "aa" / (key + ".json"));
  EXPECT_FALSE(cache_read(dir.path(), key).has_value());
  cache_write(dir.path(), key, "{canonical}", "reply text");
  EXPECT_EQ(cache_read(dir.path(), key), "reply text");
  const auto stored = nlohmann::json::parse(testing::read_file(cache_path(dir.path(), key)));
  EXPECT_EQ(stored.at("request"), "{canonical}");
  EXPECT_EQ(stored.at("reply"), "reply text");
  EXPECT_TRUE(stored.at("timestamp").is_string());
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir.path())) files += e.is_regular_file();
  EXPECT_EQ(files, 1u);
  EXPECT_EQ(cache_summary(dir.path()).entries, 1u);
  EXPECT_EQ(cache_clear(dir.path()), 1u);
  EXPECT_EQ(cache_summary(dir.path()).entries, 0u);
}

TEST_F(GatewayTest, SecondCallIsServedFromCache) {
  Gateway gw(config());
  const auto first = gw.complete(request("hello"));
  EXPECT_EQ(first.text, "echo:hello");
  EXPECT_FALSE(first.from_cache);
  EXPECT_EQ(first.attempts, 1);
  const auto second = gw.complete(request("hello"));
  EXPECT_EQ(second.text, first.text);
  EXPECT_TRUE(second.from_cache);
  EXPECT_EQ(server.requests(), 1u);
  EXPECT_EQ(gw.stats().network_requests, 1u);
  EXPECT_EQ(gw.stats().cache_hits, 1u);

  // A fresh gateway on the same directory never touches the network.
  Gateway again(config());
  EXPECT_EQ(again.complete(request("hello")).text, "echo:hello");
  EXPECT_EQ(server.requests(), 1u);
}

TEST_F(GatewayTest, ReplayMissNamesTheKey) {
  Gateway gw(config(Mode::Replay));
  const auto req = request("never seen");
  try {
    gw.complete(req);
    FAIL() << "expected MissingCacheEntry";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingCacheEntry);
    EXPECT_NE(std::string(e.what()).find(cache_key(req)), std::string::npos);
  }
  EXPECT_EQ(server.requests(), 0u);
}

TEST_F(GatewayTest, ReplayServesRecordedEntries) {
  {
    Gateway rec(config(Mode::Record));
    rec.complete(request("a"));
  }
  Gateway replay(config(Mode::Replay));
  EXPECT_EQ(replay.complete(request("a")).text, "echo:a");
  EXPECT_EQ(server.requests(), 1u);
}

TEST_F(GatewayTest, RecordModeAlwaysCallsUpstream) {
  Gateway gw(config(Mode::Record));
  gw.complete(request("a"));
  gw.complete(request("a"));
  EXPECT_EQ(server.requests(), 2u);
}

TEST_F(GatewayTest, RateLimitIsRetried) {
  server.queue_status(429, 1);
  Gateway gw(config());
  const auto r = gw.complete(request("retry me"));
  EXPECT_EQ(r.text, "echo:retry me");
  EXPECT_EQ(r.attempts, 2);
  EXPECT_EQ(server.requests(), 2u);
}

TEST_F(GatewayTest, PersistentRateLimitSurfaces) {
  server.queue_status(429, 10);
  auto cfg = config();
  cfg.max_retries = 2;
  Gateway gw(cfg);
  try {
    gw.complete(request("x"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RateLimited);
  }
  EXPECT_EQ(server.requests(), 3u);
}

TEST_F(GatewayTest, AuthFailureIsNotRetried) {
  server.queue_status(401, 1);
  Gateway gw(config());
  try {
    gw.complete(request("x"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AuthError);
  }
  EXPECT_EQ(server.requests(), 1u);
}

TEST_F(GatewayTest, ServerErrorsAreRetried) {
  server.queue_status(503, 2);
  Gateway gw(config());
  EXPECT_EQ(gw.complete(request("x")).attempts, 3);
  server.queue_status(400, 1);
  try {
    gw.complete(request("y"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HttpError);
  }
}

TEST_F(GatewayTest, FailedCallsAreNotCached) {
  server.queue_status(401, 1);
  Gateway gw(config());
  EXPECT_THROW(gw.complete(request("x")), Error);
  EXPECT_EQ(gw.complete(request("x")).text, "echo:x");
}

TEST_F(GatewayTest, MissingApiKey) {
  ScopedEnv unset("SENTI_API_KEY", "");
  Gateway gw(config());
  try {
    gw.complete(request("x"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AuthError);
  }
  EXPECT_EQ(server.requests(), 0u);
}

TEST(GatewayFake, MalformedResponse) {
  TempDir dir;
  ScopedEnv key("SENTI_API_KEY", "k");
  FakeLlmServer server([](const nlohmann::json&) { return FakeReply{200, "", R"({"choices":[]})"}; });
  GatewayConfig cfg;
  cfg.cache_dir = dir.path();
  Gateway gw(cfg);
  CompletionRequest req{server.endpoint(), "m", {{"user", "x"}}, 0.0, std::nullopt};
  try {
    gw.complete(req);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedResponse);
  }
}

TEST(GatewayFake, Timeout) {
  TempDir dir;
  ScopedEnv key("SENTI_API_KEY", "k");
  FakeLlmServer server(echo());
  server.set_delay(std::chrono::milliseconds(1500));
  GatewayConfig cfg;
  cfg.cache_dir = dir.path();
  cfg.timeout_seconds = 0.3;
  cfg.max_retries = 0;
  Gateway gw(cfg);
  CompletionRequest req{server.endpoint(), "m", {{"user", "x"}}, 0.0, std::nullopt};
  try {
    gw.complete(req);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Timeout);
  }
}

TEST_F(GatewayTest, SingleFlightSharesOneUpstreamCall) {
  server.set_delay(std::chrono::milliseconds(200));
  Gateway gw(config());
  std::vector<std::future<std::string>> replies;
  for (int i = 0; i < 8; ++i) {
    replies.push_back(std::async(std::launch::async, [&] { return gw.complete(request("same")).text; }));
  }
  for (auto& r : replies) EXPECT_EQ(r.get(), "echo:same");
  EXPECT_EQ(server.requests(), 1u);
  EXPECT_EQ(gw.stats().upstream_calls, 1u);
}

TEST_F(GatewayTest, InFlightLimitIsRespected) {
  server.set_delay(std::chrono::milliseconds(100));
  auto cfg = config();
  cfg.max_in_flight = 2;
  Gateway gw(cfg);
  std::vector<std::future<void>> calls;
  for (int i = 0; i < 10; ++i) {
    calls.push_back(std::async(std::launch::async, [&, i] { gw.complete(request("r" + std::to_string(i))); }));
  }
  for (auto& c : calls) c.get();
  EXPECT_EQ(server.requests(), 10u);
  EXPECT_LE(server.max_concurrent(), 2u);
  EXPECT_GE(server.max_concurrent(), 1u);
}

TEST_F(GatewayTest, LoggedCallsRecordStageAndKey) {
  Gateway gw(config());
  CallLog log;
  const auto req = request("z");
  EXPECT_EQ(gw.complete_logged(req, "rewrite:ler1", &log), "echo:z");
  gw.complete_logged(req, "rewrite:ler1", &log);
  ASSERT_EQ(log.size(), 2u);
  EXPECT_EQ(log[0].stage, "rewrite:ler1");
  EXPECT_EQ(log[0].cache_key, cache_key(req));
  EXPECT_FALSE(log[0].from_cache);
  EXPECT_TRUE(log[1].from_cache);
}

}  // namespace
}  // namespace sentistab::gateway
