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

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "sentistab/cli.hpp"
#include "support/fake_llm.hpp"
#include "support/fixtures.hpp"

namespace sentistab::cli {
namespace {

using nlohmann::json;
using testing::TempDir;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "sentistab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

const std::string kConfigs = std::string(SENTISTAB_SOURCE_DIR) + "/configs";

TEST(Cli, DetectFromStdin) {
  const auto r = run_cli({"detect"}, "good good bad");
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("sample_id"), "input");
  EXPECT_EQ(j.at("verdict"), "human");
  EXPECT_NEAR(j.at("score").get<double>(), 1.0986122886681097, 1e-12);
}

TEST(Cli, DetectEmptyInputIsDataError) {
  const auto r = run_cli({"detect"}, "   ");
  EXPECT_EQ(r.code, kData);
  EXPECT_NE(r.err.find("EmptyText"), std::string::npos) << r.err;
}

TEST(Cli, DetectThresholdAndMetricFlags) {
  const auto r = run_cli({"detect", "--threshold", "5", "--metric", "signed", "--id", "t1"}, "good good bad");
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("sample_id"), "t1");
  EXPECT_EQ(j.at("metric"), "signed");
  EXPECT_EQ(j.at("threshold"), 5.0);
  EXPECT_EQ(run_cli({"detect", "--metric", "cosine"}, "x").code, kUsage);
}

TEST(Cli, DetectJsonlPartialFailure) {
  TempDir dir;
  testing::write_file(dir / "c.jsonl",
                      "{\"id\":\"a\",\"text\":\"good day\"}\n{\"id\":\"b\",\"text\":\"...\"}\n"
                      "{\"id\":\"c\",\"text\":\"bad night\"}\n");
  const auto r = run_cli({"detect", "--jsonl", (dir / "c.jsonl").string(), "--jobs", "2"});
  EXPECT_EQ(r.code, kPartial);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<json> rows;
  while (std::getline(lines, line)) rows.push_back(json::parse(line));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].at("sample_id"), "a");
  EXPECT_EQ(rows[1].at("sample_id"), "c");
  EXPECT_NE(r.err.find("'b'"), std::string::npos) << r.err;
}

TEST(Cli, ReplayWithColdCacheIsBackendError) {
  TempDir dir;
  testing::ScopedEnv key("SENTI_API_KEY", "k");
  testing::write_file(dir / "det.json",
                      testing::llm_detector_config("http://127.0.0.1:9", dir / "cache").dump());
  const auto r = run_cli({"detect", "--config", (dir / "det.json").string(), "--replay"}, "some words here");
  EXPECT_EQ(r.code, kBackend);
  EXPECT_NE(r.err.find("no cached reply for key"), std::string::npos) << r.err;
}

TEST(Cli, MissingApiKeyIsBackendError) {
  TempDir dir;
  testing::ScopedEnv key("SENTI_API_KEY", "");
  testing::write_file(dir / "det.json",
                      testing::llm_detector_config("http://127.0.0.1:9", dir / "cache").dump());
  EXPECT_EQ(run_cli({"detect", "--config", (dir / "det.json").string()}, "words").code, kBackend);
}

TEST(Cli, DetectWithFakeServerThenReplay) {
  TempDir dir;
  testing::ScopedEnv key("SENTI_API_KEY", "k");
  testing::FakeLlmServer server(testing::FakeLlmServer::mock_model(testing::bundled_lexicon()));
  testing::write_file(dir / "det.json", testing::llm_detector_config(server.endpoint(), dir / "cache").dump());
  const auto live = run_cli({"detect", "--config", (dir / "det.json").string()}, "A lovely day ruined by rain.");
  ASSERT_EQ(live.code, kOk) << live.err;
  const auto calls = server.requests();
  const auto replay =
      run_cli({"detect", "--config", (dir / "det.json").string(), "--replay"}, "A lovely day ruined by rain.");
  ASSERT_EQ(replay.code, kOk) << replay.err;
  EXPECT_EQ(replay.out, live.out);
  EXPECT_EQ(server.requests(), calls);

  const auto inspect = run_cli({"cache", "inspect", "--cache-dir", (dir / "cache").string()});
  ASSERT_EQ(inspect.code, kOk) << inspect.err;
  EXPECT_EQ(json::parse(inspect.out).at("entries"), calls);
  const auto clear = run_cli({"cache", "clear", "--config", (dir / "det.json").string()});
  ASSERT_EQ(clear.code, kOk) << clear.err;
  EXPECT_EQ(json::parse(clear.out).at("removed"), calls);
}

TEST(Cli, EvaluateBundledConfig) {
  TempDir dir;
  const auto r = run_cli({"evaluate", kConfigs + "/synthetic_experiment.json", "--output", (dir / "rep").string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("rows")[0].at("metrics").at("f1"), 1.0);
  for (const char* f : {"scores.csv", "embeddings.csv", "metrics.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / "rep" / f)) << f;
  }
}

TEST(Cli, EvaluateRejectsBadSweep) {
  TempDir dir;
  testing::write_file(dir / "exp.json",
                      R"({"protocol":"paraphrase_sweep","synthetic":{"n_per_class":2},"sweep":[1.5]})");
  const auto r = run_cli({"evaluate", (dir / "exp.json").string()});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("sweep[0]"), std::string::npos) << r.err;
  EXPECT_FALSE(std::filesystem::exists(dir / "report"));
}

TEST(Cli, EvaluateMissingCorpusIsDataError) {
  TempDir dir;
  testing::write_file(dir / "exp.json", R"({"corpus":"missing.jsonl"})");
  EXPECT_EQ(run_cli({"evaluate", (dir / "exp.json").string()}).code, kData);
}

TEST(Cli, CalibrateFixtureAndSingleClass) {
  const std::string header = "id,label,word_count,sdc,sdp,signed,verdict\n";
  const auto r = run_cli({"calibrate"}, header + "a,llm,1,0.1,,,llm\nb,llm,1,0.4,,,llm\nc,human,1,0.3,,,llm\n"
                                                 "d,human,1,0.9,,,human\n");
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_DOUBLE_EQ(j.at("best_threshold").get<double>(), 0.65);
  EXPECT_DOUBLE_EQ(j.at("best_f1").get<double>(), 0.8);
  EXPECT_EQ(run_cli({"calibrate"}, header + "a,human,1,0.1,,,llm\nb,human,1,0.2,,,llm\n").code, kData);
}

TEST(Cli, PerturbAndMixAreSeeded) {
  TempDir dir;
  const auto a = run_cli({"perturb", "--rate", "0.3", "--seed", "11"},
                         "the quick brown fox jumps over the lazy dog today");
  ASSERT_EQ(a.code, kOk) << a.err;
  EXPECT_EQ(a.out, "the quick quick borwn fox fox jumps over the lazy dog today");
  EXPECT_EQ(run_cli({"perturb", "--rate", "1.5"}, "x").code, kUsage);

  testing::write_file(dir / "o.txt", "One fine day. Two good days! Three bad days? Four days.");
  testing::write_file(dir / "p.txt", "Uno. Dos! Tres?");
  const auto m = run_cli({"paraphrase-mix", (dir / "o.txt").string(), (dir / "p.txt").string(), "--ratio", "0.5",
                          "--seed", "42"});
  ASSERT_EQ(m.code, kOk) << m.err;
  EXPECT_EQ(m.out, "Uno. Dos! Three bad days? Four days.");
}

TEST(Cli, SynthIsDeterministic) {
  const auto a = run_cli({"synth", "--n", "5", "--seed", "3"});
  const auto b = run_cli({"synth", "--n", "5", "--seed", "3"});
  ASSERT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run_cli({"synth", "--n", "5", "--seed", "4"}).out);
}

TEST(Cli, FeaturesCsv) {
  const auto r = run_cli({"features"}, "{\"id\":\"a\",\"text\":\"good day\",\"label\":\"human\"}\n");
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "id,label,f0,f1,f2,f3,f4,f5,f6,f7,f8,f9,f10,f11");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({"--help"}).code, kOk);
  EXPECT_EQ(run_cli({}).code, kUsage);
  EXPECT_EQ(run_cli({"detect", "--bogus"}).code, kUsage);
  EXPECT_EQ(run_cli({"nonsense"}).code, kUsage);
}

TEST(Cli, BinaryExitCodes) {
  const std::string bin = SENTISTAB_CLI_PATH;
  auto status = [](const std::string& cmd) {
    const int raw = std::system(cmd.c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("echo 'good good bad' | " + bin + " detect > /dev/null"), 0);
  EXPECT_EQ(status("printf '' | " + bin + " detect 2> /dev/null"), 2);
  EXPECT_EQ(status(bin + " --bogus > /dev/null 2>&1"), 1);
}

}  // namespace
}  // namespace sentistab::cli
