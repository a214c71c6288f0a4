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

#include <numeric>
#include <random>
#include <sstream>

#include "sentistab/core/divergence.hpp"
#include "sentistab/corpus/corpus.hpp"
#include "sentistab/error.hpp"
#include "sentistab/rewrite/rewriter.hpp"
#include "sentistab/rewrite/stability.hpp"
#include "sentistab/sentiment/analyzer.hpp"
#include "sentistab/text.hpp"
#include "support/fixtures.hpp"

namespace sentistab::corpus {
namespace {

using testing::TempDir;

std::string words(std::size_t n, const std::string& stem = "w") {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += (i ? " " : "") + stem + std::to_string(i);
  return out;
}

TextSample sample(std::string id, std::string text, Label label = Label::Human) {
  return {std::move(id), std::move(text), label, std::nullopt, std::nullopt};
}

ErrorCode load_error(const std::string& body, std::string* message = nullptr) {
  std::istringstream in(body);
  try {
    parse_jsonl(in);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

TEST(Jsonl, EmptyFileIsEmptyCorpus) {
  TempDir dir;
  testing::write_file(dir / "empty.jsonl", "");
  const auto c = load_jsonl(dir / "empty.jsonl");
  EXPECT_TRUE(c.samples.empty());
  EXPECT_EQ(c.manifest().total, 0u);
}

TEST(Jsonl, ParsesFieldsAndManifest) {
  std::istringstream in(
      R"({"id":"a","text":"Hello there","label":"human","domain":"news"})"
      "\n\n"
      R"({"id":"b","text":"Generated words","label":"llm","source":"gpt-4"})"
      "\n"
      R"({"id":"c","text":"No label"})"
      "\n");
  const auto c = parse_jsonl(in);
  ASSERT_EQ(c.samples.size(), 3u);
  EXPECT_EQ(c.samples[0].domain, "news");
  EXPECT_EQ(c.samples[1].source, "gpt-4");
  EXPECT_EQ(c.samples[2].label, Label::Unknown);
  EXPECT_EQ(c.samples[0].word_count(), 2u);
  const auto m = c.manifest();
  EXPECT_EQ(m.total, 3u);
  EXPECT_EQ(m.by_label.at("human"), 1u);
  EXPECT_EQ(m.by_label.at("llm"), 1u);
  EXPECT_EQ(m.by_domain.at("news"), 1u);
}

TEST(Jsonl, ErrorsCarryLineNumbers) {
  std::string message;
  EXPECT_EQ(load_error(R"({"id":"a","text":"x"})" "\n" R"({"id":"b"})" "\n", &message), ErrorCode::ParseError);
  EXPECT_NE(message.find("line 2"), std::string::npos);
  EXPECT_EQ(load_error("not json\n", &message), ErrorCode::ParseError);
  EXPECT_NE(message.find("line 1"), std::string::npos);
  EXPECT_EQ(load_error(R"({"id":"a","text":"x","label":"robot"})" "\n"), ErrorCode::ParseError);
  EXPECT_EQ(load_error(R"({"id":"a","text":"x","domain":"poetry"})" "\n"), ErrorCode::ParseError);
  EXPECT_EQ(load_error(R"({"id":"a","text":"x"})" "\n" R"({"id":"a","text":"y"})" "\n"), ErrorCode::DuplicateId);
}

TEST(Jsonl, RoundTripIsBitExact) {
  std::istringstream in(
      R"({"id":"a","text":"Café \"quoted\"\nnext line","label":"human","domain":"review"})" "\n"
      R"({"id":"b","text":"plain","label":"llm","source":"m"})" "\n");
  const auto first = parse_jsonl(in);
  std::ostringstream out;
  write_jsonl(out, first);
  std::istringstream again(out.str());
  const auto second = parse_jsonl(again);
  std::ostringstream out2;
  write_jsonl(out2, second);
  EXPECT_EQ(out.str(), out2.str());
  EXPECT_EQ(first.samples[0].text, second.samples[0].text);
  EXPECT_EQ(to_jsonl_line(first.samples[1]), R"({"id":"b","text":"plain","label":"llm","source":"m"})");
}

TEST(Aggregate, LongSampleUnchanged) {
  const auto s = sample("long", words(100));
  const auto out = aggregate_short({s}, 64, 1);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].id, "long");
  EXPECT_EQ(out[0].text, s.text);
}

TEST(Aggregate, FourShortSamplesJoinIntoOne) {
  std::vector<TextSample> in;
  for (const char* id : {"a", "b", "c", "d"}) in.push_back(sample(id, words(20, id)));
  const auto out = aggregate_short(in, 64, 5);
  ASSERT_EQ(out.size(), 1u);
  // Seeded order from tests/oracle/derive.py.
  EXPECT_EQ(out[0].id, "c+b+d+a");
  EXPECT_EQ(out[0].word_count(), 80u);
  EXPECT_EQ(out[0].text, in[2].text + "\n" + in[1].text + "\n" + in[3].text + "\n" + in[0].text);
}

TEST(Aggregate, RemainderBecomesShortAggregate) {
  std::vector<TextSample> in;
  for (const char* id : {"p", "q", "r", "s", "t"}) in.push_back(sample(id, words(30, id)));
  const auto out = aggregate_short(in, 64, 3);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].id, "t+r+s");
  EXPECT_EQ(out[1].id, "p+q");
  EXPECT_EQ(out[1].word_count(), 60u);
}

TEST(Aggregate, MixedLabelsRejected) {
  try {
    aggregate_short({sample("a", "x", Label::Human), sample("b", "y", Label::Llm)}, 10, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MixedLabels);
  }
  EXPECT_THROW(aggregate_short({sample("a", "x")}, 0, 0), Error);
}

TEST(Aggregate, ConservesWordCount) {
  std::mt19937_64 rng(5);
  for (int f = 0; f < 100; ++f) {
    std::vector<TextSample> in;
    std::size_t total = 0;
    const auto n = 1 + rng() % 20;
    for (std::size_t i = 0; i < n; ++i) {
      const auto len = rng() % 50;
      in.push_back(sample("s" + std::to_string(i), words(len)));
      total += len;
    }
    const auto out = aggregate_short(in, 1 + rng() % 100, rng());
    std::size_t got = 0;
    for (const auto& s : out) got += s.word_count();
    EXPECT_EQ(got, total);
  }
}

TEST(LengthBucket, Boundaries) {
  Corpus c;
  for (std::size_t n : {9u, 10u, 20u, 30u, 31u}) c.samples.push_back(sample("n" + std::to_string(n), words(n)));
  const auto kept = length_bucket(c, 20, 10);
  std::vector<std::string> ids;
  for (const auto& s : kept.samples) ids.push_back(s.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"n10", "n20", "n30"}));
  EXPECT_TRUE(length_bucket(c, 100).samples.empty());
  EXPECT_EQ(length_bucket(kept, 20).samples.size(), kept.samples.size());
}

TEST(LengthBucket, CenterTwentyFixture) {
  Corpus c;
  for (std::size_t n : {15u, 20u, 31u}) c.samples.push_back(sample("n" + std::to_string(n), words(n)));
  const auto kept = length_bucket(c, 20);
  ASSERT_EQ(kept.samples.size(), 2u);
  EXPECT_EQ(kept.samples[0].id, "n15");
  EXPECT_EQ(kept.samples[1].id, "n20");
}

TEST(Synthetic, DeterministicAndWellFormed) {
  const auto lex = testing::bundled_lexicon();
  const auto a = generate_synthetic(25, *lex, 7);
  const auto b = generate_synthetic(25, *lex, 7);
  std::ostringstream sa, sb, sc;
  write_jsonl(sa, a);
  write_jsonl(sb, b);
  write_jsonl(sc, generate_synthetic(25, *lex, 8));
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_NE(sa.str(), sc.str());
  ASSERT_EQ(a.samples.size(), 50u);
  EXPECT_EQ(a.manifest().by_label.at("llm"), 25u);
  EXPECT_EQ(a.manifest().by_label.at("human"), 25u);

  const rewrite::NeutralizingRewriter rw(lex);
  const sentiment::LexiconAnalyzer an(lex);
  const auto ps = rewrite::PromptSet::builtin();
  for (const auto& s : a.samples) {
    std::size_t hits = 0;
    for (const auto& t : tokenize(s.text)) hits += lex->contains(t);
    const double sdc = core::sdc_score(rewrite::build_stability_record(s.text, ps, rw, an));
    if (s.label == Label::Llm) {
      EXPECT_EQ(hits, 0u) << s.id;
      EXPECT_EQ(sdc, 0.0) << s.id;
    } else {
      EXPECT_GE(hits, 3u) << s.id;
      EXPECT_GT(sdc, 0.0) << s.id;
    }
  }
}

TEST(Synthetic, SingleSampleIsStable) {
  const auto lex = testing::bundled_lexicon();
  EXPECT_EQ(to_jsonl_line(generate_synthetic(1, *lex, 0).samples[0]),
            to_jsonl_line(generate_synthetic(1, *lex, 0).samples[0]));
  EXPECT_THROW(generate_synthetic(0, *lex, 0), Error);
}

}  // namespace
}  // namespace sentistab::corpus
