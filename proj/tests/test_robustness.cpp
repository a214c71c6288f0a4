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

#include <algorithm>
#include <iterator>
#include <random>
#include <sstream>

#include "sentistab/corpus/corpus.hpp"
#include "sentistab/error.hpp"
#include "sentistab/robustness/attacks.hpp"
#include "support/fixtures.hpp"

namespace sentistab::robustness {
namespace {

std::size_t whitespace_words(const std::string& s) {
  std::istringstream in(s);
  return static_cast<std::size_t>(std::distance(std::istream_iterator<std::string>(in), {}));
}

std::vector<std::string> fixture_texts() {
  const auto c = corpus::generate_synthetic(25, *testing::bundled_lexicon(), 3);
  std::vector<std::string> out;
  for (const auto& s : c.samples) out.push_back(s.text);
  out[0] = "No terminal punctuation here";
  out[1] = "  Leading space. Two  spaces!\tTab? Trailing   ";
  out[2] = "Dr. Who met Mr. Smith... Really?! Yes.";
  return out;
}

TEST(SplitSentences, Examples) {
  EXPECT_EQ(split_sentences("A. B! C?"), (std::vector<std::string>{"A.", "B!", "C?"}));
  EXPECT_EQ(split_sentences("no punctuation at all"), (std::vector<std::string>{"no punctuation at all"}));
  EXPECT_EQ(split_sentences("v1.2 is out. ok"), (std::vector<std::string>{"v1.2 is out.", "ok"}));
  EXPECT_TRUE(split_sentences("").empty());
}

TEST(SplitSentences, JoinReproducesInput) {
  for (const auto& text : fixture_texts()) EXPECT_EQ(split_sentences_detailed(text).join(), text);
}

TEST(ParaphraseSlots, OracleFixture) {
  // tests/oracle/derive.py
  EXPECT_EQ(paraphrase_slots(10, 0.3, 42), (std::vector<std::size_t>{0, 1, 6}));
  EXPECT_EQ(paraphrase_slots(10, 0.1, 42), (std::vector<std::size_t>{1}));
  EXPECT_EQ(paraphrase_slots(10, 0.5, 42), (std::vector<std::size_t>{0, 1, 4, 6, 7}));
  EXPECT_TRUE(paraphrase_slots(10, 0.0, 42).empty());
  EXPECT_EQ(paraphrase_slots(4, 1.0, 1).size(), 4u);
}

TEST(ParaphraseSlots, NestedAcrossRatios) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::vector<std::size_t> prev;
    for (double r = 0.0; r <= 1.0; r += 0.05) {
      const auto cur = paraphrase_slots(23, r, seed);
      EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
      prev = cur;
    }
  }
}

TEST(ParaphraseMix, Fixture) {
  const std::string original = "One fine day. Two good days! Three bad days? Four days.";
  const std::string para = "Uno. Dos! Tres?";
  EXPECT_EQ(paraphrase_mix(original, para, 0.5, 42), "Uno. Dos! Three bad days? Four days.");
  EXPECT_EQ(paraphrase_mix(original, para, 1.0, 9), "Uno. Dos! Tres? Tres?");
  EXPECT_EQ(paraphrase_mix(original, para, 0.0, 9), original);
}

TEST(ParaphraseMix, IdentityAndFullReplacement) {
  const auto texts = fixture_texts();
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto& original = texts[i];
    const auto& para = texts[(i + 7) % texts.size()];
    EXPECT_EQ(paraphrase_mix(original, para, 0.0, i), original);
    const auto full = paraphrase_mix(original, para, 1.0, i);
    const auto split = split_sentences_detailed(original);
    const auto ps = split_sentences(para);
    std::vector<std::string> want;
    for (std::size_t k = 0; k < split.sentences.size(); ++k) want.push_back(ps[std::min(k, ps.size() - 1)]);
    EXPECT_EQ(full, split.join_with(want));
  }
}

TEST(ParaphraseMix, Errors) {
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  EXPECT_EQ(code([] { paraphrase_mix("   ", "x.", 0.5, 0); }), ErrorCode::EmptyOriginal);
  EXPECT_EQ(code([] { paraphrase_mix("a.", "x.", 1.5, 0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code([] { paraphrase_mix("a.", "", 0.5, 0); }), ErrorCode::InvalidArgument);
}

TEST(LexicalPerturb, HelloFixtures) {
  // Seeds whose first hash rank selects each edit (tests/oracle/derive.py).
  EXPECT_EQ(lexical_perturb("hello", 1.0, 2), "hlelo");
  EXPECT_EQ(lexical_perturb("hello", 1.0, 0), "");
  EXPECT_EQ(lexical_perturb("hello", 1.0, 1), "hello hello");
  EXPECT_EQ(plan_perturbation("hello", 1.0, 2).at(0).kind, EditKind::Swap);
}

TEST(LexicalPerturb, RateZeroIsIdentity) {
  for (const auto& t : fixture_texts()) EXPECT_EQ(lexical_perturb(t, 0.0, 99), t);
}

TEST(LexicalPerturb, DeletionOnlyFixture) {
  const std::string text = "the quick brown fox jumps over the lazy dog today";
  const auto plan = plan_perturbation(text, 0.3, 46);
  ASSERT_EQ(plan.size(), 3u);
  for (const auto& e : plan) EXPECT_EQ(e.kind, EditKind::Delete);
  const auto out = lexical_perturb(text, 0.3, 46);
  EXPECT_EQ(out, "the quick brown fox jumps over lazy");
  EXPECT_EQ(whitespace_words(out), 10u - 3u);
}

TEST(LexicalPerturb, MixedFixture) {
  EXPECT_EQ(lexical_perturb("the quick brown fox jumps over the lazy dog today", 0.3, 11),
            "the quick quick borwn fox fox jumps over the lazy dog today");
}

TEST(LexicalPerturb, WordCountWithinBudgetAndDeterministic) {
  std::mt19937_64 rng(4);
  for (const auto& t : fixture_texts()) {
    const double rate = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto seed = rng();
    const auto out = lexical_perturb(t, rate, seed);
    EXPECT_EQ(out, lexical_perturb(t, rate, seed));
    const auto k = plan_perturbation(t, rate, seed).size();
    const auto before = whitespace_words(t), after = whitespace_words(out);
    EXPECT_LE(before > after ? before - after : after - before, k);
  }
  EXPECT_THROW(lexical_perturb("x", 1.2, 0), Error);
}

TEST(AttackSpec, JsonRoundTripAndValidation) {
  const auto spec = attack_from_json(nlohmann::json::parse(R"({"kind":"lexical_perturb","rate":0.1,"seed":5})"));
  EXPECT_EQ(spec.kind, AttackKind::LexicalPerturb);
  EXPECT_EQ(spec.rate, 0.1);
  EXPECT_EQ(spec.seed, 5u);
  EXPECT_EQ(attack_from_json(to_json(spec)).rate, 0.1);
  try {
    attack_from_json(nlohmann::json::parse(R"({"kind":"paraphrase_mix","rate":1.5,"seed":1})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
    EXPECT_NE(std::string(e.what()).find("attack.rate"), std::string::npos);
  }
}

}  // namespace
}  // namespace sentistab::robustness
