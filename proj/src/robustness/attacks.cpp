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

#include "sentistab/robustness/attacks.hpp"

#include <algorithm>
#include <cmath>

#include "sentistab/error.hpp"
#include "sentistab/hashing.hpp"

namespace sentistab::robustness {

namespace {

bool is_non_negative_integer(const nlohmann::json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

std::size_t selection_size(std::size_t n, double rate, const char* what) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must lie in [0, 1]");
  }
  return static_cast<std::size_t>(std::llround(rate * static_cast<double>(n)));
}

}  // namespace

std::string SentenceSplit::join() const { return join_with(sentences); }

std::string SentenceSplit::join_with(const std::vector<std::string>& replacement) const {
  std::string out = leading;
  for (std::size_t i = 0; i < replacement.size(); ++i) {
    out += replacement[i];
    if (i < separators.size()) out += separators[i];
  }
  return out;
}

SentenceSplit split_sentences_detailed(std::string_view text) {
  SentenceSplit split;
  std::size_t i = 0;
  while (i < text.size() && is_space(text[i])) ++i;
  split.leading = std::string(text.substr(0, i));

  std::size_t start = i;
  while (start < text.size()) {
    std::size_t end = start;
    while (end < text.size()) {
      if (is_terminal(text[end]) && (end + 1 == text.size() || is_space(text[end + 1]))) {
        ++end;
        break;
      }
      ++end;
    }
    // Without a terminal the sentence runs to the end; trailing whitespace
    // then belongs to the separator.
    std::size_t body_end = end;
    if (end == text.size()) {
      while (body_end > start && is_space(text[body_end - 1])) --body_end;
    }
    std::size_t sep_end = body_end;
    while (sep_end < text.size() && is_space(text[sep_end])) ++sep_end;
    split.sentences.emplace_back(text.substr(start, body_end - start));
    split.separators.emplace_back(text.substr(body_end, sep_end - body_end));
    start = sep_end;
  }
  return split;
}

std::vector<std::string> split_sentences(std::string_view text) {
  return split_sentences_detailed(text).sentences;
}

std::vector<std::size_t> paraphrase_slots(std::size_t n, double ratio, std::uint64_t seed) {
  const std::size_t k = selection_size(n, ratio, "paraphrase ratio");
  auto order = rank_order(n, std::to_string(seed) + ":");
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

std::string paraphrase_mix(std::string_view original, std::string_view paraphrased, double ratio,
                           std::uint64_t seed) {
  auto orig = split_sentences_detailed(original);
  if (orig.sentences.empty()) throw Error(ErrorCode::EmptyOriginal, "original text has no sentences");
  const auto slots = paraphrase_slots(orig.sentences.size(), ratio, seed);
  if (slots.empty()) return std::string(original);
  const auto para = split_sentences(paraphrased);
  if (para.empty()) throw Error(ErrorCode::InvalidArgument, "paraphrase has no sentences");

  auto mixed = orig.sentences;
  for (std::size_t i : slots) mixed[i] = i < para.size() ? para[i] : para.back();
  return orig.join_with(mixed);
}

std::vector<PlannedEdit> plan_perturbation(std::string_view text, double rate, std::uint64_t seed) {
  std::size_t n_words = 0;
  bool in_word = false;
  for (char c : text) {
    if (!is_space(c) && !in_word) ++n_words;
    in_word = !is_space(c);
  }
  const std::size_t k = selection_size(n_words, rate, "perturbation rate");
  const std::string prefix = std::to_string(seed) + ":w:";
  auto order = rank_order(n_words, prefix);
  std::vector<PlannedEdit> plan;
  plan.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto rank = hash_rank(prefix + std::to_string(order[j]));
    plan.push_back({order[j], static_cast<EditKind>(rank % 3)});
  }
  std::sort(plan.begin(), plan.end(),
            [](const PlannedEdit& a, const PlannedEdit& b) { return a.word_index < b.word_index; });
  return plan;
}

std::string lexical_perturb(std::string_view text, double rate, std::uint64_t seed) {
  const auto plan = plan_perturbation(text, rate, seed);
  if (plan.empty()) return std::string(text);

  std::size_t i = 0;
  while (i < text.size() && is_space(text[i])) ++i;
  std::string out(text.substr(0, i));
  std::vector<std::pair<std::string, std::string>> words;  // (word, following whitespace)
  while (i < text.size()) {
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    std::size_t k = j;
    while (k < text.size() && is_space(text[k])) ++k;
    words.emplace_back(std::string(text.substr(i, j - i)), std::string(text.substr(j, k - j)));
    i = k;
  }

  std::vector<std::pair<std::string, std::string>> kept;
  std::size_t next = 0;
  for (std::size_t w = 0; w < words.size(); ++w) {
    auto [word, sep] = words[w];
    if (next < plan.size() && plan[next].word_index == w) {
      const auto kind = plan[next++].kind;
      if (kind == EditKind::Delete) {
        // Trailing whitespace of the text survives a deleted last word.
        if (w + 1 == words.size() && !kept.empty()) kept.back().second = sep;
        continue;
      }
      if (kind == EditKind::Duplicate) {
        kept.emplace_back(word, " ");
      } else if (word.size() >= 2) {
        const std::size_t mid = word.size() / 2;
        const auto a = static_cast<unsigned char>(word[mid - 1]);
        const auto b = static_cast<unsigned char>(word[mid]);
        if (a < 0x80 && b < 0x80) std::swap(word[mid - 1], word[mid]);
      }
    }
    kept.emplace_back(std::move(word), std::move(sep));
  }
  for (const auto& [word, sep] : kept) out += word + sep;
  return out;
}

AttackSpec attack_from_json(const nlohmann::json& j) {
  AttackSpec spec;
  const auto kind = j.value("kind", std::string());
  if (kind == "paraphrase_mix") {
    spec.kind = AttackKind::ParaphraseMix;
  } else if (kind == "lexical_perturb") {
    spec.kind = AttackKind::LexicalPerturb;
  } else {
    throw Error(ErrorCode::ConfigError, "attack.kind: expected paraphrase_mix or lexical_perturb");
  }
  if (!j.contains("rate") || !j.at("rate").is_number()) {
    throw Error(ErrorCode::ConfigError, "attack.rate: expected a number");
  }
  spec.rate = j.at("rate").get<double>();
  if (!(spec.rate >= 0.0 && spec.rate <= 1.0)) {
    throw Error(ErrorCode::ConfigError, "attack.rate: must lie in [0, 1]");
  }
  if (j.contains("seed")) {
    if (!is_non_negative_integer(j.at("seed"))) throw Error(ErrorCode::ConfigError, "attack.seed: expected unsigned integer");
    spec.seed = j.at("seed").get<std::uint64_t>();
  }
  return spec;
}

nlohmann::json to_json(const AttackSpec& spec) {
  return {{"kind", spec.kind == AttackKind::ParaphraseMix ? "paraphrase_mix" : "lexical_perturb"},
          {"rate", spec.rate},
          {"seed", spec.seed}};
}

}  // namespace sentistab::robustness
