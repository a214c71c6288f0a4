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
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sentistab::robustness {

/// Sentences plus the exact whitespace around them, so that join() gives the
/// input back byte for byte.
struct SentenceSplit {
  std::string leading;                  // whitespace before the first sentence
  std::vector<std::string> sentences;   // delimiters stay with their sentence
  std::vector<std::string> separators;  // whitespace after sentence i

  std::string join() const;
  /// join() with sentence i replaced by replacements[i] where given.
  std::string join_with(const std::vector<std::string>& sentences) const;
};

/// Splits after '.', '!' or '?' when followed by whitespace or end of text.
SentenceSplit split_sentences_detailed(std::string_view text);
std::vector<std::string> split_sentences(std::string_view text);

/// The k slot indices with the smallest hash_rank("{seed}:{i}"), k =
/// round(ratio * n), returned sorted ascending. Prefix-stable in k.
std::vector<std::size_t> paraphrase_slots(std::size_t n, double ratio, std::uint64_t seed);

/// Replaces the selected sentences of `original` by the index-aligned
/// sentences of `paraphrased` (the last paraphrase sentence when the
/// paraphrase is shorter). Original separators are kept. Throws
/// EmptyOriginal, or InvalidArgument when ratio is outside [0, 1] or
/// sentences must be taken from an empty paraphrase.
std::string paraphrase_mix(std::string_view original, std::string_view paraphrased, double ratio,
                           std::uint64_t seed);

enum class EditKind { Swap = 0, Delete = 1, Duplicate = 2 };

struct PlannedEdit {
  std::size_t word_index;
  EditKind kind;
};

/// Words are maximal non-whitespace runs. Selects round(rate * n_words)
/// positions by hash_rank("{seed}:w:{i}") and assigns each the edit
/// (rank mod 3). Sorted by word index.
std::vector<PlannedEdit> plan_perturbation(std::string_view text, double rate, std::uint64_t seed);

/// Applies plan_perturbation: swap exchanges the two bytes around the
/// word's midpoint (no-op for 1-byte words or non-ASCII bytes), delete
/// removes the word with its following whitespace, duplicate repeats the
/// word after a single space.
std::string lexical_perturb(std::string_view text, double rate, std::uint64_t seed);

enum class AttackKind { ParaphraseMix, LexicalPerturb };

struct AttackSpec {
  AttackKind kind = AttackKind::LexicalPerturb;
  double rate = 0.0;
  std::uint64_t seed = 0;
};

/// {"kind": "paraphrase_mix" | "lexical_perturb", "rate": r, "seed": s};
/// throws ConfigError naming the invalid field.
AttackSpec attack_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AttackSpec& spec);

}  // namespace sentistab::robustness
