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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sentistab/sentiment/lexicon.hpp"

namespace sentistab::corpus {

enum class Label { Human, Llm, Unknown };

std::string_view to_string(Label label);
/// "human" | "llm" | "unknown"; throws ParseError otherwise.
Label parse_label(std::string_view name);

/// Accepted values of TextSample::domain.
bool is_known_domain(std::string_view domain);

struct TextSample {
  std::string id;
  std::string text;
  Label label = Label::Unknown;
  std::optional<std::string> source;  // generating model, when known
  std::optional<std::string> domain;  // news, code, essay, paper, review, other

  std::size_t word_count() const;

  friend bool operator==(const TextSample&, const TextSample&) = default;
};

struct Manifest {
  std::size_t total = 0;
  std::map<std::string, std::size_t> by_label;
  std::map<std::string, std::size_t> by_domain;
};

struct Corpus {
  std::vector<TextSample> samples;

  Manifest manifest() const;
  friend bool operator==(const Corpus&, const Corpus&) = default;
};

nlohmann::ordered_json to_json(const Manifest& m);

/// JSON Lines, one object per line with required "id" and "text" and
/// optional "label" (default unknown), "source", "domain". Blank lines are
/// skipped. Throws ParseError naming the 1-based line, or DuplicateId.
Corpus parse_jsonl(std::istream& in);
Corpus load_jsonl(const std::filesystem::path& path);

/// Writes keys in the order id, text, label, source, domain (the last two
/// only when set), compact, one sample per line.
std::string to_jsonl_line(const TextSample& s);
void write_jsonl(std::ostream& out, const Corpus& corpus);
void save_jsonl(const std::filesystem::path& path, const Corpus& corpus);

/// Concatenates same-label samples (seeded order, newline separator) until
/// each aggregate reaches target_words; a trailing remainder below target
/// is emitted as a final short aggregate. Ids are joined with '+'. A
/// single-sample aggregate is the sample itself. Throws MixedLabels.
std::vector<TextSample> aggregate_short(const std::vector<TextSample>& samples,
                                        std::size_t target_words, std::uint64_t seed);

/// Samples whose word count lies within center_words +- half_width (inclusive).
Corpus length_bucket(const Corpus& corpus, std::size_t center_words, std::size_t half_width = 10);

/// Offline corpus: llm texts use only words outside the lexicon, human
/// texts carry 3-6 same-polarity valence words among neutral filler.
/// Byte-identical for a given (n_per_class, lexicon, seed).
Corpus generate_synthetic(std::size_t n_per_class, const sentiment::ValenceLexicon& lex,
                          std::uint64_t seed);

}  // namespace sentistab::corpus
