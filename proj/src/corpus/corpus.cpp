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

#include "sentistab/corpus/corpus.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "sentistab/error.hpp"
#include "sentistab/hashing.hpp"
#include "sentistab/text.hpp"

namespace sentistab::corpus {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Label label) {
  switch (label) {
    case Label::Human: return "human";
    case Label::Llm: return "llm";
    case Label::Unknown: return "unknown";
  }
  return "unknown";
}

Label parse_label(std::string_view name) {
  if (name == "human") return Label::Human;
  if (name == "llm") return Label::Llm;
  if (name == "unknown") return Label::Unknown;
  throw Error(ErrorCode::ParseError, "unknown label '" + std::string(name) + "'");
}

bool is_known_domain(std::string_view domain) {
  static constexpr std::array<std::string_view, 6> kDomains = {"news", "code", "essay",
                                                               "paper", "review", "other"};
  return std::find(kDomains.begin(), kDomains.end(), domain) != kDomains.end();
}

std::size_t TextSample::word_count() const { return sentistab::word_count(text); }

Manifest Corpus::manifest() const {
  Manifest m;
  m.total = samples.size();
  for (const auto& s : samples) {
    ++m.by_label[std::string(to_string(s.label))];
    if (s.domain) ++m.by_domain[*s.domain];
  }
  return m;
}

ordered_json to_json(const Manifest& m) {
  ordered_json j;
  j["total"] = m.total;
  j["by_label"] = m.by_label;
  j["by_domain"] = m.by_domain;
  return j;
}

// ------------------------------------------------------------------ JSONL

namespace {

TextSample sample_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("line is not a JSON object");
  TextSample s;
  s.id = j.at("id").get<std::string>();
  s.text = j.at("text").get<std::string>();
  if (s.id.empty()) throw std::invalid_argument("empty id");
  if (auto it = j.find("label"); it != j.end() && !it->is_null()) {
    s.label = parse_label(it->get<std::string>());
  }
  if (auto it = j.find("source"); it != j.end() && !it->is_null()) s.source = it->get<std::string>();
  if (auto it = j.find("domain"); it != j.end() && !it->is_null()) {
    s.domain = it->get<std::string>();
    if (!is_known_domain(*s.domain)) throw std::invalid_argument("unknown domain '" + *s.domain + "'");
  }
  return s;
}

}  // namespace

Corpus parse_jsonl(std::istream& in) {
  Corpus corpus;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    TextSample s;
    try {
      s = sample_from_json(json::parse(line));
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + e.detail());
    } catch (const std::exception& e) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!ids.insert(s.id).second) {
      throw Error(ErrorCode::DuplicateId, "id '" + s.id + "' repeated at line " + std::to_string(line_no));
    }
    corpus.samples.push_back(std::move(s));
  }
  return corpus;
}

Corpus load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open corpus " + path.string());
  return parse_jsonl(in);
}

std::string to_jsonl_line(const TextSample& s) {
  ordered_json j;
  j["id"] = s.id;
  j["text"] = s.text;
  j["label"] = to_string(s.label);
  if (s.source) j["source"] = *s.source;
  if (s.domain) j["domain"] = *s.domain;
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

void write_jsonl(std::ostream& out, const Corpus& corpus) {
  for (const auto& s : corpus.samples) out << to_jsonl_line(s) << '\n';
}

void save_jsonl(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  write_jsonl(out, corpus);
}

// ------------------------------------------------------- length protocol

std::vector<TextSample> aggregate_short(const std::vector<TextSample>& samples,
                                        std::size_t target_words, std::uint64_t seed) {
  if (target_words == 0) throw Error(ErrorCode::InvalidArgument, "target_words must be >= 1");
  if (samples.empty()) return {};
  for (const auto& s : samples) {
    if (s.label != samples.front().label) {
      throw Error(ErrorCode::MixedLabels, "cannot aggregate '" + samples.front().id + "' with '" + s.id + "'");
    }
  }

  std::vector<TextSample> out;
  std::vector<const TextSample*> group;
  std::size_t group_words = 0;
  auto flush = [&] {
    if (group.empty()) return;
    if (group.size() == 1) {
      out.push_back(*group.front());
    } else {
      TextSample agg;
      agg.label = group.front()->label;
      agg.source = group.front()->source;
      agg.domain = group.front()->domain;
      for (std::size_t i = 0; i < group.size(); ++i) {
        if (i) {
          agg.id += '+';
          agg.text += '\n';
        }
        agg.id += group[i]->id;
        agg.text += group[i]->text;
        if (agg.source != group[i]->source) agg.source.reset();
        if (agg.domain != group[i]->domain) agg.domain.reset();
      }
      out.push_back(std::move(agg));
    }
    group.clear();
    group_words = 0;
  };

  for (std::size_t idx : rank_order(samples.size(), std::to_string(seed) + ":agg:")) {
    group.push_back(&samples[idx]);
    group_words += samples[idx].word_count();
    if (group_words >= target_words) flush();
  }
  flush();
  return out;
}

Corpus length_bucket(const Corpus& corpus, std::size_t center_words, std::size_t half_width) {
  if (center_words == 0) throw Error(ErrorCode::InvalidArgument, "center_words must be >= 1");
  Corpus out;
  for (const auto& s : corpus.samples) {
    const auto wc = s.word_count();
    const auto distance = wc > center_words ? wc - center_words : center_words - wc;
    if (distance <= half_width) out.samples.push_back(s);
  }
  return out;
}

// --------------------------------------------------------------- synthetic

namespace {

constexpr std::array<std::string_view, 64> kNeutralPool = {
    "the",     "report",   "table",    "system",   "data",      "section",  "method",
    "value",   "number",   "record",   "file",     "list",      "column",   "row",
    "index",   "page",     "chapter",  "figure",   "model",     "process",  "step",
    "stage",   "input",    "output",   "field",    "level",     "layer",    "unit",
    "group",   "set",      "item",     "entry",    "version",   "format",   "sample",
    "measure", "period",   "region",   "station",  "building",  "street",   "office",
    "meeting", "schedule", "document", "policy",   "committee", "budget",   "quarter",
    "season",  "river",    "bridge",   "train",    "route",     "number",   "area",
    "of",      "and",      "in",       "on",       "for",       "with",     "from",
    "was"};

struct WordPools {
  std::vector<std::string> neutral;
  std::vector<std::string> positive;
  std::vector<std::string> negative;
};

WordPools build_pools(const sentiment::ValenceLexicon& lex) {
  WordPools pools;
  std::set<std::string> seen;
  for (auto w : kNeutralPool) {
    std::string word(w);
    if (!lex.contains(word) && seen.insert(word).second) pools.neutral.push_back(word);
  }
  for (const auto& token : lex.sorted_tokens()) {
    const auto cls = lex.classify(*lex.valence(token));
    if (cls == core::SentimentClass::Positive) pools.positive.push_back(token);
    if (cls == core::SentimentClass::Negative) pools.negative.push_back(token);
  }
  if (pools.neutral.size() < 8) throw Error(ErrorCode::InvalidArgument, "lexicon swallows the neutral pool");
  if (pools.positive.empty() || pools.negative.empty()) {
    throw Error(ErrorCode::InvalidArgument, "lexicon needs positive and negative entries");
  }
  return pools;
}

// Sentences of 6-11 words, capitalized, period-terminated.
std::string render_sentences(const std::vector<std::string>& words, HashStream& rng) {
  std::string text;
  std::size_t i = 0;
  while (i < words.size()) {
    const std::size_t len = std::min(words.size() - i, 6 + rng.below(6));
    if (!text.empty()) text += ' ';
    for (std::size_t k = 0; k < len; ++k) {
      std::string w = words[i + k];
      if (k == 0 && !w.empty() && w[0] >= 'a' && w[0] <= 'z') w[0] = static_cast<char>(w[0] - 'a' + 'A');
      if (k) text += ' ';
      text += w;
    }
    text += '.';
    i += len;
  }
  return text;
}

std::string pad_index(std::size_t i) {
  std::string s = std::to_string(i);
  return std::string(s.size() < 4 ? 4 - s.size() : 0, '0') + s;
}

}  // namespace

Corpus generate_synthetic(std::size_t n_per_class, const sentiment::ValenceLexicon& lex,
                          std::uint64_t seed) {
  if (n_per_class == 0) throw Error(ErrorCode::InvalidArgument, "n_per_class must be >= 1");
  const auto pools = build_pools(lex);
  HashStream rng(seed, "synth");
  Corpus corpus;

  for (std::size_t i = 0; i < n_per_class; ++i) {
    std::vector<std::string> words(20 + rng.below(21));
    for (auto& w : words) w = pools.neutral[rng.below(pools.neutral.size())];
    corpus.samples.push_back({"llm-" + pad_index(i), render_sentences(words, rng), Label::Llm,
                              std::string("synthetic"), std::string("other")});
  }

  for (std::size_t i = 0; i < n_per_class; ++i) {
    std::vector<std::string> words(20 + rng.below(21));
    for (auto& w : words) w = pools.neutral[rng.below(pools.neutral.size())];
    const auto& valence_pool = rng.below(2) == 0 ? pools.positive : pools.negative;
    const std::size_t k = 3 + rng.below(4);
    // Distinct slots so no valence word overwrites another.
    auto slots = rank_order(words.size(), std::to_string(seed) + ":slot:" + std::to_string(i) + ":");
    for (std::size_t j = 0; j < k; ++j) words[slots[j]] = valence_pool[rng.below(valence_pool.size())];
    corpus.samples.push_back({"human-" + pad_index(i), render_sentences(words, rng), Label::Human,
                              std::nullopt, std::string("other")});
  }
  return corpus;
}

}  // namespace sentistab::corpus
