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

#include "sentistab/sentiment/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "sentistab/error.hpp"
#include "sentistab/text.hpp"

#ifndef SENTISTAB_DATA_DIR
#define SENTISTAB_DATA_DIR "data"
#endif

namespace sentistab::sentiment {

ValenceLexicon::ValenceLexicon(std::unordered_map<std::string, double> entries,
                               double pos_threshold, double neg_threshold, double alpha)
    : entries_(std::move(entries)),
      pos_threshold_(pos_threshold),
      neg_threshold_(neg_threshold),
      alpha_(alpha) {
  if (!(neg_threshold_ < 0.0 && 0.0 < pos_threshold_)) {
    throw Error(ErrorCode::LexiconFormat, "thresholds must satisfy neg < 0 < pos");
  }
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) {
    throw Error(ErrorCode::LexiconFormat, "alpha must be positive and finite");
  }
  for (const auto& [token, v] : entries_) {
    if (!(v >= -1.0 && v <= 1.0)) {
      throw Error(ErrorCode::LexiconFormat, "valence of '" + token + "' outside [-1, 1]");
    }
    auto canon = tokenize(token);
    if (canon.size() != 1 || canon.front() != token) {
      throw Error(ErrorCode::LexiconFormat, "'" + token + "' is not a single lowercase token");
    }
  }
}

std::optional<double> ValenceLexicon::valence(std::string_view token) const {
  auto it = entries_.find(std::string(token));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

core::SentimentClass ValenceLexicon::classify(double valence) const noexcept {
  if (valence > pos_threshold_) return core::SentimentClass::Positive;
  if (valence < neg_threshold_) return core::SentimentClass::Negative;
  return core::SentimentClass::Neutral;
}

ValenceLexicon ValenceLexicon::with_alpha(double alpha) const {
  return ValenceLexicon(entries_, pos_threshold_, neg_threshold_, alpha);
}

std::vector<std::string> ValenceLexicon::sorted_tokens() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [token, v] : entries_) out.push_back(token);
  std::sort(out.begin(), out.end());
  return out;
}

ValenceLexicon parse_lexicon(std::istream& in, double pos_threshold, double neg_threshold,
                             double alpha) {
  std::unordered_map<std::string, double> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    const auto where = "lexicon line " + std::to_string(line_no);
    if (tab == std::string::npos) throw Error(ErrorCode::LexiconFormat, where + ": expected token<TAB>valence");
    std::string token = line.substr(0, tab);
    std::transform(token.begin(), token.end(), token.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    const std::string value = line.substr(tab + 1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
      throw Error(ErrorCode::LexiconFormat, where + ": bad valence '" + value + "'");
    }
    if (!(v >= -1.0 && v <= 1.0)) {
      throw Error(ErrorCode::LexiconFormat, where + ": valence outside [-1, 1]");
    }
    if (!entries.emplace(token, v).second) {
      throw Error(ErrorCode::LexiconFormat, where + ": duplicate token '" + token + "'");
    }
  }
  return ValenceLexicon(std::move(entries), pos_threshold, neg_threshold, alpha);
}

ValenceLexicon load_lexicon(const std::filesystem::path& path, double pos_threshold,
                            double neg_threshold, double alpha) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open lexicon " + path.string());
  return parse_lexicon(in, pos_threshold, neg_threshold, alpha);
}

std::filesystem::path default_lexicon_path() {
  if (const char* dir = std::getenv("SENTISTAB_DATA_DIR"); dir && *dir) {
    return std::filesystem::path(dir) / "lexicon.tsv";
  }
  return std::filesystem::path(SENTISTAB_DATA_DIR) / "lexicon.tsv";
}

core::SentimentDistribution lexicon_analyze(const std::vector<std::string>& tokens,
                                            const ValenceLexicon& lex) {
  std::array<double, core::kNumClasses> counts{};
  for (const auto& token : tokens) {
    if (auto v = lex.valence(token)) counts[static_cast<std::size_t>(lex.classify(*v))] += 1.0;
  }
  const double matched = counts[0] + counts[1] + counts[2];
  const double denom = matched + 3.0 * lex.alpha();
  for (auto& c : counts) c = (c + lex.alpha()) / denom;
  return core::clamp_normalize(counts);
}

core::SentimentDistribution lexicon_analyze(std::string_view text, const ValenceLexicon& lex) {
  return lexicon_analyze(tokenize(text), lex);
}

}  // namespace sentistab::sentiment
