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

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sentistab/core/distribution.hpp"

namespace sentistab::sentiment {

/// Token -> valence in [-1, 1]. Valences above pos_threshold count as
/// positive, below neg_threshold as negative, anything in between neutral.
class ValenceLexicon {
 public:
  ValenceLexicon() = default;
  /// Throws LexiconFormat on out-of-range valences, duplicate or non-canonical
  /// tokens, or invalid thresholds/alpha.
  explicit ValenceLexicon(std::unordered_map<std::string, double> entries,
                          double pos_threshold = 0.1, double neg_threshold = -0.1,
                          double alpha = 1.0);

  std::optional<double> valence(std::string_view token) const;
  bool contains(std::string_view token) const { return valence(token).has_value(); }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Bin of a valence: Negative, Neutral or Positive.
  core::SentimentClass classify(double valence) const noexcept;

  double pos_threshold() const noexcept { return pos_threshold_; }
  double neg_threshold() const noexcept { return neg_threshold_; }
  double alpha() const noexcept { return alpha_; }

  ValenceLexicon with_alpha(double alpha) const;

  /// Tokens sorted ascending (stable iteration order for generators).
  std::vector<std::string> sorted_tokens() const;

 private:
  std::unordered_map<std::string, double> entries_;
  double pos_threshold_ = 0.1;
  double neg_threshold_ = -0.1;
  double alpha_ = 1.0;
};

/// Lexicon file: UTF-8, one "token<TAB>valence" per line; blank lines and
/// lines starting with '#' are ignored. Tokens are lowercased on load.
ValenceLexicon parse_lexicon(std::istream& in, double pos_threshold = 0.1,
                             double neg_threshold = -0.1, double alpha = 1.0);
ValenceLexicon load_lexicon(const std::filesystem::path& path, double pos_threshold = 0.1,
                            double neg_threshold = -0.1, double alpha = 1.0);

/// Bundled lexicon location: $SENTISTAB_DATA_DIR/lexicon.tsv when the
/// variable is set, else the data directory baked in at build time.
std::filesystem::path default_lexicon_path();

/// Laplace-smoothed class frequencies of the matched tokens; unmatched
/// tokens are ignored. Never throws.
core::SentimentDistribution lexicon_analyze(std::string_view text, const ValenceLexicon& lex);
core::SentimentDistribution lexicon_analyze(const std::vector<std::string>& tokens,
                                            const ValenceLexicon& lex);

}  // namespace sentistab::sentiment
