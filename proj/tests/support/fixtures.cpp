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

#include "support/fixtures.hpp"

#include <stdlib.h>

#include <fstream>
#include <iterator>
#include <stdexcept>

#include "sentistab/config.hpp"

namespace sentistab::testing {

namespace fs = std::filesystem;

TempDir::TempDir() {
  std::string tmpl = (fs::temp_directory_path() / "sentistab-test-XXXXXX").string();
  if (::mkdtemp(tmpl.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

std::shared_ptr<const sentiment::ValenceLexicon> toy_lexicon() {
  static const auto lex = std::make_shared<const sentiment::ValenceLexicon>(
      std::unordered_map<std::string, double>{{"good", 0.8}, {"bad", -0.7}});
  return lex;
}

std::shared_ptr<const sentiment::ValenceLexicon> bundled_lexicon() {
  static const auto lex = load_lexicon_or_default();
  return lex;
}

core::SentimentDistribution dist(double neg, double neu, double pos) {
  return core::SentimentDistribution::of(neg, neu, pos);
}

nlohmann::json llm_detector_config(const std::string& endpoint, const fs::path& cache_dir, const std::string& mode) {
  return {{"analyzer", {{"backend", "llm"}}},
          {"rewriter", {{"backend", "llm"}}},
          {"llm", {{"endpoint", endpoint}, {"model", "fake-model"}}},
          {"gateway",
           {{"mode", mode},
            {"cache_dir", cache_dir.string()},
            {"max_in_flight", 4},
            {"max_retries", 3},
            {"backoff_base_seconds", 0.01},
            {"timeout_seconds", 10}}}};
}

}  // namespace sentistab::testing
