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
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "sentistab/core/divergence.hpp"
#include "sentistab/sentiment/lexicon.hpp"

namespace sentistab::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

/// {good: +0.8, bad: -0.7}
std::shared_ptr<const sentiment::ValenceLexicon> toy_lexicon();
std::shared_ptr<const sentiment::ValenceLexicon> bundled_lexicon();

core::SentimentDistribution dist(double neg, double neu, double pos);

/// Detector config for the llm analyzer and rewriter against `endpoint`.
nlohmann::json llm_detector_config(const std::string& endpoint, const std::filesystem::path& cache_dir,
                                   const std::string& mode = "live");

}  // namespace sentistab::testing
