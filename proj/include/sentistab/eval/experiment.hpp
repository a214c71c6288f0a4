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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sentistab/config.hpp"
#include "sentistab/eval/metrics.hpp"

namespace sentistab::eval {

enum class Protocol { Main, ParaphraseSweep, PerturbSweep, LengthSweep, PromptCountSweep };

/// fixed: use the configured threshold everywhere. per_dataset: calibrate
/// once on the clean reference run (prompt-count points calibrate on
/// themselves, being clean runs). per_point: calibrate every row on its
/// own scores.
enum class Calibration { Fixed, PerDataset, PerPoint };

std::string_view to_string(Protocol p);
std::string_view to_string(Calibration c);

struct SyntheticSpec {
  std::size_t n_per_class = 50;
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  Protocol protocol = Protocol::Main;
  nlohmann::json detector = nlohmann::json::object();
  std::filesystem::path base_dir = ".";
  std::vector<std::filesystem::path> corpus_paths;
  std::optional<SyntheticSpec> synthetic;
  std::optional<std::filesystem::path> paraphrase_corpus;
  std::vector<double> sweep;
  std::uint64_t seed = 0;
  Calibration calibration = Calibration::PerDataset;
  std::size_t half_width = 10;
  std::optional<std::size_t> aggregate_words;
  int jobs = 0;
  std::filesystem::path output_dir = "report";
  PipelineOverrides overrides;
};

/// Experiment config schema is documented in docs/config.md. Throws
/// ConfigError naming the invalid field (e.g. "sweep[1]").
ExperimentConfig parse_experiment_config(const nlohmann::json& j,
                                         const std::filesystem::path& base_dir);

struct ExperimentRow {
  std::optional<double> point;  // unset for the clean reference row
  std::size_t count = 0;        // samples scored successfully
  double threshold = 0.0;
  std::optional<MetricsBundle> metrics;  // unset when nothing labeled was scored
  std::size_t errors = 0;
  std::size_t analyzer_calls = 0;
  std::size_t llm_calls = 0;
};

struct RowError {
  std::optional<double> point;
  std::string sample_id;
  std::string code;
  std::string message;
};

struct ExperimentReport {
  Protocol protocol = Protocol::Main;
  core::Metric metric = core::Metric::Sdc;
  Calibration calibration = Calibration::PerDataset;
  std::size_t samples = 0;
  corpus::Manifest manifest;
  std::vector<ExperimentRow> rows;  // rows[0] is the reference run
  std::vector<RowError> errors;
  std::vector<std::filesystem::path> files;
};

/// Runs the reference (clean) pass, then one row per sweep value, and
/// writes scores.csv, embeddings.csv and metrics.json (plus
/// scores_<protocol>_<point>.csv per sweep point) into output_dir.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

nlohmann::ordered_json to_json(const ExperimentReport& report);

// --- report files --------------------------------------------------------

/// Header: id,label,word_count,sdc,sdp,signed,verdict. Absent scores are
/// empty cells; numbers use the shortest round-trip decimal form.
void write_scores_csv(std::ostream& out, const std::vector<corpus::TextSample>& samples,
                      const std::vector<detector::DetectionResult>& results);

/// Header: id,label,f0..f{3(1+I)-1}.
void write_embeddings_csv(std::ostream& out, const std::vector<corpus::TextSample>& samples,
                          const std::vector<detector::DetectionResult>& results);

struct ScoreRow {
  std::string id;
  corpus::Label label = corpus::Label::Unknown;
  std::size_t word_count = 0;
  double sdc = 0.0;
  std::optional<double> sdp;
  std::optional<double> signed_divergence;
  detector::Verdict verdict = detector::Verdict::Human;
};

/// Parses a scores CSV (ParseError with the line number on bad input).
std::vector<ScoreRow> read_scores_csv(std::istream& in);

/// The metrics bundle implied by a scores CSV alone; rows with unknown
/// labels are skipped.
MetricsBundle metrics_from_scores(const std::vector<ScoreRow>& rows, core::Metric metric);

double score_of(const ScoreRow& row, core::Metric metric);

}  // namespace sentistab::eval
