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

#include "sentistab/eval/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "sentistab/detector/calibrate.hpp"
#include "sentistab/error.hpp"
#include "sentistab/robustness/attacks.hpp"
#include "sentistab/text.hpp"

namespace sentistab::eval {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::Main: return "main";
    case Protocol::ParaphraseSweep: return "paraphrase_sweep";
    case Protocol::PerturbSweep: return "perturb_sweep";
    case Protocol::LengthSweep: return "length_sweep";
    case Protocol::PromptCountSweep: return "prompt_count_sweep";
  }
  return "main";
}

std::string_view to_string(Calibration c) {
  switch (c) {
    case Calibration::Fixed: return "fixed";
    case Calibration::PerDataset: return "per_dataset";
    case Calibration::PerPoint: return "per_point";
  }
  return "per_dataset";
}

// ------------------------------------------------------------- config

namespace {

// Literals built in code are signed even when non-negative.
bool is_non_negative_integer(const nlohmann::json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ConfigError, field + ": " + what);
}

bool integral_points(Protocol p) {
  return p == Protocol::LengthSweep || p == Protocol::PromptCountSweep;
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) bad("config", "expected a JSON object");
  static const std::vector<std::string> kKeys = {"protocol", "detector", "corpus", "synthetic",
                                                 "paraphrase_corpus", "sweep", "seed", "calibration",
                                                 "half_width", "aggregate_words", "jobs", "output_dir"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) bad(key, "unknown key");
  }

  ExperimentConfig cfg;
  cfg.base_dir = base_dir;
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base_dir / p; };

  const auto protocol = j.value("protocol", std::string("main"));
  if (protocol == "main") cfg.protocol = Protocol::Main;
  else if (protocol == "paraphrase_sweep") cfg.protocol = Protocol::ParaphraseSweep;
  else if (protocol == "perturb_sweep") cfg.protocol = Protocol::PerturbSweep;
  else if (protocol == "length_sweep") cfg.protocol = Protocol::LengthSweep;
  else if (protocol == "prompt_count_sweep") cfg.protocol = Protocol::PromptCountSweep;
  else bad("protocol", "unknown protocol '" + protocol + "'");

  if (j.contains("detector")) {
    const auto& d = j.at("detector");
    if (d.is_string()) {
      const auto path = resolve(d.get<std::string>());
      cfg.detector = read_json_file(path);
      cfg.base_dir = base_dir;  // detector-relative paths still resolve from the experiment file
    } else if (d.is_object()) {
      cfg.detector = d;
    } else {
      bad("detector", "expected an object or a path");
    }
  }

  if (j.contains("corpus")) {
    const auto& c = j.at("corpus");
    if (c.is_string()) {
      cfg.corpus_paths.push_back(resolve(c.get<std::string>()));
    } else if (c.is_array()) {
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c[i].is_string()) bad("corpus[" + std::to_string(i) + "]", "expected a path");
        cfg.corpus_paths.push_back(resolve(c[i].get<std::string>()));
      }
    } else {
      bad("corpus", "expected a path or a list of paths");
    }
  }
  if (j.contains("synthetic")) {
    const auto& s = j.at("synthetic");
    if (!s.is_object()) bad("synthetic", "expected an object");
    SyntheticSpec spec;
    if (s.contains("n_per_class")) {
      if (!is_non_negative_integer(s.at("n_per_class")) || s.at("n_per_class").get<std::size_t>() == 0) {
        bad("synthetic.n_per_class", "expected a positive integer");
      }
      spec.n_per_class = s.at("n_per_class").get<std::size_t>();
    }
    if (s.contains("seed")) {
      if (!is_non_negative_integer(s.at("seed"))) bad("synthetic.seed", "expected an unsigned integer");
      spec.seed = s.at("seed").get<std::uint64_t>();
    }
    cfg.synthetic = spec;
  }
  if (cfg.corpus_paths.empty() == !cfg.synthetic.has_value()) {
    bad("corpus", "exactly one of corpus or synthetic must be given");
  }
  if (j.contains("paraphrase_corpus")) {
    if (!j.at("paraphrase_corpus").is_string()) bad("paraphrase_corpus", "expected a path");
    cfg.paraphrase_corpus = resolve(j.at("paraphrase_corpus").get<std::string>());
  }

  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    if (!s.is_array()) bad("sweep", "expected a list of numbers");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string field = "sweep[" + std::to_string(i) + "]";
      if (!s[i].is_number()) bad(field, "expected a number");
      const double v = s[i].get<double>();
      switch (cfg.protocol) {
        case Protocol::Main:
          bad("sweep", "main protocol takes no sweep values");
        case Protocol::ParaphraseSweep:
        case Protocol::PerturbSweep:
          if (!(v >= 0.0 && v <= 1.0)) bad(field, "ratio " + format_double(v) + " outside [0, 1]");
          break;
        case Protocol::LengthSweep:
          if (!(v >= 1.0) || v != std::floor(v)) bad(field, "length center must be a positive integer");
          break;
        case Protocol::PromptCountSweep:
          if (!(v >= 1.0 && v <= 9.0) || v != std::floor(v)) bad(field, "prompt count must be an integer in 1..9");
          break;
      }
      if (!cfg.sweep.empty() && !(v > cfg.sweep.back())) bad(field, "sweep values must be strictly ascending");
      cfg.sweep.push_back(v);
    }
  }
  if (!j.contains("sweep")) {
    if (cfg.protocol == Protocol::PerturbSweep) cfg.sweep = {0.05, 0.1, 0.2};
    if (cfg.protocol == Protocol::PromptCountSweep) cfg.sweep = {3, 5, 7, 9};
  }
  if (cfg.protocol != Protocol::Main && cfg.sweep.empty()) bad("sweep", "sweep protocols need sweep values");

  if (j.contains("seed")) {
    if (!is_non_negative_integer(j.at("seed"))) bad("seed", "expected an unsigned integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("calibration")) {
    const auto c = j.at("calibration").is_string() ? j.at("calibration").get<std::string>() : "";
    if (c == "fixed") cfg.calibration = Calibration::Fixed;
    else if (c == "per_dataset") cfg.calibration = Calibration::PerDataset;
    else if (c == "per_point") cfg.calibration = Calibration::PerPoint;
    else bad("calibration", "expected fixed, per_dataset or per_point");
  }
  if (j.contains("half_width")) {
    if (!is_non_negative_integer(j.at("half_width"))) bad("half_width", "expected a non-negative integer");
    cfg.half_width = j.at("half_width").get<std::size_t>();
  }
  if (j.contains("aggregate_words") && !j.at("aggregate_words").is_null()) {
    if (!is_non_negative_integer(j.at("aggregate_words")) || j.at("aggregate_words").get<std::size_t>() == 0) {
      bad("aggregate_words", "expected a positive integer");
    }
    cfg.aggregate_words = j.at("aggregate_words").get<std::size_t>();
  }
  if (j.contains("jobs")) {
    if (!j.at("jobs").is_number_integer() || j.at("jobs").get<int>() < 0) bad("jobs", "expected a non-negative integer");
    cfg.jobs = j.at("jobs").get<int>();
  }
  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string()) bad("output_dir", "expected a path");
    cfg.output_dir = resolve(j.at("output_dir").get<std::string>());
  } else {
    cfg.output_dir = base_dir / "report";
  }
  return cfg;
}

// ----------------------------------------------------------- CSV files

namespace {

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string opt_number(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

// RFC 4180 record reader; quoted cells may span lines.
bool read_csv_record(std::istream& in, std::vector<std::string>& cells) {
  cells.clear();
  int c = in.get();
  if (c == EOF) return false;
  std::string cell;
  bool quoted = false;
  while (c != EOF) {
    const char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        if (in.peek() == '"') {
          cell += '"';
          in.get();
        } else {
          quoted = false;
        }
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (ch == '\n') {
      break;
    } else if (ch != '\r') {
      cell += ch;
    }
    c = in.get();
  }
  cells.push_back(std::move(cell));
  return true;
}

double parse_number(const std::string& s, std::size_t line) {
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "scores line " + std::to_string(line) + ": bad number '" + s + "'");
  }
}

}  // namespace

void write_scores_csv(std::ostream& out, const std::vector<corpus::TextSample>& samples,
                      const std::vector<detector::DetectionResult>& results) {
  std::unordered_map<std::string_view, const corpus::TextSample*> by_id;
  for (const auto& s : samples) by_id.emplace(s.id, &s);
  out << "id,label,word_count,sdc,sdp,signed,verdict\n";
  for (const auto& r : results) {
    const auto* s = by_id.at(r.sample_id);
    out << csv_cell(r.sample_id) << ',' << corpus::to_string(s->label) << ',' << s->word_count() << ','
        << format_double(r.scores.sdc) << ',' << opt_number(r.scores.sdp) << ','
        << opt_number(r.scores.signed_divergence) << ',' << detector::to_string(r.verdict) << '\n';
  }
}

void write_embeddings_csv(std::ostream& out, const std::vector<corpus::TextSample>& samples,
                          const std::vector<detector::DetectionResult>& results) {
  std::unordered_map<std::string_view, corpus::Label> labels;
  for (const auto& s : samples) labels.emplace(s.id, s.label);
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, 3 * (1 + r.record.rewrites.size()));
  out << "id,label";
  for (std::size_t f = 0; f < width; ++f) out << ",f" << f;
  out << '\n';
  for (const auto& r : results) {
    out << csv_cell(r.sample_id) << ',' << corpus::to_string(labels.at(r.sample_id));
    for (double v : core::feature_embedding(r.record)) out << ',' << format_double(v);
    out << '\n';
  }
}

std::vector<ScoreRow> read_scores_csv(std::istream& in) {
  std::vector<std::string> cells;
  if (!read_csv_record(in, cells) ||
      cells != std::vector<std::string>{"id", "label", "word_count", "sdc", "sdp", "signed", "verdict"}) {
    throw Error(ErrorCode::ParseError, "scores line 1: expected header id,label,word_count,sdc,sdp,signed,verdict");
  }
  std::vector<ScoreRow> rows;
  std::size_t line = 1;
  while (read_csv_record(in, cells)) {
    ++line;
    if (cells.size() == 1 && cells[0].empty()) continue;
    if (cells.size() != 7) throw Error(ErrorCode::ParseError, "scores line " + std::to_string(line) + ": expected 7 cells");
    ScoreRow row;
    row.id = cells[0];
    try {
      row.label = corpus::parse_label(cells[1]);
    } catch (const Error&) {
      throw Error(ErrorCode::ParseError, "scores line " + std::to_string(line) + ": bad label '" + cells[1] + "'");
    }
    row.word_count = static_cast<std::size_t>(parse_number(cells[2], line));
    row.sdc = parse_number(cells[3], line);
    if (!cells[4].empty()) row.sdp = parse_number(cells[4], line);
    if (!cells[5].empty()) row.signed_divergence = parse_number(cells[5], line);
    if (cells[6] == "llm") {
      row.verdict = detector::Verdict::Llm;
    } else if (cells[6] == "human") {
      row.verdict = detector::Verdict::Human;
    } else {
      throw Error(ErrorCode::ParseError, "scores line " + std::to_string(line) + ": bad verdict '" + cells[6] + "'");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double score_of(const ScoreRow& row, core::Metric metric) {
  switch (metric) {
    case core::Metric::Sdc: return row.sdc;
    case core::Metric::Sdp:
      if (!row.sdp) throw Error(ErrorCode::EmptyRoundTrips, "row '" + row.id + "' has no sdp score");
      return *row.sdp;
    case core::Metric::Signed:
      if (!row.signed_divergence) throw Error(ErrorCode::EmptyRewrites, "row '" + row.id + "' has no signed score");
      return *row.signed_divergence;
  }
  return row.sdc;
}

MetricsBundle metrics_from_scores(const std::vector<ScoreRow>& rows, core::Metric metric) {
  std::vector<Outcome> outcomes;
  for (const auto& r : rows) {
    if (r.label != corpus::Label::Unknown) outcomes.push_back({r.verdict, r.label, score_of(r, metric)});
  }
  return compute_metrics(outcomes);
}

// ------------------------------------------------------------- runner

namespace {

constexpr std::string_view kParaphraseInstruction =
    "Paraphrase the following text sentence by sentence, keeping its meaning.";

struct PointRun {
  std::vector<corpus::TextSample> samples;
  std::vector<detector::DetectionResult> results;
  std::vector<detector::SampleError> errors;
};

class Runner {
 public:
  Runner(const ExperimentConfig& cfg, ExperimentReport& report) : cfg_(cfg), report_(report) {}

  PointRun run(std::vector<corpus::TextSample> samples, const detector::DetectorConfig& det) const {
    PointRun out;
    auto batch = detector::detect_batch(samples, det, cfg_.jobs);
    out.samples = std::move(samples);
    out.results = std::move(batch.results);
    out.errors = std::move(batch.errors);
    return out;
  }

  /// Calibrated threshold over the labeled results, or nullopt when only
  /// one class was scored.
  static std::optional<double> calibrated(const PointRun& run) {
    std::unordered_map<std::string_view, corpus::Label> labels;
    for (const auto& s : run.samples) labels.emplace(s.id, s.label);
    std::vector<detector::ScoredSample> scored;
    bool has_llm = false, has_human = false;
    for (const auto& r : run.results) {
      const auto label = labels.at(r.sample_id);
      if (label == corpus::Label::Unknown) continue;
      has_llm = has_llm || label == corpus::Label::Llm;
      has_human = has_human || label == corpus::Label::Human;
      scored.push_back({r.sample_id, label, r.score});
    }
    if (!has_llm || !has_human) return std::nullopt;
    return detector::calibrate(scored).best_threshold;
  }

  static void apply_threshold(PointRun& run, double threshold) {
    for (auto& r : run.results) {
      r.threshold = threshold;
      r.verdict = detector::decide(r.score, threshold);
    }
  }

  ExperimentRow row(std::optional<double> point, const PointRun& run, double threshold) {
    ExperimentRow row;
    row.point = point;
    row.threshold = threshold;
    row.count = run.results.size();
    row.errors = run.errors.size();
    std::unordered_map<std::string_view, corpus::Label> labels;
    for (const auto& s : run.samples) labels.emplace(s.id, s.label);
    std::vector<Outcome> outcomes;
    for (const auto& r : run.results) {
      row.analyzer_calls += r.analyzer_calls;
      row.llm_calls += r.llm_call_count();
      const auto label = labels.at(r.sample_id);
      if (label != corpus::Label::Unknown) outcomes.push_back({r.verdict, label, r.score});
    }
    if (!outcomes.empty()) row.metrics = compute_metrics(outcomes);
    for (const auto& e : run.errors) {
      report_.errors.push_back({point, e.sample_id, std::string(sentistab::to_string(e.code)), e.message});
    }
    return row;
  }

  void write_scores(const fs::path& name, const PointRun& run) {
    const auto path = cfg_.output_dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    write_scores_csv(out, run.samples, run.results);
    report_.files.push_back(path);
  }

  void write_embeddings(const PointRun& run) {
    const auto path = cfg_.output_dir / "embeddings.csv";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
    write_embeddings_csv(out, run.samples, run.results);
    report_.files.push_back(path);
  }

  /// Threshold for a sweep row.
  double threshold_for(const PointRun& run, double reference) const {
    if (cfg_.calibration != Calibration::PerPoint) return reference;
    return calibrated(run).value_or(reference);
  }

 private:
  const ExperimentConfig& cfg_;
  ExperimentReport& report_;
};

std::vector<corpus::TextSample> load_samples(const ExperimentConfig& cfg, const Pipeline& pipeline) {
  std::vector<corpus::TextSample> samples;
  if (cfg.synthetic) {
    auto lex = pipeline.lexicon ? pipeline.lexicon : load_lexicon_or_default();
    samples = corpus::generate_synthetic(cfg.synthetic->n_per_class, *lex, cfg.synthetic->seed).samples;
  } else {
    for (const auto& path : cfg.corpus_paths) {
      auto c = corpus::load_jsonl(path);
      std::move(c.samples.begin(), c.samples.end(), std::back_inserter(samples));
    }
  }
  if (cfg.aggregate_words) {
    std::vector<corpus::TextSample> aggregated;
    for (auto label : {corpus::Label::Human, corpus::Label::Llm, corpus::Label::Unknown}) {
      std::vector<corpus::TextSample> group;
      for (const auto& s : samples) {
        if (s.label == label) group.push_back(s);
      }
      auto agg = corpus::aggregate_short(group, *cfg.aggregate_words, cfg.seed);
      std::move(agg.begin(), agg.end(), std::back_inserter(aggregated));
    }
    samples = std::move(aggregated);
  }
  return samples;
}

std::string point_name(Protocol p, double v) {
  return "scores_" + std::string(to_string(p)) + "_" + format_double(v) + ".csv";
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  auto pipeline = build_pipeline(cfg.detector, cfg.base_dir, cfg.overrides);
  ExperimentReport report;
  report.protocol = cfg.protocol;
  report.metric = pipeline.detector.metric;
  report.calibration = cfg.calibration;

  auto samples = load_samples(cfg, pipeline);
  report.samples = samples.size();
  report.manifest = corpus::Corpus{samples}.manifest();

  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + cfg.output_dir.string() + ": " + ec.message());

  Runner runner(cfg, report);
  auto reference = runner.run(samples, pipeline.detector);
  double reference_threshold = pipeline.detector.threshold;
  if (cfg.calibration != Calibration::Fixed) {
    auto t = Runner::calibrated(reference);
    if (!t) throw Error(ErrorCode::SingleClassInput, "calibration needs scored human and llm samples");
    reference_threshold = *t;
  }
  Runner::apply_threshold(reference, reference_threshold);
  report.rows.push_back(runner.row(std::nullopt, reference, reference_threshold));
  runner.write_scores("scores.csv", reference);
  runner.write_embeddings(reference);

  auto sweep_point = [&](double v, PointRun run, bool own_reference) {
    double threshold = reference_threshold;
    if (own_reference && cfg.calibration != Calibration::Fixed) {
      threshold = Runner::calibrated(run).value_or(reference_threshold);
    } else {
      threshold = runner.threshold_for(run, reference_threshold);
    }
    Runner::apply_threshold(run, threshold);
    report.rows.push_back(runner.row(v, run, threshold));
    runner.write_scores(point_name(cfg.protocol, v), run);
  };

  switch (cfg.protocol) {
    case Protocol::Main:
      break;

    case Protocol::PerturbSweep:
      for (double rate : cfg.sweep) {
        auto attacked = samples;
        for (auto& s : attacked) s.text = robustness::lexical_perturb(s.text, rate, cfg.seed);
        sweep_point(rate, runner.run(std::move(attacked), pipeline.detector), false);
      }
      break;

    case Protocol::ParaphraseSweep: {
      // Paraphrases are only produced when some ratio actually uses them.
      std::unordered_map<std::string, std::string> paraphrases;
      std::vector<detector::SampleError> paraphrase_errors;
      const bool needed = std::any_of(cfg.sweep.begin(), cfg.sweep.end(), [](double r) { return r > 0.0; });
      if (needed && cfg.paraphrase_corpus) {
        for (auto& s : corpus::load_jsonl(*cfg.paraphrase_corpus).samples) paraphrases.emplace(s.id, std::move(s.text));
      } else if (needed) {
        std::vector<std::optional<std::string>> generated(samples.size());
        std::vector<std::optional<detector::SampleError>> failed(samples.size());
        const rewrite::LerPrompt prompt{"paraphrase", std::string(kParaphraseInstruction)};
        const auto n = static_cast<std::ptrdiff_t>(samples.size());
        const int threads = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
          const auto idx = static_cast<std::size_t>(i);
          try {
            generated[idx] = pipeline.detector.rewriter->rewrite(samples[idx].text, prompt);
          } catch (const Error& e) {
            failed[idx] = detector::SampleError{idx, samples[idx].id, e.code(), e.detail()};
          }
        }
        for (std::size_t i = 0; i < samples.size(); ++i) {
          if (generated[i]) paraphrases.emplace(samples[i].id, std::move(*generated[i]));
          if (failed[i]) paraphrase_errors.push_back(*failed[i]);
        }
      }
      for (double ratio : cfg.sweep) {
        std::vector<corpus::TextSample> attacked;
        std::vector<detector::SampleError> errors;
        for (std::size_t i = 0; i < samples.size(); ++i) {
          auto s = samples[i];
          if (ratio > 0.0) {
            auto it = paraphrases.find(s.id);
            if (it == paraphrases.end()) {
              errors.push_back({i, s.id, ErrorCode::InvalidArgument, "no paraphrase available"});
              continue;
            }
            try {
              s.text = robustness::paraphrase_mix(s.text, it->second, ratio, cfg.seed);
            } catch (const Error& e) {
              errors.push_back({i, s.id, e.code(), e.detail()});
              continue;
            }
          }
          attacked.push_back(std::move(s));
        }
        auto run = runner.run(std::move(attacked), pipeline.detector);
        run.errors.insert(run.errors.begin(), errors.begin(), errors.end());
        std::sort(run.errors.begin(), run.errors.end(),
                  [](const auto& a, const auto& b) { return a.index < b.index; });
        sweep_point(ratio, std::move(run), false);
      }
      break;
    }

    case Protocol::LengthSweep:
      for (double center : cfg.sweep) {
        const auto bucket = corpus::length_bucket(corpus::Corpus{reference.samples},
                                                  static_cast<std::size_t>(center), cfg.half_width);
        PointRun run;
        run.samples = bucket.samples;
        std::unordered_map<std::string_view, bool> keep;
        for (const auto& s : run.samples) keep.emplace(s.id, true);
        for (const auto& r : reference.results) {
          if (keep.count(r.sample_id)) run.results.push_back(r);
        }
        sweep_point(center, std::move(run), false);
      }
      break;

    case Protocol::PromptCountSweep:
      for (double count : cfg.sweep) {
        auto overrides = cfg.overrides;
        overrides.prompt_count = static_cast<std::size_t>(count);
        auto point_pipeline = build_pipeline(cfg.detector, cfg.base_dir, overrides);
        sweep_point(count, runner.run(samples, point_pipeline.detector), true);
      }
      break;
  }

  const auto metrics_path = cfg.output_dir / "metrics.json";
  {
    std::ofstream out(metrics_path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + metrics_path.string());
    out << to_json(report).dump(2) << '\n';
  }
  report.files.push_back(metrics_path);
  return report;
}

ordered_json to_json(const ExperimentReport& report) {
  auto number = [](double v) {
    if (std::isinf(v)) return ordered_json(v > 0 ? "inf" : "-inf");
    return ordered_json(v);
  };
  auto point = [&](const std::optional<double>& p) {
    if (!p) return ordered_json(nullptr);
    if (integral_points(report.protocol)) return ordered_json(static_cast<std::int64_t>(*p));
    return ordered_json(*p);
  };
  ordered_json j;
  j["protocol"] = to_string(report.protocol);
  j["metric"] = core::to_string(report.metric);
  j["calibration"] = to_string(report.calibration);
  j["samples"] = report.samples;
  j["manifest"] = corpus::to_json(report.manifest);
  j["rows"] = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r;
    r["point"] = point(row.point);
    r["count"] = row.count;
    r["threshold"] = number(row.threshold);
    r["metrics"] = row.metrics ? to_json(*row.metrics) : ordered_json(nullptr);
    r["errors"] = row.errors;
    r["analyzer_calls"] = row.analyzer_calls;
    r["llm_calls"] = row.llm_calls;
    j["rows"].push_back(std::move(r));
  }
  j["errors"] = ordered_json::array();
  for (const auto& e : report.errors) {
    j["errors"].push_back({{"point", point(e.point)}, {"id", e.sample_id}, {"code", e.code}, {"message", e.message}});
  }
  return j;
}

}  // namespace sentistab::eval
