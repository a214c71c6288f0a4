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

#include "sentistab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "sentistab/config.hpp"
#include "sentistab/core/batch.hpp"
#include "sentistab/detector/calibrate.hpp"
#include "sentistab/error.hpp"
#include "sentistab/eval/experiment.hpp"
#include "sentistab/robustness/attacks.hpp"

namespace sentistab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int status_for(const Error& e) {
  if (e.is_backend_error()) return kBackend;
  switch (e.code()) {
    case ErrorCode::ConfigError:
    case ErrorCode::UnknownPrompt:
    case ErrorCode::UnknownPair:
      return kUsage;
    default:
      return kData;
  }
}

std::string read_all(std::istream& in) {
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return read_all(in);
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::Io, "cannot open " + path);
  return read_all(file);
}

/// Writes to `path`, or to `out` when the path is empty or "-".
template <typename Fn>
void write_output(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::Io, "cannot write " + path);
  fn(file);
}

struct PipelineOptions {
  std::string config;
  std::string metric;
  std::optional<double> threshold;
  bool replay = false;
  int jobs = 0;
};

void add_pipeline_flags(CLI::App* cmd, PipelineOptions& o) {
  cmd->add_option("--config", o.config, "Detector config (JSON); defaults to lexicon + mock_neutralizing");
  cmd->add_option("--metric", o.metric, "Decision score: sdc, sdp or signed")
      ->check(CLI::IsMember({"sdc", "sdp", "signed"}));
  cmd->add_option("--threshold", o.threshold, "Decision threshold epsilon (score < epsilon means llm)");
  cmd->add_flag("--replay", o.replay, "Serve LLM calls from the cache only");
  cmd->add_option("--jobs", o.jobs, "Worker threads (default: processors, capped by gateway max_in_flight)")
      ->check(CLI::NonNegativeNumber);
}

PipelineOverrides overrides_of(const PipelineOptions& o) {
  PipelineOverrides ov;
  if (!o.metric.empty()) ov.metric = core::parse_metric(o.metric);
  ov.threshold = o.threshold;
  if (o.replay) ov.mode = gateway::Mode::Replay;
  return ov;
}

Pipeline load_pipeline(const PipelineOptions& o) {
  json cfg = json::object();
  fs::path base = fs::current_path();
  if (!o.config.empty()) {
    cfg = read_json_file(o.config);
    base = fs::absolute(o.config).parent_path();
  }
  return build_pipeline(cfg, base, overrides_of(o));
}

int effective_jobs(int requested, const gateway::Gateway* gw) {
  if (requested > 0) return requested;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (gw && gw->config().mode != gateway::Mode::Replay) jobs = std::min(jobs, gw->config().max_in_flight);
  return jobs;
}

void report_sample_errors(const std::vector<detector::SampleError>& errors, std::ostream& err) {
  for (const auto& e : errors) {
    err << "sentistab: sample " << e.sample_id << ": " << to_string(e.code) << ": " << e.message << '\n';
  }
}

// ---------------------------------------------------------------- commands

struct DetectOptions {
  PipelineOptions pipeline;
  std::string input;
  std::string id = "input";
  bool jsonl = false;
};

int cmd_detect(const DetectOptions& o, std::istream& in, std::ostream& out, std::ostream& err) {
  auto pipeline = load_pipeline(o.pipeline);
  const std::string data = read_input(o.input, in);
  if (!o.jsonl) {
    const corpus::TextSample sample{o.id, data, corpus::Label::Unknown, std::nullopt, std::nullopt};
    out << detector::to_json(detector::detect(sample, pipeline.detector)).dump() << '\n';
    return kOk;
  }
  std::istringstream stream(data);
  const auto corpus = corpus::parse_jsonl(stream);
  if (corpus.samples.empty()) throw Error(ErrorCode::EmptyInput, "no samples in input");
  const auto batch = detector::detect_batch(corpus.samples, pipeline.detector,
                                            effective_jobs(o.pipeline.jobs, pipeline.gateway.get()));
  for (const auto& r : batch.results) out << detector::to_json(r).dump() << '\n';
  report_sample_errors(batch.errors, err);
  if (batch.errors.empty()) return kOk;
  if (batch.results.empty()) {
    const bool backend = std::all_of(batch.errors.begin(), batch.errors.end(),
                                     [](const auto& e) { return Error(e.code, "").is_backend_error(); });
    if (backend) return kBackend;
  }
  return kPartial;
}

struct EvaluateOptions {
  std::string config;
  std::string output;
  bool replay = false;
  int jobs = 0;
};

int cmd_evaluate(const EvaluateOptions& o, std::ostream& out, std::ostream& err) {
  const auto base = fs::absolute(o.config).parent_path();
  auto cfg = eval::parse_experiment_config(read_json_file(o.config), base);
  if (!o.output.empty()) cfg.output_dir = fs::absolute(o.output);
  if (o.replay) cfg.overrides.mode = gateway::Mode::Replay;
  if (o.jobs > 0) {
    cfg.jobs = o.jobs;
  } else if (cfg.jobs == 0) {
    // Peek at the pipeline only to learn the gateway cap.
    auto probe = build_pipeline(cfg.detector, cfg.base_dir, cfg.overrides);
    cfg.jobs = effective_jobs(0, probe.gateway.get());
  }
  const auto report = eval::run_experiment(cfg);
  out << eval::to_json(report).dump(2) << '\n';
  for (const auto& f : report.files) err << "sentistab: wrote " << f.string() << '\n';
  if (!report.errors.empty()) {
    err << "sentistab: " << report.errors.size() << " sample error(s); see metrics.json\n";
    return kPartial;
  }
  return kOk;
}

int cmd_calibrate(const std::string& path, const std::string& metric, std::istream& in, std::ostream& out) {
  std::istringstream stream(read_input(path, in));
  const auto rows = eval::read_scores_csv(stream);
  const auto m = core::parse_metric(metric);
  std::vector<detector::ScoredSample> scored;
  for (const auto& r : rows) {
    if (r.label != corpus::Label::Unknown) scored.push_back({r.id, r.label, eval::score_of(r, m)});
  }
  out << detector::to_json(detector::calibrate(scored)).dump(2) << '\n';
  return kOk;
}

int cmd_features(const PipelineOptions& po, const std::string& input, const std::string& output, std::istream& in,
                 std::ostream& out, std::ostream& err) {
  auto pipeline = load_pipeline(po);
  std::istringstream stream(read_input(input, in));
  const auto corpus = corpus::parse_jsonl(stream);
  if (corpus.samples.empty()) throw Error(ErrorCode::EmptyInput, "no samples in input");
  const auto batch =
      detector::detect_batch(corpus.samples, pipeline.detector, effective_jobs(po.jobs, pipeline.gateway.get()));
  write_output(output, out, [&](std::ostream& o) { eval::write_embeddings_csv(o, corpus.samples, batch.results); });
  report_sample_errors(batch.errors, err);
  return batch.errors.empty() ? kOk : kPartial;
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sentiment-stability detector for machine-generated text", "sentistab"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  DetectOptions detect;
  auto* c_detect = app.add_subcommand("detect", "Score one text (file or stdin) or a JSONL batch");
  add_pipeline_flags(c_detect, detect.pipeline);
  c_detect->add_option("input", detect.input, "Input file; stdin when omitted or '-'");
  c_detect->add_flag("--jsonl", detect.jsonl, "Treat input as a JSONL corpus and print one result per line");
  c_detect->add_option("--id", detect.id, "Sample id for single-text input")->capture_default_str();

  EvaluateOptions evaluate;
  auto* c_eval = app.add_subcommand("evaluate", "Run an experiment config and write report files");
  c_eval->add_option("config", evaluate.config, "Experiment config (JSON)")->required();
  c_eval->add_option("--output", evaluate.output, "Override the report directory");
  c_eval->add_flag("--replay", evaluate.replay, "Serve LLM calls from the cache only");
  c_eval->add_option("--jobs", evaluate.jobs, "Worker threads")->check(CLI::NonNegativeNumber);

  std::string cal_input, cal_metric = "sdc";
  auto* c_cal = app.add_subcommand("calibrate", "Choose the F1-optimal threshold from a scores CSV");
  c_cal->add_option("scores", cal_input, "Scores CSV; stdin when omitted or '-'");
  c_cal->add_option("--metric", cal_metric, "Score column: sdc, sdp or signed")
      ->check(CLI::IsMember({"sdc", "sdp", "signed"}))
      ->capture_default_str();

  PipelineOptions feat;
  std::string feat_input, feat_output;
  auto* c_feat = app.add_subcommand("features", "Export sentiment feature embeddings for a JSONL corpus");
  add_pipeline_flags(c_feat, feat);
  c_feat->add_option("input", feat_input, "JSONL corpus; stdin when omitted or '-'");
  c_feat->add_option("--output", feat_output, "CSV destination; stdout when omitted");

  std::string pert_input;
  double pert_rate = 0.1;
  std::uint64_t pert_seed = 0;
  auto* c_pert = app.add_subcommand("perturb", "Apply seeded lexical perturbation to a text");
  c_pert->add_option("input", pert_input, "Input file; stdin when omitted or '-'");
  c_pert->add_option("--rate", pert_rate, "Fraction of words edited")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  c_pert->add_option("--seed", pert_seed, "Seed")->capture_default_str();

  std::string mix_original, mix_paraphrase;
  double mix_ratio = 0.5;
  std::uint64_t mix_seed = 0;
  auto* c_mix = app.add_subcommand("paraphrase-mix", "Replace a seeded fraction of sentences with their paraphrases");
  c_mix->add_option("original", mix_original, "Original text file")->required();
  c_mix->add_option("paraphrase", mix_paraphrase, "Paraphrased text file")->required();
  c_mix->add_option("--ratio", mix_ratio, "Fraction of sentences replaced")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  c_mix->add_option("--seed", mix_seed, "Seed")->capture_default_str();

  std::size_t synth_n = 50;
  std::uint64_t synth_seed = 0;
  std::string synth_output, synth_lexicon;
  auto* c_synth = app.add_subcommand("synth", "Generate the synthetic labeled corpus as JSONL");
  c_synth->add_option("--n", synth_n, "Samples per class")->check(CLI::PositiveNumber)->capture_default_str();
  c_synth->add_option("--seed", synth_seed, "Seed")->capture_default_str();
  c_synth->add_option("--lexicon", synth_lexicon, "Lexicon TSV; the bundled one when omitted");
  c_synth->add_option("--output", synth_output, "JSONL destination; stdout when omitted");

  std::string cache_action, cache_dir, cache_config;
  auto* c_cache = app.add_subcommand("cache", "Inspect or clear the LLM response cache");
  c_cache->add_option("action", cache_action, "inspect or clear")
      ->required()
      ->check(CLI::IsMember({"inspect", "clear"}));
  c_cache->add_option("--cache-dir", cache_dir, "Cache directory");
  c_cache->add_option("--config", cache_config, "Detector config whose gateway.cache_dir is used");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "sentistab: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  }

  try {
    if (c_detect->parsed()) return cmd_detect(detect, in, out, err);
    if (c_eval->parsed()) return cmd_evaluate(evaluate, out, err);
    if (c_cal->parsed()) return cmd_calibrate(cal_input, cal_metric, in, out);
    if (c_feat->parsed()) return cmd_features(feat, feat_input, feat_output, in, out, err);
    if (c_pert->parsed()) {
      out << robustness::lexical_perturb(read_input(pert_input, in), pert_rate, pert_seed);
      return kOk;
    }
    if (c_mix->parsed()) {
      out << robustness::paraphrase_mix(read_input(mix_original, in), read_input(mix_paraphrase, in), mix_ratio,
                                        mix_seed);
      return kOk;
    }
    if (c_synth->parsed()) {
      const auto lex = load_lexicon_or_default(synth_lexicon);
      const auto corpus = corpus::generate_synthetic(synth_n, *lex, synth_seed);
      write_output(synth_output, out, [&](std::ostream& o) { corpus::write_jsonl(o, corpus); });
      return kOk;
    }
    if (c_cache->parsed()) {
      fs::path dir = cache_dir;
      if (dir.empty() && !cache_config.empty()) {
        const auto cfg = read_json_file(cache_config);
        const auto base = fs::absolute(cache_config).parent_path();
        std::string configured = ".sentistab-cache";
        if (cfg.contains("gateway") && cfg.at("gateway").contains("cache_dir")) {
          configured = cfg.at("gateway").at("cache_dir").get<std::string>();
        }
        dir = fs::path(configured).is_absolute() ? fs::path(configured) : base / configured;
      }
      if (dir.empty()) dir = ".sentistab-cache";
      if (cache_action == "clear") {
        out << json{{"cache_dir", dir.string()}, {"removed", gateway::cache_clear(dir)}}.dump() << '\n';
      } else {
        const auto s = gateway::cache_summary(dir);
        out << json{{"cache_dir", dir.string()}, {"entries", s.entries}, {"bytes", s.bytes}}.dump() << '\n';
      }
      return kOk;
    }
  } catch (const Error& e) {
    err << "sentistab: " << e.what() << '\n';
    return status_for(e);
  } catch (const json::exception& e) {
    err << "sentistab: ConfigError: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "sentistab: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}

}  // namespace sentistab::cli
