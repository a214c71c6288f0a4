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

#include "sentistab/config.hpp"

#include <fstream>
#include <initializer_list>
#include <string>

#include "sentistab/error.hpp"
#include "sentistab/rewrite/prompt_set.hpp"
#include "sentistab/rewrite/rewriter.hpp"
#include "sentistab/sentiment/analyzer.hpp"

namespace sentistab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::ConfigError, key + ": " + what);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) bad(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) bad(where.empty() ? key : where + "." + key, "unknown key");
  }
}

template <typename T>
T get_or(const json& obj, const std::string& where, const char* key, T fallback) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    bad(where + key, "wrong type");
  }
}

double get_number(const json& obj, const std::string& where, const char* key, double fallback) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  if (!obj.at(key).is_number()) bad(where + key, "expected a number");
  return obj.at(key).get<double>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  auto j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::ConfigError, path.string() + " is not valid JSON");
  return j;
}

std::shared_ptr<const sentiment::ValenceLexicon> load_lexicon_or_default(const fs::path& path) {
  return std::make_shared<const sentiment::ValenceLexicon>(
      sentiment::load_lexicon(path.empty() ? sentiment::default_lexicon_path() : path));
}

Pipeline build_pipeline(const json& cfg, const fs::path& base_dir, const PipelineOverrides& overrides) {
  only_keys(cfg, "", {"metric", "threshold", "analyzer", "rewriter", "prompts", "sdp", "sdp_on_rewrite",
                      "llm", "gateway"});
  Pipeline p;
  auto& det = p.detector;

  try {
    det.metric = core::parse_metric(get_or<std::string>(cfg, "", "metric", "sdc"));
  } catch (const Error&) {
    bad("metric", "expected sdc, sdp or signed");
  }
  det.threshold = get_number(cfg, "", "threshold", 0.5);
  det.record.with_sdp = get_or<bool>(cfg, "", "sdp", false);
  det.record.sdp_on_rewrite = get_or<bool>(cfg, "", "sdp_on_rewrite", true);
  if (overrides.metric) det.metric = *overrides.metric;
  if (overrides.threshold) det.threshold = *overrides.threshold;

  const json analyzer = cfg.value("analyzer", json::object());
  const json rewriter = cfg.value("rewriter", json::object());
  only_keys(analyzer, "analyzer", {"backend", "lexicon", "alpha", "pos_threshold", "neg_threshold"});
  only_keys(rewriter, "rewriter", {"backend"});
  const auto analyzer_backend = get_or<std::string>(analyzer, "analyzer.", "backend", "lexicon");
  const auto rewriter_backend = get_or<std::string>(rewriter, "rewriter.", "backend", "mock_neutralizing");
  if (analyzer_backend != "lexicon" && analyzer_backend != "llm") bad("analyzer.backend", "expected lexicon or llm");
  if (rewriter_backend != "llm" && rewriter_backend != "mock_identity" &&
      rewriter_backend != "mock_neutralizing" && rewriter_backend != "mock_lossy_pair") {
    bad("rewriter.backend", "expected llm, mock_identity, mock_neutralizing or mock_lossy_pair");
  }

  // Lexicon: needed by the lexicon analyzer and the lexicon-driven mocks.
  if (analyzer_backend == "lexicon" || rewriter_backend == "mock_neutralizing" ||
      rewriter_backend == "mock_lossy_pair") {
    const auto lex_path = get_or<std::string>(analyzer, "analyzer.", "lexicon", "");
    const auto path = lex_path.empty() ? sentiment::default_lexicon_path() : resolve(base_dir, lex_path);
    const double pos = get_number(analyzer, "analyzer.", "pos_threshold", 0.1);
    const double neg = get_number(analyzer, "analyzer.", "neg_threshold", -0.1);
    const double alpha = get_number(analyzer, "analyzer.", "alpha", 1.0);
    try {
      p.lexicon = std::make_shared<const sentiment::ValenceLexicon>(sentiment::load_lexicon(path, pos, neg, alpha));
    } catch (const Error& e) {
      bad("analyzer.lexicon", e.detail());
    }
  }

  // Prompt set. Built-in prompts keep all nine available so a prompt-count
  // override can reach past the configured count.
  std::shared_ptr<rewrite::PromptSet> prompts;
  std::size_t active = 0;
  const json prompts_cfg = cfg.value("prompts", json::object());
  if (prompts_cfg.is_string()) {
    prompts = std::make_shared<rewrite::PromptSet>(rewrite::load_prompt_set(resolve(base_dir, prompts_cfg.get<std::string>())));
    active = prompts->ler().size();
  } else {
    only_keys(prompts_cfg, "prompts", {"builtin", "ler", "pairs", "sentiment"});
    if (prompts_cfg.contains("ler")) {
      prompts = std::make_shared<rewrite::PromptSet>(rewrite::prompt_set_from_json(prompts_cfg));
      active = prompts->ler().size();
    } else {
      active = get_or<std::size_t>(prompts_cfg, "prompts.", "builtin", 3);
      if (active == 0 || active > rewrite::kMaxBuiltinPrompts) bad("prompts.builtin", "expected 1..9");
      prompts = std::make_shared<rewrite::PromptSet>(rewrite::PromptSet::builtin(rewrite::kMaxBuiltinPrompts));
    }
  }
  if (overrides.prompt_count) active = *overrides.prompt_count;
  prompts = std::make_shared<rewrite::PromptSet>(prompts->first(active));
  det.prompts = prompts;

  // Gateway, only when an LLM backend is in play.
  if (analyzer_backend == "llm" || rewriter_backend == "llm") {
    const json llm = cfg.value("llm", json::object());
    only_keys(llm, "llm", {"endpoint", "model", "seed"});
    gateway::LlmTarget target;
    target.endpoint = get_or<std::string>(llm, "llm.", "endpoint", "");
    target.model = get_or<std::string>(llm, "llm.", "model", "");
    if (target.endpoint.empty()) bad("llm.endpoint", "required for llm backends");
    if (target.model.empty()) bad("llm.model", "required for llm backends");
    if (llm.contains("seed") && !llm.at("seed").is_null()) target.seed = get_or<std::int64_t>(llm, "llm.", "seed", 0);

    const json gw = cfg.value("gateway", json::object());
    only_keys(gw, "gateway", {"mode", "cache_dir", "max_in_flight", "max_retries", "timeout_seconds",
                              "backoff_base_seconds", "backoff_factor", "backoff_jitter", "api_key_env"});
    gateway::GatewayConfig gcfg;
    try {
      gcfg.mode = gateway::parse_mode(get_or<std::string>(gw, "gateway.", "mode", "live"));
    } catch (const Error&) {
      bad("gateway.mode", "expected live, replay or record");
    }
    if (overrides.mode) gcfg.mode = *overrides.mode;
    gcfg.cache_dir = resolve(base_dir, get_or<std::string>(gw, "gateway.", "cache_dir", ".sentistab-cache"));
    gcfg.max_in_flight = get_or<int>(gw, "gateway.", "max_in_flight", 4);
    gcfg.max_retries = get_or<int>(gw, "gateway.", "max_retries", 3);
    gcfg.timeout_seconds = get_number(gw, "gateway.", "timeout_seconds", 60.0);
    gcfg.backoff_base_seconds = get_number(gw, "gateway.", "backoff_base_seconds", 1.0);
    gcfg.backoff_factor = get_number(gw, "gateway.", "backoff_factor", 2.0);
    gcfg.backoff_jitter = get_number(gw, "gateway.", "backoff_jitter", 0.2);
    gcfg.api_key_env = get_or<std::string>(gw, "gateway.", "api_key_env", "SENTI_API_KEY");
    try {
      gateway::validate(gcfg);
    } catch (const Error& e) {
      bad("gateway", e.detail());
    }
    p.gateway = std::make_shared<gateway::Gateway>(gcfg);

    if (analyzer_backend == "llm") {
      det.analyzer = std::make_shared<sentiment::LlmAnalyzer>(*p.gateway, target, prompts->sentiment());
    }
    if (rewriter_backend == "llm") det.rewriter = std::make_shared<rewrite::LlmRewriter>(*p.gateway, target);
  }

  if (analyzer_backend == "lexicon") det.analyzer = std::make_shared<sentiment::LexiconAnalyzer>(p.lexicon);
  if (rewriter_backend == "mock_identity") det.rewriter = std::make_shared<rewrite::IdentityRewriter>();
  if (rewriter_backend == "mock_neutralizing") det.rewriter = std::make_shared<rewrite::NeutralizingRewriter>(p.lexicon);
  if (rewriter_backend == "mock_lossy_pair") det.rewriter = std::make_shared<rewrite::LossyPairRewriter>(p.lexicon);
  return p;
}

}  // namespace sentistab
