// Copyright 2026 The mraug Authors
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

#include "mraug/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include "mraug/dataset.hpp"
#include "mraug/error.hpp"
#include "mraug/filter.hpp"
#include "mraug/keywords.hpp"
#include "mraug/metrics.hpp"
#include "mraug/mr.hpp"
#include "mraug/nlu.hpp"
#include "mraug/pool.hpp"
#include "mraug/rng.hpp"

namespace mraug {

namespace {

namespace fs = std::filesystem;

fs::path out_path(const PipelineConfig& cfg, const char* file) {
  return fs::path(cfg.out_dir) / file;
}

std::vector<std::string> utterances_of(std::span<const UtterancePair> pairs) {
  std::vector<std::string> utts;
  utts.reserve(pairs.size());
  for (const UtterancePair& pair : pairs) utts.push_back(pair.utterance);
  return utts;
}

UtterancePool load_pool(const PipelineConfig& cfg) {
  if (!cfg.load_index.empty()) {
    return UtterancePool::load_index(cfg.load_index);
  }
  if (cfg.pool.empty()) throw ConfigError("paths.pool is required");
  UtterancePool pool = UtterancePool::ingest_file(cfg.pool, cfg.pool_options());
  if (cfg.verbose && pool.skipped_invalid_utf8() > 0) {
    std::cerr << "warning: skipped " << pool.skipped_invalid_utf8()
              << " malformed UTF-8 pool lines\n";
  }
  if (!cfg.save_index.empty()) pool.save_index(cfg.save_index);
  return pool;
}

std::vector<UtterancePair> require_pairs(const std::string& path, const char* what) {
  if (path.empty()) throw ConfigError(std::string("missing required path: ") + what);
  return read_pairs_file(path);
}

void write_candidates(const fs::path& path, const CandidateSet& candidates,
                      const UtterancePool& pool) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write candidates file: " + path.string());
  for (std::size_t i = 0; i < candidates.ids.size(); ++i) {
    out << candidates.ids[i] << '\t' << pool.text(candidates.ids[i]) << '\n';
  }
}

CandidateSet read_candidates(const fs::path& path, const UtterancePool& pool) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open candidates file: " + path.string());
  CandidateSet candidates;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": candidate line has no tab separator");
    }
    std::uint32_t id = 0;
    try {
      id = static_cast<std::uint32_t>(std::stoul(line.substr(0, tab)));
    } catch (const std::exception&) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": malformed candidate id");
    }
    if (id >= pool.size()) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": candidate id " + std::to_string(id) +
                    " out of range for this pool");
    }
    if (!candidates.ids.empty() && id <= candidates.ids.back()) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": candidate ids must be strictly increasing");
    }
    candidates.ids.push_back(id);
    candidates.matched_keywords.emplace_back();
  }
  return candidates;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void write_lines(const fs::path& path, std::span<const std::string> lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const std::string& line : lines) out << line << '\n';
}

std::string format_metric(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

bool metric_selected(const PipelineConfig& cfg, std::string_view name) {
  if (cfg.metric_select.empty()) return true;
  std::stringstream ss(cfg.metric_select);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string_view v = item;
    while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
    while (!v.empty() && v.back() == ' ') v.remove_suffix(1);
    if (v == name) return true;
  }
  return false;
}

KeywordSet run_extract(const PipelineConfig& cfg, const UtterancePool& pool) {
  const std::vector<UtterancePair> pairs = require_pairs(cfg.in_pairs, "paths.in_pairs");
  if (pairs.empty()) throw EmptyCorpus();
  std::vector<TokenSequence> in_domain;
  in_domain.reserve(pairs.size());
  for (const UtterancePair& pair : pairs) in_domain.push_back(tokenize(pair.utterance));
  const KeywordSet keywords = extract_keywords(in_domain, pool.utterances(), cfg.n_min,
                                               cfg.n_max, cfg.max_keywords, cfg.min_score);
  keywords.save(out_path(cfg, outputs::kKeywords));
  return keywords;
}

CandidateSet run_retrieve(const PipelineConfig& cfg, const UtterancePool& pool) {
  const KeywordSet keywords = KeywordSet::load(out_path(cfg, outputs::kKeywords));
  const CandidateSet candidates = retrieve(pool, keywords);
  write_candidates(out_path(cfg, outputs::kCandidates), candidates, pool);
  return candidates;
}

SelfTrainResult run_filter(const PipelineConfig& cfg, const UtterancePool& pool,
                           const CandidateSet& candidates) {
  const std::vector<UtterancePair> pairs = require_pairs(cfg.in_pairs, "paths.in_pairs");
  const std::vector<std::string> in_domain = utterances_of(pairs);

  FilterConfig filter_cfg = cfg.filter;
  filter_cfg.rng_seed = stage_seed(cfg.seed, "filter");
  const FilterModelFactory factory =
      cfg.scorer_cmd.empty()
          ? builtin_filter_factory()
          : external_filter_factory(cfg.scorer_cmd,
                                    fs::path(cfg.out_dir) / "scorer_work");

  SelfTrainResult result =
      run_self_training(in_domain, candidates, pool, factory, filter_cfg);
  write_lines(out_path(cfg, outputs::kFiltered), result.utterances);
  result.report.save(out_path(cfg, outputs::kFilterReport));
  return result;
}

std::vector<UtterancePair> run_annotate(const PipelineConfig& cfg) {
  const std::vector<UtterancePair> pairs = require_pairs(cfg.in_pairs, "paths.in_pairs");
  const std::vector<std::string> filtered = read_lines(out_path(cfg, outputs::kFiltered));

  const SlotLexicon lexicon = SlotLexicon::build(pairs);
  std::vector<UtterancePair> augmented;
  if (cfg.intent_cmd.empty()) {
    const CentroidIntentModel model = CentroidIntentModel::train(pairs);
    augmented = annotate(filtered, lexicon, model);
  } else {
    const ExternalIntentModel model(cfg.intent_cmd,
                                    fs::path(cfg.out_dir) / "intent_work", pairs);
    augmented = annotate(filtered, lexicon, model);
  }
  write_pairs_file(out_path(cfg, outputs::kAugmented), augmented);
  return augmented;
}

void run_intrinsic_metrics(const PipelineConfig& cfg,
                           std::span<const UtterancePair> augmented) {
  if (cfg.test_pairs.empty()) return;
  const std::vector<UtterancePair> test = read_pairs_file(cfg.test_pairs);
  const std::vector<std::string> augmented_utts = utterances_of(augmented);
  const std::vector<std::string> test_utts = utterances_of(test);

  std::ofstream out(out_path(cfg, outputs::kMetrics), std::ios::binary);
  if (!out) throw IoError("cannot write metrics file");
  if (metric_selected(cfg, "mr_cov")) {
    out << "mr_cov\t" << format_metric(mr_coverage(augmented, test)) << '\n';
  }
  if (metric_selected(cfg, "sl_cov")) {
    out << "sl_cov\t" << format_metric(slot_coverage(augmented, test)) << '\n';
  }
  if (metric_selected(cfg, "novelty")) {
    for (int n = 1; n <= 4; ++n) {
      out << "novelty_" << n << '\t'
          << format_metric(ngram_novelty(augmented_utts, test_utts, n)) << '\n';
    }
    out << "novelty_avg\t" << format_metric(average_novelty(augmented_utts, test_utts))
        << '\n';
  }
  if (metric_selected(cfg, "ppl")) {
    out << "ppl\t" << format_metric(lm_perplexity(test_utts, augmented_utts, cfg.lm))
        << '\n';
  }
}

}  // namespace

void cmd_extract_keywords(const PipelineConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  const UtterancePool pool = load_pool(cfg);
  const KeywordSet keywords = run_extract(cfg, pool);
  std::cout << "extracted " << keywords.size() << " keywords\n";
}

void cmd_retrieve(const PipelineConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  const UtterancePool pool = load_pool(cfg);
  const CandidateSet candidates = run_retrieve(cfg, pool);
  std::cout << "retrieved " << candidates.size() << " candidate utterances\n";
}

void cmd_filter(const PipelineConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  const UtterancePool pool = load_pool(cfg);
  const CandidateSet candidates = read_candidates(out_path(cfg, outputs::kCandidates), pool);
  const SelfTrainResult result = run_filter(cfg, pool, candidates);
  std::cout << "kept " << result.utterances.size() << " of " << candidates.size()
            << " candidates after " << result.report.iterations_run()
            << " iterations\n";
}

void cmd_annotate(const PipelineConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  const std::vector<UtterancePair> augmented = run_annotate(cfg);
  run_intrinsic_metrics(cfg, augmented);
  std::cout << "annotated " << augmented.size() << " utterances\n";
}

void cmd_augment(const PipelineConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  auto stage = [](const char* name, auto&& fn) {
    try {
      fn();
    } catch (const Error&) {
      std::cerr << "stage failed: " << name << '\n';
      throw;
    }
  };
  const UtterancePool pool = load_pool(cfg);
  CandidateSet candidates;
  stage("extract-keywords", [&] { run_extract(cfg, pool); });
  stage("retrieve", [&] { candidates = run_retrieve(cfg, pool); });
  stage("filter", [&] { run_filter(cfg, pool, candidates); });
  std::vector<UtterancePair> augmented;
  stage("annotate", [&] { augmented = run_annotate(cfg); });
  stage("metrics", [&] { run_intrinsic_metrics(cfg, augmented); });
  std::cout << "augmented pairs: " << augmented.size() << '\n';
}

void cmd_split(const PipelineConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  const std::vector<UtterancePair> corpus = require_pairs(cfg.in_pairs, "paths.in_pairs");
  const FewShotSplit split =
      make_split(corpus, cfg.split_groups, stage_seed(cfg.seed, "split"));
  write_pairs_file(out_path(cfg, outputs::kTrain), split.train);
  write_pairs_file(out_path(cfg, outputs::kTest), split.test);
  std::cout << "train: " << split.train.size() << " pairs, test: " << split.test.size()
            << " pairs\n";
}

void cmd_stats(const PipelineConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  FewShotSplit split;
  split.train = require_pairs(cfg.train_pairs, "paths.train_pairs");
  split.test = require_pairs(cfg.test_pairs, "paths.test_pairs");
  write_stats(out_path(cfg, outputs::kStats), compute_stats(split));
  std::cout << "wrote " << out_path(cfg, outputs::kStats).string() << '\n';
}

void cmd_evaluate(const PipelineConfig& cfg) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  std::ofstream out(out_path(cfg, outputs::kReport), std::ios::binary);
  if (!out) throw IoError("cannot write report file");

  if (!cfg.hyp_pairs.empty()) {
    const std::vector<UtterancePair> hyp = read_pairs_file(cfg.hyp_pairs);
    const std::vector<UtterancePair> ref = require_pairs(cfg.ref_pairs, "paths.ref_pairs");
    if (hyp.size() != ref.size()) {
      throw LengthMismatch("hypothesis and reference files differ in line count");
    }
    if (metric_selected(cfg, "bleu")) {
      std::vector<std::string> hyp_utts = utterances_of(hyp);
      std::vector<std::vector<std::string>> refs;
      refs.reserve(ref.size());
      for (const UtterancePair& pair : ref) refs.push_back({pair.utterance});
      out << "bleu\t" << format_metric(corpus_bleu(hyp_utts, refs)) << '\n';
    }
    if (metric_selected(cfg, "err")) {
      const SlotLexicon lexicon = SlotLexicon::build(ref);
      double err_sum = 0.0;
      std::uint64_t missing = 0;
      std::uint64_t redundant = 0;
      std::size_t scored = 0;
      for (const UtterancePair& pair : hyp) {
        try {
          const ErrBreakdown breakdown =
              slot_error_rate(pair.mr, pair.utterance, lexicon);
          err_sum += breakdown.err;
          missing += breakdown.missing;
          redundant += breakdown.redundant;
          ++scored;
        } catch (const NoSlots&) {
          // slot-less MRs have no defined error rate
        }
      }
      out << "err\t" << format_metric(scored > 0 ? err_sum / scored : 0.0) << '\n';
      out << "err_missing\t" << missing << '\n';
      out << "err_redundant\t" << redundant << '\n';
    }
  }

  if (!cfg.aug_pairs.empty() && !cfg.test_pairs.empty()) {
    const std::vector<UtterancePair> augmented = read_pairs_file(cfg.aug_pairs);
    const std::vector<UtterancePair> test = read_pairs_file(cfg.test_pairs);
    const std::vector<std::string> augmented_utts = utterances_of(augmented);
    const std::vector<std::string> test_utts = utterances_of(test);
    if (metric_selected(cfg, "mr_cov")) {
      out << "mr_cov\t" << format_metric(mr_coverage(augmented, test)) << '\n';
    }
    if (metric_selected(cfg, "sl_cov")) {
      out << "sl_cov\t" << format_metric(slot_coverage(augmented, test)) << '\n';
    }
    if (metric_selected(cfg, "novelty")) {
      for (int n = 1; n <= 4; ++n) {
        out << "novelty_" << n << '\t'
            << format_metric(ngram_novelty(augmented_utts, test_utts, n)) << '\n';
      }
      out << "novelty_avg\t"
          << format_metric(average_novelty(augmented_utts, test_utts)) << '\n';
    }
    if (metric_selected(cfg, "ppl")) {
      out << "ppl\t" << format_metric(lm_perplexity(test_utts, augmented_utts, cfg.lm))
          << '\n';
    }
  }
  std::cout << "wrote " << out_path(cfg, outputs::kReport).string() << '\n';
}

}  // namespace mraug
