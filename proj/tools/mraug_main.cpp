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

#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "mraug/config.hpp"
#include "mraug/error.hpp"
#include "mraug/pipeline.hpp"

namespace {

struct FlagOverrides {
  std::string config_path;
  // CLI values land here first; only explicitly passed flags are copied over
  // the config-file values afterwards.
  mraug::PipelineConfig flags;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Builds MR-to-Text training data from an open-domain utterance "
               "corpus given a handful of in-domain examples"};
  app.require_subcommand(1);

  FlagOverrides over;
  mraug::PipelineConfig& flags = over.flags;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", over.config_path,
                    "Config file (key = value with [sections])");
    cmd->add_option("--seed", flags.seed, "Global random seed");
    cmd->add_option("--out-dir", flags.out_dir, "Output directory");
    cmd->add_flag("--verbose", flags.verbose, "Chatty progress output");
  };
  auto add_corpus = [&](CLI::App* cmd) {
    cmd->add_option("--pairs", flags.in_pairs, "In-domain MR-to-Text pairs file");
    cmd->add_option("--pool", flags.pool, "Open-domain utterance pool, one per line");
    cmd->add_option("--save-index", flags.save_index, "Write the pool index here");
    cmd->add_option("--load-index", flags.load_index, "Read a saved pool index instead");
  };
  auto add_filter_flags = [&](CLI::App* cmd) {
    cmd->add_option("--sigma-plus", flags.filter.sigma_plus, "Positive self-label threshold");
    cmd->add_option("--sigma-minus", flags.filter.sigma_minus, "Negative self-label threshold");
    cmd->add_option("--sigma", flags.filter.sigma, "Final acceptance threshold");
    cmd->add_option("--lambda1", flags.filter.lambda1, "Initial negative set multiplier");
    cmd->add_option("--lambda2", flags.filter.lambda2, "Negative sub-sampling multiplier");
    cmd->add_option("--delta", flags.filter.delta, "Convergence increment");
    cmd->add_option("--max-iters", flags.filter.max_iters, "Maximum training iterations");
    cmd->add_option("--scorer-cmd", flags.scorer_cmd, "External scorer command");
  };

  CLI::App* extract = app.add_subcommand("extract-keywords", "Extract in-domain keywords");
  add_common(extract);
  add_corpus(extract);
  extract->add_option("--max-keywords", flags.max_keywords, "Keyword count cap");
  extract->add_option("--min-score", flags.min_score, "Minimum keyword score");

  CLI::App* retrieve_cmd = app.add_subcommand("retrieve", "Retrieve keyword-matching utterances");
  add_common(retrieve_cmd);
  add_corpus(retrieve_cmd);

  CLI::App* filter_cmd = app.add_subcommand("filter", "Self-train a relevance filter");
  add_common(filter_cmd);
  add_corpus(filter_cmd);
  add_filter_flags(filter_cmd);

  CLI::App* annotate_cmd = app.add_subcommand("annotate", "Synthesize MR annotations");
  add_common(annotate_cmd);
  annotate_cmd->add_option("--pairs", flags.in_pairs, "In-domain MR-to-Text pairs file");
  annotate_cmd->add_option("--test", flags.test_pairs, "Test pairs for intrinsic metrics");
  annotate_cmd->add_option("--intent-cmd", flags.intent_cmd, "External intent command");

  CLI::App* augment_cmd = app.add_subcommand("augment", "Run the full augmentation pipeline");
  add_common(augment_cmd);
  add_corpus(augment_cmd);
  add_filter_flags(augment_cmd);
  augment_cmd->add_option("--test", flags.test_pairs, "Test pairs for intrinsic metrics");
  augment_cmd->add_option("--intent-cmd", flags.intent_cmd, "External intent command");
  augment_cmd->add_option("--max-keywords", flags.max_keywords, "Keyword count cap");
  augment_cmd->add_option("--min-score", flags.min_score, "Minimum keyword score");

  CLI::App* split_cmd = app.add_subcommand("split", "Build a few-shot train/test split");
  add_common(split_cmd);
  split_cmd->add_option("--pairs", flags.in_pairs, "Corpus pairs file");
  split_cmd->add_option("--groups", flags.split_groups, "Training groups to sample");

  CLI::App* stats_cmd = app.add_subcommand("stats", "Corpus statistics for a split");
  add_common(stats_cmd);
  stats_cmd->add_option("--train", flags.train_pairs, "Training pairs file");
  stats_cmd->add_option("--test", flags.test_pairs, "Test pairs file");

  CLI::App* eval_cmd = app.add_subcommand("evaluate", "Score generations and augmented data");
  add_common(eval_cmd);
  eval_cmd->add_option("--hyp", flags.hyp_pairs, "Hypothesis pairs file");
  eval_cmd->add_option("--ref", flags.ref_pairs, "Reference pairs file");
  eval_cmd->add_option("--aug", flags.aug_pairs, "Augmented pairs file");
  eval_cmd->add_option("--test", flags.test_pairs, "Test pairs file");
  eval_cmd->add_option("--metrics", flags.metric_select, "Comma list of metrics to emit");

  CLI11_PARSE(app, argc, argv);

  CLI::App* active = app.get_subcommands().front();
  const std::string stage = active->get_name();

  try {
    mraug::PipelineConfig cfg;
    if (!over.config_path.empty()) cfg = mraug::load_config_file(over.config_path);

    // Explicitly passed flags win over config-file values.
    auto percolate = [&](const char* flag, auto member) {
      const CLI::Option* opt = active->get_option_no_throw(flag);
      if (opt != nullptr && opt->count() > 0) cfg.*member = flags.*member;
    };
    using P = mraug::PipelineConfig;
    percolate("--seed", &P::seed);
    percolate("--out-dir", &P::out_dir);
    percolate("--verbose", &P::verbose);
    percolate("--pairs", &P::in_pairs);
    percolate("--pool", &P::pool);
    percolate("--save-index", &P::save_index);
    percolate("--load-index", &P::load_index);
    percolate("--max-keywords", &P::max_keywords);
    percolate("--min-score", &P::min_score);
    percolate("--scorer-cmd", &P::scorer_cmd);
    percolate("--intent-cmd", &P::intent_cmd);
    percolate("--test", &P::test_pairs);
    percolate("--train", &P::train_pairs);
    percolate("--hyp", &P::hyp_pairs);
    percolate("--ref", &P::ref_pairs);
    percolate("--aug", &P::aug_pairs);
    percolate("--groups", &P::split_groups);
    percolate("--metrics", &P::metric_select);
    auto percolate_filter = [&](const char* flag, auto member) {
      const CLI::Option* opt = active->get_option_no_throw(flag);
      if (opt != nullptr && opt->count() > 0) cfg.filter.*member = flags.filter.*member;
    };
    using F = mraug::FilterConfig;
    percolate_filter("--sigma-plus", &F::sigma_plus);
    percolate_filter("--sigma-minus", &F::sigma_minus);
    percolate_filter("--sigma", &F::sigma);
    percolate_filter("--lambda1", &F::lambda1);
    percolate_filter("--lambda2", &F::lambda2);
    percolate_filter("--delta", &F::delta);
    percolate_filter("--max-iters", &F::max_iters);

    if (stage == "extract-keywords") mraug::cmd_extract_keywords(cfg);
    else if (stage == "retrieve") mraug::cmd_retrieve(cfg);
    else if (stage == "filter") mraug::cmd_filter(cfg);
    else if (stage == "annotate") mraug::cmd_annotate(cfg);
    else if (stage == "augment") mraug::cmd_augment(cfg);
    else if (stage == "split") mraug::cmd_split(cfg);
    else if (stage == "stats") mraug::cmd_stats(cfg);
    else if (stage == "evaluate") mraug::cmd_evaluate(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error in stage '" << stage << "': " << e.what() << '\n';
    return 1;
  }
  return 0;
}
