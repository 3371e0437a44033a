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

#include "mraug/filter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "mraug/error.hpp"
#include "mraug/rng.hpp"
#include "mraug/text.hpp"

namespace mraug {

void FilterConfig::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(sigma_plus) || !in_unit(sigma_minus) || !in_unit(sigma)) {
    throw ConfigError("filter thresholds must lie in [0, 1]");
  }
  if (!(sigma_minus <= sigma && sigma <= sigma_plus)) {
    throw ConfigError("filter thresholds must satisfy sigma_minus <= sigma <= sigma_plus");
  }
  if (lambda1 <= 0.0 || lambda2 <= 0.0) {
    throw ConfigError("lambda1 and lambda2 must be positive");
  }
  if (max_iters == 0) {
    throw ConfigError("max_iters must be positive");
  }
}

std::vector<double> FilterModel::predict_batch(
    std::span<const std::string> utterances) const {
  std::vector<double> scores;
  scores.reserve(utterances.size());
  for (const std::string& u : utterances) scores.push_back(predict(u));
  return scores;
}

HashedLogisticModel::HashedLogisticModel(std::uint64_t seed)
    : HashedLogisticModel(seed, Options{}) {}

HashedLogisticModel::HashedLogisticModel(std::uint64_t seed, Options options)
    : options_(options),
      seed_(seed),
      mask_((1u << options.hash_bits) - 1),
      weights_(std::size_t{1} << options.hash_bits, 0.0) {}

std::vector<std::uint32_t> HashedLogisticModel::features(
    std::string_view utterance) const {
  const TokenSequence seq = tokenize(utterance);
  std::vector<std::uint32_t> feats;
  feats.reserve(seq.size() * 2);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    feats.push_back(static_cast<std::uint32_t>(fnv1a64(seq.tokens[i])) & mask_);
    if (i + 1 < seq.size()) {
      const std::string bigram = seq.tokens[i] + ' ' + seq.tokens[i + 1];
      feats.push_back(static_cast<std::uint32_t>(fnv1a64(bigram)) & mask_);
    }
  }
  return feats;
}

void HashedLogisticModel::train(std::span<const std::string> positives,
                                std::span<const std::string> negatives) {
  if (positives.empty() || negatives.empty()) {
    throw EmptyClassInput("classifier training requires both classes to be non-empty");
  }

  struct Example {
    std::vector<std::uint32_t> feats;
    double label;
  };
  std::vector<Example> examples;
  examples.reserve(positives.size() + negatives.size());
  for (const std::string& u : positives) examples.push_back({features(u), 1.0});
  for (const std::string& u : negatives) examples.push_back({features(u), 0.0});

  std::fill(weights_.begin(), weights_.end(), 0.0);
  bias_ = 0.0;

  Rng rng(seed_);
  std::vector<std::size_t> order(examples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 0; epoch < options_.epochs; ++epoch) {
    rng.shuffle(order);
    const double lr = options_.learning_rate / (1.0 + 0.1 * epoch);
    for (const std::size_t idx : order) {
      const Example& ex = examples[idx];
      double z = bias_;
      for (const std::uint32_t f : ex.feats) z += weights_[f];
      const double p = 1.0 / (1.0 + std::exp(-z));
      const double g = lr * (ex.label - p);
      bias_ += g;
      for (const std::uint32_t f : ex.feats) weights_[f] += g;
    }
  }
  trained_ = true;
}

double HashedLogisticModel::predict(std::string_view utterance) const {
  if (!trained_) throw Error("predict called before train");
  double z = bias_;
  for (const std::uint32_t f : features(utterance)) z += weights_[f];
  return 1.0 / (1.0 + std::exp(-z));
}

std::unique_ptr<FilterModel> train_builtin_classifier(
    std::span<const std::string> positives, std::span<const std::string> negatives,
    std::uint64_t seed) {
  auto model = std::make_unique<HashedLogisticModel>(seed);
  model->train(positives, negatives);
  return model;
}

FilterModelFactory builtin_filter_factory() {
  return [](std::uint64_t seed) -> std::unique_ptr<FilterModel> {
    return std::make_unique<HashedLogisticModel>(seed);
  };
}

namespace {

void write_lines(const std::filesystem::path& path,
                 std::span<const std::string> lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (const std::string& line : lines) out << line << '\n';
}

}  // namespace

ExternalScorerModel::ExternalScorerModel(std::string command,
                                         std::filesystem::path workdir)
    : command_(std::move(command)), workdir_(std::move(workdir)) {}

void ExternalScorerModel::train(std::span<const std::string> positives,
                                std::span<const std::string> negatives) {
  if (positives.empty() || negatives.empty()) {
    throw EmptyClassInput("external scorer requires both classes to be non-empty");
  }
  positives_.assign(positives.begin(), positives.end());
  negatives_.assign(negatives.begin(), negatives.end());
  trained_ = true;
}

std::vector<double> ExternalScorerModel::predict_batch(
    std::span<const std::string> utterances) const {
  if (!trained_) throw Error("predict called before train");
  std::filesystem::create_directories(workdir_);
  write_lines(workdir_ / "train_pos.txt", positives_);
  write_lines(workdir_ / "train_neg.txt", negatives_);
  write_lines(workdir_ / "predict.txt", utterances);
  std::filesystem::remove(workdir_ / "scores.txt");

  const std::string invocation = command_ + " " + workdir_.string();
  const int rc = std::system(invocation.c_str());
  if (rc != 0) {
    throw Error("external scorer command failed (exit " + std::to_string(rc) +
                "): " + invocation);
  }

  std::ifstream in(workdir_ / "scores.txt");
  if (!in) throw IoError("external scorer produced no scores.txt in " + workdir_.string());
  std::vector<double> scores;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    double v = 0.0;
    try {
      v = std::stod(line);
    } catch (const std::exception&) {
      throw Error("external scorer emitted a non-numeric score: " + line);
    }
    if (v < 0.0 || v > 1.0) {
      throw Error("external scorer emitted a score outside [0, 1]: " + line);
    }
    scores.push_back(v);
  }
  if (scores.size() != utterances.size()) {
    throw Error("external scorer returned " + std::to_string(scores.size()) +
                " scores for " + std::to_string(utterances.size()) + " inputs");
  }
  return scores;
}

double ExternalScorerModel::predict(std::string_view utterance) const {
  const std::vector<std::string> one{std::string(utterance)};
  return predict_batch(one).front();
}

FilterModelFactory external_filter_factory(std::string command,
                                           std::filesystem::path workdir) {
  return [command = std::move(command),
          workdir = std::move(workdir)](std::uint64_t) -> std::unique_ptr<FilterModel> {
    return std::make_unique<ExternalScorerModel>(command, workdir);
  };
}

void FilterReport::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write filter report: " + path.string());
  out << "initial_positives\t" << initial_positives << '\n';
  out << "initial_negatives\t" << initial_negatives << '\n';
  out << "iterations_run\t" << iterations_run() << '\n';
  out << "converged\t" << (converged ? "true" : "false") << '\n';
  out << "filtered_size\t" << filtered_size << '\n';
  for (std::size_t i = 0; i < iterations.size(); ++i) {
    out << "iter" << (i + 1) << "_positives\t" << iterations[i].positives << '\n';
    out << "iter" << (i + 1) << "_negatives\t" << iterations[i].negatives << '\n';
  }
}

std::vector<std::string> sample_initial_negatives(const UtterancePool& pool,
                                                  const CandidateSet& candidates,
                                                  std::size_t u_plus_size,
                                                  double lambda1,
                                                  std::uint64_t seed) {
  const std::size_t wanted =
      static_cast<std::size_t>(lambda1 * static_cast<double>(u_plus_size));
  std::vector<std::uint32_t> complement;
  complement.reserve(pool.size() - candidates.size());
  for (std::uint32_t id = 0; id < pool.size(); ++id) {
    if (!candidates.contains(id)) complement.push_back(id);
  }
  if (complement.size() < wanted) {
    throw InsufficientPool("pool minus candidates holds " +
                           std::to_string(complement.size()) +
                           " utterances but " + std::to_string(wanted) +
                           " negatives are required; the pool is too small for this domain");
  }
  Rng rng(seed);
  const std::vector<std::size_t> picks = rng.sample_indices(complement.size(), wanted);
  std::vector<std::string> negatives;
  negatives.reserve(wanted);
  for (const std::size_t p : picks) negatives.push_back(pool.text(complement[p]));
  return negatives;
}

SelfTrainResult run_self_training(std::span<const std::string> in_domain,
                                  const CandidateSet& candidates,
                                  const UtterancePool& pool,
                                  const FilterModelFactory& factory,
                                  const FilterConfig& cfg) {
  cfg.validate();
  if (in_domain.empty()) throw EmptyTraining();

  SelfTrainResult result;
  result.report.initial_positives = in_domain.size();

  if (candidates.empty()) {
    result.report.iterations.push_back({in_domain.size(), 0});
    result.report.converged = true;
    return result;
  }

  std::vector<std::string> candidate_texts;
  candidate_texts.reserve(candidates.size());
  for (const std::uint32_t id : candidates.ids) candidate_texts.push_back(pool.text(id));

  std::vector<std::string> negatives = sample_initial_negatives(
      pool, candidates, in_domain.size(), cfg.lambda1,
      stage_seed(cfg.rng_seed, "initial-negatives"));
  result.report.initial_negatives = negatives.size();

  std::vector<std::string> positives(in_domain.begin(), in_domain.end());
  std::unique_ptr<FilterModel> model = factory(stage_seed(cfg.rng_seed, "model", 0));
  model->train(positives, negatives);

  std::size_t prev_positive_count = in_domain.size();  // |E+_0| = |U+|
  std::vector<double> scores;

  for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
    scores = model->predict_batch(candidate_texts);

    std::vector<std::size_t> positive_idx;
    std::vector<std::size_t> negative_idx;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] >= cfg.sigma_plus) {
        positive_idx.push_back(i);
      } else if (scores[i] <= cfg.sigma_minus) {
        negative_idx.push_back(i);
      }
    }

    // E+ always contains the in-domain utterances.
    positives.assign(in_domain.begin(), in_domain.end());
    for (const std::size_t i : positive_idx) positives.push_back(candidate_texts[i]);
    const std::size_t positive_count = positives.size();

    if (!negative_idx.empty()) {
      negatives.clear();
      for (const std::size_t i : negative_idx) negatives.push_back(candidate_texts[i]);
    }
    // else: nothing scored at or below sigma_minus; keep the previous
    // negatives, training needs both classes

    // |E-| <= lambda2 * |E+| after sub-sampling, also when negatives were
    // carried over from the previous iteration
    const std::size_t negative_cap = static_cast<std::size_t>(
        cfg.lambda2 * static_cast<double>(positive_count));
    if (negatives.size() > negative_cap) {
      Rng rng(stage_seed(cfg.rng_seed, "subsample", iter));
      std::vector<std::size_t> picks = rng.sample_indices(negatives.size(), negative_cap);
      std::sort(picks.begin(), picks.end());
      std::vector<std::string> kept;
      kept.reserve(picks.size());
      for (const std::size_t p : picks) kept.push_back(negatives[p]);
      negatives = std::move(kept);
    }

    result.report.iterations.push_back({positive_count, negatives.size()});

    const std::int64_t growth = static_cast<std::int64_t>(positive_count) -
                                static_cast<std::int64_t>(prev_positive_count);
    if (growth <= static_cast<std::int64_t>(cfg.delta)) {
      result.report.converged = true;
      break;
    }
    prev_positive_count = positive_count;

    model = factory(stage_seed(cfg.rng_seed, "model", iter));
    model->train(positives, negatives);
    if (iter == cfg.max_iters) {
      // the freshly trained model is the final one; score once more below
      scores = model->predict_batch(candidate_texts);
    }
  }

  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i] >= cfg.sigma) {
      result.ids.push_back(candidates.ids[i]);
      result.utterances.push_back(candidate_texts[i]);
    }
  }
  result.report.filtered_size = result.ids.size();
  return result;
}

}  // namespace mraug
