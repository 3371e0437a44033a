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

#ifndef MRAUG_FILTER_HPP_
#define MRAUG_FILTER_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mraug/pool.hpp"

namespace mraug {

// Knobs of the self-training loop.
//
//   sigma_plus   score at or above which a candidate joins the positives
//   sigma_minus  score at or below which a candidate joins the negatives
//   sigma        final acceptance threshold for the filtered set
//   lambda1      initial negatives = lambda1 x |in-domain positives|
//   lambda2      per-iteration negatives capped at lambda2 x |positives|
//   delta        stop once the positive-set growth drops to delta or less
//   max_iters    hard cap on training iterations after the initial model
struct FilterConfig {
  double sigma_plus = 0.99;
  double sigma_minus = 0.5;
  double sigma = 0.5;
  double lambda1 = 10.0;
  double lambda2 = 5.0;
  std::size_t delta = 100;
  std::size_t max_iters = 10;
  std::uint64_t rng_seed = 0;

  // Enforces sigma_minus <= sigma <= sigma_plus, thresholds within [0, 1],
  // positive lambdas and max_iters. Throws ConfigError.
  void validate() const;
};

// Binary relevance scorer. Implementations must be deterministic: a fixed
// trained state always yields the same score for the same utterance.
class FilterModel {
 public:
  virtual ~FilterModel() = default;

  // Throws EmptyClassInput when either class is empty.
  virtual void train(std::span<const std::string> positives,
                     std::span<const std::string> negatives) = 0;

  // Relevance score in [0, 1].
  virtual double predict(std::string_view utterance) const = 0;

  virtual std::vector<double> predict_batch(
      std::span<const std::string> utterances) const;
};

// Fresh untrained model per training round; the seed drives any stochastic
// parts of training.
using FilterModelFactory =
    std::function<std::unique_ptr<FilterModel>(std::uint64_t seed)>;

// Logistic regression over hashed bag-of-words plus bag-of-bigrams features
// (2^20 buckets), trained by seeded epochs of stochastic gradient updates.
// Self-contained stand-in for an external neural scorer.
class HashedLogisticModel : public FilterModel {
 public:
  struct Options {
    int epochs = 30;
    double learning_rate = 0.5;
    int hash_bits = 20;
  };

  explicit HashedLogisticModel(std::uint64_t seed);
  HashedLogisticModel(std::uint64_t seed, Options options);

  void train(std::span<const std::string> positives,
             std::span<const std::string> negatives) override;
  double predict(std::string_view utterance) const override;

 private:
  std::vector<std::uint32_t> features(std::string_view utterance) const;

  Options options_;
  std::uint64_t seed_;
  std::uint32_t mask_;
  std::vector<double> weights_;
  double bias_ = 0.0;
  bool trained_ = false;
};

// Trains the built-in classifier on the given sets.
std::unique_ptr<FilterModel> train_builtin_classifier(
    std::span<const std::string> positives, std::span<const std::string> negatives,
    std::uint64_t seed);

FilterModelFactory builtin_filter_factory();

// Scorer backed by a user-supplied command. Each training+prediction round
// writes train_pos.txt, train_neg.txt and predict.txt (one utterance per
// line) into the work directory, invokes `command <workdir>`, and reads
// scores.txt: one decimal in [0, 1] per line, aligned with predict.txt.
class ExternalScorerModel : public FilterModel {
 public:
  ExternalScorerModel(std::string command, std::filesystem::path workdir);

  void train(std::span<const std::string> positives,
             std::span<const std::string> negatives) override;
  double predict(std::string_view utterance) const override;
  std::vector<double> predict_batch(
      std::span<const std::string> utterances) const override;

 private:
  std::string command_;
  std::filesystem::path workdir_;
  std::vector<std::string> positives_;
  std::vector<std::string> negatives_;
  bool trained_ = false;
};

FilterModelFactory external_filter_factory(std::string command,
                                           std::filesystem::path workdir);

struct FilterIteration {
  std::size_t positives = 0;  // |E+| including the in-domain utterances
  std::size_t negatives = 0;  // |E-| after sub-sampling
};

struct FilterReport {
  std::size_t initial_positives = 0;
  std::size_t initial_negatives = 0;
  std::vector<FilterIteration> iterations;
  bool converged = false;
  std::size_t filtered_size = 0;

  std::size_t iterations_run() const { return iterations.size(); }

  void save(const std::filesystem::path& path) const;
};

// floor(lambda1 * u_plus_size) utterances drawn uniformly without
// replacement from the pool minus the candidate set, reproducible from the
// seed. Throws InsufficientPool when the complement is too small.
std::vector<std::string> sample_initial_negatives(const UtterancePool& pool,
                                                  const CandidateSet& candidates,
                                                  std::size_t u_plus_size,
                                                  double lambda1,
                                                  std::uint64_t seed);

struct SelfTrainResult {
  std::vector<std::uint32_t> ids;          // accepted candidate ids, sorted
  std::vector<std::string> utterances;     // their texts, same order
  FilterReport report;
};

// Iterative self-training over the retrieved candidates.
//
// An initial model is trained on the in-domain utterances against randomly
// sampled non-candidate pool utterances. Each iteration scores every
// candidate with the previous model; candidates at or above sigma_plus plus
// all in-domain utterances form the new positive set, candidates at or
// below sigma_minus (sub-sampled to lambda2 x |positives|) form the new
// negative set. The loop stops when the positive set grows by at most delta
// or after max_iters rounds, and the final model admits every candidate
// scoring at least sigma.
//
// Deterministic: fixed inputs, config, and seed give identical output.
SelfTrainResult run_self_training(std::span<const std::string> in_domain,
                                  const CandidateSet& candidates,
                                  const UtterancePool& pool,
                                  const FilterModelFactory& factory,
                                  const FilterConfig& cfg);

}  // namespace mraug

#endif  // MRAUG_FILTER_HPP_
