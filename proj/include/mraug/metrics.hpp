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

#ifndef MRAUG_METRICS_HPP_
#define MRAUG_METRICS_HPP_

#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mraug/mr.hpp"
#include "mraug/nlu.hpp"
#include "mraug/text.hpp"

namespace mraug {

struct ErrBreakdown {
  std::size_t total_slots = 0;  // M
  std::size_t missing = 0;      // p
  std::size_t redundant = 0;    // q
  double err = 0.0;             // (p + q) / M
};

// Slot error rate of one realization against its MR. A slot is missing when
// its value does not occur in the realization (case-insensitive contiguous
// token match). A lexicon value found in the realization whose value appears
// nowhere in the MR counts as redundant. Throws NoSlots when the MR has no
// slots at all (the rate is undefined; callers skip such pairs).
ErrBreakdown slot_error_rate(const MeaningRepresentation& mr,
                             const std::string& realization,
                             const SlotLexicon& domain_lexicon);

// Corpus-level BLEU-4: clipped modified n-gram precisions, geometric mean
// over orders 1-4, brevity penalty against the closest reference length.
// Orders with no candidate n-grams are neutral; zero precisions are floored
// at 1e-9. Result in [0, 1]. Throws LengthMismatch on unaligned inputs.
double corpus_bleu(std::span<const std::string> hypotheses,
                   std::span<const std::vector<std::string>> references);

// |distinct delex MRs of test found in augmented| / |distinct delex MRs of
// test|. Throws EmptyTest.
double mr_coverage(std::span<const UtterancePair> augmented,
                   std::span<const UtterancePair> test);

// Same ratio over distinct slot keys.
double slot_coverage(std::span<const UtterancePair> augmented,
                     std::span<const UtterancePair> test);

// 1 - (fraction of test n-gram types present in the augmented type set).
// Returns 0 when the test side has no n-grams of this order. Throws
// EmptyTest when the test list is empty.
double ngram_novelty(std::span<const std::string> augmented_utts,
                     std::span<const std::string> test_utts, int n);

// Mean of ngram_novelty over orders 1-4.
double average_novelty(std::span<const std::string> augmented_utts,
                       std::span<const std::string> test_utts);

struct LmOptions {
  int order = 3;
  double k = 0.1;  // add-k smoothing constant, must be positive
};

// Add-k smoothed n-gram language model with sentence-boundary padding and an
// unknown token. For every context the conditional distribution over
// (vocabulary + end marker + unknown) sums to one.
class NgramLm {
 public:
  static NgramLm fit(std::span<const std::string> train_utts, LmOptions options = {});

  // p(token | context tokens), after mapping out-of-vocabulary tokens to the
  // unknown marker. `context` uses the most recent order-1 tokens.
  double prob(std::span<const std::string> context, const std::string& token) const;

  double perplexity(std::span<const std::string> eval_utts) const;

  const std::set<std::string>& support() const { return support_; }
  const LmOptions& options() const { return options_; }

  static constexpr const char* kBos = "<s>";
  static constexpr const char* kEos = "</s>";
  static constexpr const char* kUnk = "<unk>";

 private:
  struct ContextCounts {
    std::unordered_map<std::string, std::uint64_t> continuations;
    std::uint64_t total = 0;
  };

  std::string map_token(const std::string& token) const;
  std::string context_key(std::span<const std::string> context) const;

  LmOptions options_;
  std::set<std::string> vocab_;    // training token types
  std::set<std::string> support_;  // vocab + </s> + <unk>
  std::unordered_map<std::string, ContextCounts> contexts_;
};

// Perplexity of `eval_utts` under an n-gram model fitted on `train_utts`.
// Throws EmptyTraining.
double lm_perplexity(std::span<const std::string> train_utts,
                     std::span<const std::string> eval_utts, LmOptions options = {});

}  // namespace mraug

#endif  // MRAUG_METRICS_HPP_
