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

#ifndef MRAUG_NLU_HPP_
#define MRAUG_NLU_HPP_

#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mraug/mr.hpp"
#include "mraug/text.hpp"

namespace mraug {

// Inventory of slot values observed in training pairs, mapping each
// normalized value to the slot keys it filled. Lexical stand-in for a
// learned token tagger: it cannot generalize to unseen values, which is an
// accepted fidelity gap of the desk-scale annotator.
class SlotLexicon {
 public:
  static SlotLexicon build(std::span<const UtterancePair> training_pairs);

  // Keys observed for a normalized value; nullptr when unknown.
  const std::set<std::string>* keys_for(std::string_view normalized_value) const;

  // Number of distinct values observed for a key.
  std::size_t inventory_size(std::string_view key) const;

  bool empty() const { return value_to_keys_.empty(); }
  std::size_t value_count() const { return value_to_keys_.size(); }
  int max_value_tokens() const { return max_value_tokens_; }

  struct Match {
    std::size_t token_begin = 0;
    std::size_t token_end = 0;  // exclusive
    std::string normalized_value;
  };

  // Greedy longest-match left-to-right over token spans; matches never
  // overlap.
  std::vector<Match> find_matches(const TokenSequence& utterance) const;

  // Lowercased, tokenizer-consistent form used for all value comparisons.
  static std::string normalize_value(std::string_view value);

 private:
  std::map<std::string, std::set<std::string>> value_to_keys_;
  std::map<std::string, std::set<std::string>> key_to_values_;
  int max_value_tokens_ = 0;
};

struct SlotTag {
  std::string key;
  std::string value;         // original text from the utterance span
  std::size_t token_begin = 0;
  std::size_t token_end = 0;  // exclusive

  bool operator==(const SlotTag&) const = default;
};

// Tags lexicon values in the utterance. Values mapping to several keys
// resolve to the key with the larger value inventory, ties lexicographic.
std::vector<SlotTag> tag_slots(const TokenSequence& utterance,
                               const SlotLexicon& lexicon);

struct NluPrediction {
  std::string intent;
  std::vector<SlotTag> slots;
  double confidence = 0.0;
};

// Intent classifier interface; output is always one of the trained intents.
class IntentModel {
 public:
  virtual ~IntentModel() = default;

  struct Result {
    std::string intent;
    double confidence = 0.0;
  };

  // Throws UntrainedModel when no intents have been trained.
  virtual Result classify(const TokenSequence& utterance,
                          std::span<const SlotTag> tagged_slots) const = 0;

  virtual std::vector<Result> classify_batch(
      std::span<const TokenSequence> utterances,
      std::span<const std::vector<SlotTag>> tags) const;
};

// Nearest-centroid classifier over term-frequency bags of the
// slot-delexicalized utterance. Deterministic; ties break lexicographically
// on the intent name. Confidence is a softmax over negative cosine
// distances to the intent centroids.
class CentroidIntentModel : public IntentModel {
 public:
  static CentroidIntentModel train(std::span<const UtterancePair> training_pairs);

  Result classify(const TokenSequence& utterance,
                  std::span<const SlotTag> tagged_slots) const override;

  std::size_t intent_count() const { return centroids_.size(); }

 private:
  std::map<std::string, std::unordered_map<std::string, double>> centroids_;
  std::map<std::string, double> centroid_norms_;
};

// Intent scorer backed by a user-supplied command, mirroring the filter
// module's file exchange: writes nlu_train.txt (`intent<TAB>utterance` per
// line) and nlu_predict.txt, invokes `command <workdir>`, reads
// nlu_intents.txt (`intent<TAB>confidence` per line, aligned).
class ExternalIntentModel : public IntentModel {
 public:
  ExternalIntentModel(std::string command, std::filesystem::path workdir,
                      std::span<const UtterancePair> training_pairs);

  Result classify(const TokenSequence& utterance,
                  std::span<const SlotTag> tagged_slots) const override;
  std::vector<Result> classify_batch(
      std::span<const TokenSequence> utterances,
      std::span<const std::vector<SlotTag>> tags) const override;

 private:
  std::string command_;
  std::filesystem::path workdir_;
  std::vector<std::pair<std::string, std::string>> training_;  // (intent, utterance)
};

IntentModel::Result classify_intent(const TokenSequence& utterance,
                                    const IntentModel& model);

// One synthetic MR-to-Text pair per filtered utterance: the predicted
// intent plus every tagged slot, in utterance order. Utterances with no
// tagged slots become a single slot-less act.
std::vector<UtterancePair> annotate(std::span<const std::string> filtered,
                                    const SlotLexicon& lexicon,
                                    const IntentModel& model);

struct PrfScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Micro-averaged precision/recall/F1 over the multiset of intent and
// (slot key, value) items per example. Throws LengthMismatch on unaligned
// inputs.
PrfScores evaluate_nlu(std::span<const NluPrediction> predictions,
                       std::span<const MeaningRepresentation> gold);

}  // namespace mraug

#endif  // MRAUG_NLU_HPP_
