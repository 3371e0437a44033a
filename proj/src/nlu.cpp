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

#include "mraug/nlu.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "mraug/error.hpp"

namespace mraug {

std::string SlotLexicon::normalize_value(std::string_view value) {
  const TokenSequence seq = tokenize(value);
  std::string out;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += seq.tokens[i];
  }
  return out;
}

SlotLexicon SlotLexicon::build(std::span<const UtterancePair> training_pairs) {
  SlotLexicon lexicon;
  for (const UtterancePair& pair : training_pairs) {
    for (const DialogAct& act : pair.mr.acts) {
      for (const SlotValuePair& slot : act.slots) {
        std::string normalized = normalize_value(slot.value);
        if (normalized.empty()) continue;
        const int tokens =
            static_cast<int>(std::count(normalized.begin(), normalized.end(), ' ')) + 1;
        lexicon.max_value_tokens_ = std::max(lexicon.max_value_tokens_, tokens);
        lexicon.value_to_keys_[normalized].insert(slot.key);
        lexicon.key_to_values_[slot.key].insert(std::move(normalized));
      }
    }
  }
  return lexicon;
}

const std::set<std::string>* SlotLexicon::keys_for(
    std::string_view normalized_value) const {
  const auto it = value_to_keys_.find(std::string(normalized_value));
  return it == value_to_keys_.end() ? nullptr : &it->second;
}

std::size_t SlotLexicon::inventory_size(std::string_view key) const {
  const auto it = key_to_values_.find(std::string(key));
  return it == key_to_values_.end() ? 0 : it->second.size();
}

std::vector<SlotLexicon::Match> SlotLexicon::find_matches(
    const TokenSequence& utterance) const {
  std::vector<Match> matches;
  const std::size_t n = utterance.size();
  std::string joined;
  std::size_t i = 0;
  while (i < n) {
    bool matched = false;
    const std::size_t longest =
        std::min<std::size_t>(static_cast<std::size_t>(max_value_tokens_), n - i);
    for (std::size_t len = longest; len >= 1; --len) {
      joined.clear();
      for (std::size_t j = 0; j < len; ++j) {
        if (j > 0) joined.push_back(' ');
        joined += utterance.tokens[i + j];
      }
      if (value_to_keys_.contains(joined)) {
        matches.push_back({i, i + len, joined});
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
  return matches;
}

std::vector<SlotTag> tag_slots(const TokenSequence& utterance,
                               const SlotLexicon& lexicon) {
  std::vector<SlotTag> tags;
  for (const SlotLexicon::Match& match : lexicon.find_matches(utterance)) {
    const std::set<std::string>* keys = lexicon.keys_for(match.normalized_value);
    if (keys == nullptr || keys->empty()) continue;
    const std::string* best = nullptr;
    std::size_t best_inventory = 0;
    for (const std::string& key : *keys) {
      const std::size_t inv = lexicon.inventory_size(key);
      if (best == nullptr || inv > best_inventory) {
        best = &key;
        best_inventory = inv;
      }
      // std::set iterates keys in lexicographic order, so on an inventory
      // tie the first (smallest) key wins
    }
    SlotTag tag;
    tag.key = *best;
    tag.value = utterance.source_span(match.token_begin, match.token_end);
    tag.token_begin = match.token_begin;
    tag.token_end = match.token_end;
    tags.push_back(std::move(tag));
  }
  return tags;
}

std::vector<IntentModel::Result> IntentModel::classify_batch(
    std::span<const TokenSequence> utterances,
    std::span<const std::vector<SlotTag>> tags) const {
  if (utterances.size() != tags.size()) {
    throw LengthMismatch("utterance and tag lists differ in length");
  }
  std::vector<Result> results;
  results.reserve(utterances.size());
  for (std::size_t i = 0; i < utterances.size(); ++i) {
    results.push_back(classify(utterances[i], tags[i]));
  }
  return results;
}

namespace {

// Term-frequency bag of the utterance with tagged slot spans collapsed to
// `[key]` placeholder tokens, matching how training utterances are
// delexicalized through their MR values.
std::unordered_map<std::string, double> delexed_bag(
    const TokenSequence& utterance, std::span<const SlotTag> tags) {
  std::unordered_map<std::string, double> bag;
  std::size_t i = 0;
  while (i < utterance.size()) {
    const SlotTag* covering = nullptr;
    for (const SlotTag& tag : tags) {
      if (tag.token_begin == i) {
        covering = &tag;
        break;
      }
    }
    if (covering != nullptr && covering->token_end > i) {
      bag["[" + covering->key + "]"] += 1.0;
      i = covering->token_end;
    } else {
      bag[utterance.tokens[i]] += 1.0;
      ++i;
    }
  }
  return bag;
}

double dot(const std::unordered_map<std::string, double>& a,
           const std::unordered_map<std::string, double>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  double sum = 0.0;
  for (const auto& [term, weight] : small) {
    const auto it = large.find(term);
    if (it != large.end()) sum += weight * it->second;
  }
  return sum;
}

double norm(const std::unordered_map<std::string, double>& a) {
  double sum = 0.0;
  for (const auto& [term, weight] : a) sum += weight * weight;
  return std::sqrt(sum);
}

}  // namespace

CentroidIntentModel CentroidIntentModel::train(
    std::span<const UtterancePair> training_pairs) {
  CentroidIntentModel model;
  std::map<std::string, std::size_t> counts;
  for (const UtterancePair& pair : training_pairs) {
    if (pair.mr.acts.empty()) continue;
    // compound MRs contribute their first act's intent
    const std::string& intent = pair.mr.acts.front().intent;
    const TokenSequence delexed = tokenize(delexicalize_utterance(pair));
    auto& centroid = model.centroids_[intent];
    for (const std::string& token : delexed.tokens) centroid[token] += 1.0;
    counts[intent] += 1;
  }
  for (auto& [intent, centroid] : model.centroids_) {
    const double n = static_cast<double>(counts[intent]);
    for (auto& [term, weight] : centroid) weight /= n;
    model.centroid_norms_[intent] = norm(centroid);
  }
  return model;
}

IntentModel::Result CentroidIntentModel::classify(
    const TokenSequence& utterance, std::span<const SlotTag> tagged_slots) const {
  if (centroids_.empty()) throw UntrainedModel();

  const std::unordered_map<std::string, double> bag = delexed_bag(utterance, tagged_slots);
  const double bag_norm = norm(bag);

  std::vector<std::pair<std::string, double>> distances;  // 1 - cosine
  distances.reserve(centroids_.size());
  const std::string* best_intent = nullptr;
  double best_similarity = -1.0;
  for (const auto& [intent, centroid] : centroids_) {
    const double denom = bag_norm * centroid_norms_.at(intent);
    const double similarity = denom > 0.0 ? dot(bag, centroid) / denom : 0.0;
    distances.emplace_back(intent, 1.0 - similarity);
    // map iteration is lexicographic, so strict '>' keeps the smallest
    // intent name on ties
    if (similarity > best_similarity) {
      best_similarity = similarity;
      best_intent = &centroids_.find(intent)->first;
    }
  }

  double z = 0.0;
  double best_term = 0.0;
  for (const auto& [intent, distance] : distances) {
    const double e = std::exp(-distance);
    z += e;
    if (intent == *best_intent) best_term = e;
  }

  Result result;
  result.intent = *best_intent;
  result.confidence = z > 0.0 ? best_term / z : 1.0;
  return result;
}

ExternalIntentModel::ExternalIntentModel(std::string command,
                                         std::filesystem::path workdir,
                                         std::span<const UtterancePair> training_pairs)
    : command_(std::move(command)), workdir_(std::move(workdir)) {
  for (const UtterancePair& pair : training_pairs) {
    if (pair.mr.acts.empty()) continue;
    training_.emplace_back(pair.mr.acts.front().intent, pair.utterance);
  }
}

std::vector<IntentModel::Result> ExternalIntentModel::classify_batch(
    std::span<const TokenSequence> utterances,
    std::span<const std::vector<SlotTag>> tags) const {
  (void)tags;
  if (training_.empty()) throw UntrainedModel();
  std::filesystem::create_directories(workdir_);
  {
    std::ofstream train(workdir_ / "nlu_train.txt", std::ios::binary);
    if (!train) throw IoError("cannot write nlu_train.txt in " + workdir_.string());
    for (const auto& [intent, utterance] : training_) {
      train << intent << '\t' << utterance << '\n';
    }
    std::ofstream predict(workdir_ / "nlu_predict.txt", std::ios::binary);
    if (!predict) throw IoError("cannot write nlu_predict.txt in " + workdir_.string());
    for (const TokenSequence& u : utterances) predict << u.source << '\n';
  }
  std::filesystem::remove(workdir_ / "nlu_intents.txt");

  const std::string invocation = command_ + " " + workdir_.string();
  const int rc = std::system(invocation.c_str());
  if (rc != 0) {
    throw Error("external intent command failed (exit " + std::to_string(rc) +
                "): " + invocation);
  }

  std::ifstream in(workdir_ / "nlu_intents.txt");
  if (!in) throw IoError("external intent command produced no nlu_intents.txt");
  std::vector<Result> results;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    Result r;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      r.intent = line;
      r.confidence = 1.0;
    } else {
      r.intent = line.substr(0, tab);
      try {
        r.confidence = std::stod(line.substr(tab + 1));
      } catch (const std::exception&) {
        throw Error("external intent command emitted a malformed confidence: " + line);
      }
    }
    results.push_back(std::move(r));
  }
  if (results.size() != utterances.size()) {
    throw Error("external intent command returned " + std::to_string(results.size()) +
                " labels for " + std::to_string(utterances.size()) + " inputs");
  }
  return results;
}

IntentModel::Result ExternalIntentModel::classify(
    const TokenSequence& utterance, std::span<const SlotTag> tagged_slots) const {
  const std::vector<TokenSequence> one{utterance};
  const std::vector<std::vector<SlotTag>> tags{
      std::vector<SlotTag>(tagged_slots.begin(), tagged_slots.end())};
  return classify_batch(one, tags).front();
}

IntentModel::Result classify_intent(const TokenSequence& utterance,
                                    const IntentModel& model) {
  const std::vector<SlotTag> no_tags;
  return model.classify(utterance, no_tags);
}

std::vector<UtterancePair> annotate(std::span<const std::string> filtered,
                                    const SlotLexicon& lexicon,
                                    const IntentModel& model) {
  std::vector<TokenSequence> sequences;
  sequences.reserve(filtered.size());
  std::vector<std::vector<SlotTag>> tags;
  tags.reserve(filtered.size());
  for (const std::string& utterance : filtered) {
    sequences.push_back(tokenize(utterance));
    tags.push_back(tag_slots(sequences.back(), lexicon));
  }

  const std::vector<IntentModel::Result> intents = model.classify_batch(sequences, tags);

  std::vector<UtterancePair> pairs;
  pairs.reserve(filtered.size());
  for (std::size_t i = 0; i < filtered.size(); ++i) {
    DialogAct act;
    act.intent = intents[i].intent;
    for (const SlotTag& tag : tags[i]) {
      act.slots.push_back({tag.key, tag.value});
    }
    UtterancePair pair;
    pair.mr.acts.push_back(std::move(act));
    pair.utterance = filtered[i];
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

namespace {

// Multiset of comparable items in one example: the intent of every act plus
// every (key, normalized value) slot.
std::map<std::string, std::size_t> gold_items(const MeaningRepresentation& mr) {
  std::map<std::string, std::size_t> items;
  for (const DialogAct& act : mr.acts) {
    items["i\x1f" + act.intent] += 1;
    for (const SlotValuePair& slot : act.slots) {
      items["s\x1f" + slot.key + "\x1f" + SlotLexicon::normalize_value(slot.value)] += 1;
    }
  }
  return items;
}

std::map<std::string, std::size_t> predicted_items(const NluPrediction& prediction) {
  std::map<std::string, std::size_t> items;
  if (!prediction.intent.empty()) items["i\x1f" + prediction.intent] += 1;
  for (const SlotTag& tag : prediction.slots) {
    items["s\x1f" + tag.key + "\x1f" + SlotLexicon::normalize_value(tag.value)] += 1;
  }
  return items;
}

}  // namespace

PrfScores evaluate_nlu(std::span<const NluPrediction> predictions,
                       std::span<const MeaningRepresentation> gold) {
  if (predictions.size() != gold.size()) {
    throw LengthMismatch("prediction and gold lists differ in length");
  }
  std::size_t matched = 0;
  std::size_t predicted_total = 0;
  std::size_t gold_total = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const auto pred = predicted_items(predictions[i]);
    const auto ref = gold_items(gold[i]);
    for (const auto& [item, count] : pred) predicted_total += count;
    for (const auto& [item, count] : ref) gold_total += count;
    for (const auto& [item, count] : pred) {
      const auto it = ref.find(item);
      if (it != ref.end()) matched += std::min(count, it->second);
    }
  }
  PrfScores scores;
  scores.precision =
      predicted_total > 0 ? static_cast<double>(matched) / predicted_total : 0.0;
  scores.recall = gold_total > 0 ? static_cast<double>(matched) / gold_total : 0.0;
  scores.f1 = (scores.precision + scores.recall) > 0.0
                  ? 2.0 * scores.precision * scores.recall /
                        (scores.precision + scores.recall)
                  : 0.0;
  return scores;
}

}  // namespace mraug
