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

#include "mraug/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_set>

#include "mraug/error.hpp"

namespace mraug {

namespace {

constexpr double kBleuEpsilon = 1e-9;

bool contains_token_subsequence(const std::vector<std::string>& haystack,
                                const std::vector<std::string>& needle) {
  if (needle.empty()) return true;
  if (haystack.size() < needle.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool hit = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      if (haystack[i + j] != needle[j]) {
        hit = false;
        break;
      }
    }
    if (hit) return true;
  }
  return false;
}

std::unordered_map<std::string, std::uint64_t> ngram_counts(
    const std::vector<std::string>& tokens, int n) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for_each_ngram(tokens, n, n, [&](std::string_view gram) {
    const auto it = counts.find(std::string(gram));
    if (it == counts.end()) {
      counts.emplace(std::string(gram), 1);
    } else {
      it->second += 1;
    }
  });
  return counts;
}

std::unordered_set<std::string> ngram_type_set(std::span<const std::string> utts,
                                               int n) {
  std::unordered_set<std::string> types;
  for (const std::string& utt : utts) {
    const TokenSequence seq = tokenize(utt);
    for_each_ngram(seq.tokens, n, n,
                   [&](std::string_view gram) { types.emplace(gram); });
  }
  return types;
}

}  // namespace

ErrBreakdown slot_error_rate(const MeaningRepresentation& mr,
                             const std::string& realization,
                             const SlotLexicon& domain_lexicon) {
  ErrBreakdown breakdown;
  const TokenSequence realized = tokenize(realization);

  // Values present in the MR, normalized, for the redundancy check.
  std::unordered_set<std::string> mr_values;
  for (const DialogAct& act : mr.acts) {
    for (const SlotValuePair& slot : act.slots) {
      ++breakdown.total_slots;
      mr_values.insert(SlotLexicon::normalize_value(slot.value));
      const TokenSequence value_tokens = tokenize(slot.value);
      if (!contains_token_subsequence(realized.tokens, value_tokens.tokens)) {
        ++breakdown.missing;
      }
    }
  }
  if (breakdown.total_slots == 0) throw NoSlots();

  // A realized lexicon value that matches no value of the MR is redundant,
  // regardless of which key the lexicon would assign it.
  for (const SlotLexicon::Match& match : domain_lexicon.find_matches(realized)) {
    if (!mr_values.contains(match.normalized_value)) ++breakdown.redundant;
  }

  breakdown.err = static_cast<double>(breakdown.missing + breakdown.redundant) /
                  static_cast<double>(breakdown.total_slots);
  return breakdown;
}

double corpus_bleu(std::span<const std::string> hypotheses,
                   std::span<const std::vector<std::string>> references) {
  if (hypotheses.size() != references.size()) {
    throw LengthMismatch("hypothesis and reference lists differ in length");
  }
  if (hypotheses.empty()) {
    throw LengthMismatch("cannot score an empty hypothesis list");
  }

  std::uint64_t hyp_len_total = 0;
  std::uint64_t ref_len_total = 0;
  std::array<std::uint64_t, 4> correct{};
  std::array<std::uint64_t, 4> total{};

  for (std::size_t s = 0; s < hypotheses.size(); ++s) {
    const TokenSequence hyp = tokenize(hypotheses[s]);
    std::vector<std::vector<std::string>> ref_tokens;
    ref_tokens.reserve(references[s].size());
    for (const std::string& ref : references[s]) {
      ref_tokens.push_back(tokenize(ref).tokens);
    }
    if (ref_tokens.empty()) {
      throw LengthMismatch("segment " + std::to_string(s) + " has no references");
    }

    hyp_len_total += hyp.size();
    // Closest reference length; ties prefer the shorter one.
    std::size_t best_ref_len = ref_tokens.front().size();
    for (const auto& ref : ref_tokens) {
      const auto diff = [&](std::size_t len) {
        return len > hyp.size() ? len - hyp.size() : hyp.size() - len;
      };
      if (diff(ref.size()) < diff(best_ref_len) ||
          (diff(ref.size()) == diff(best_ref_len) && ref.size() < best_ref_len)) {
        best_ref_len = ref.size();
      }
    }
    ref_len_total += best_ref_len;

    for (int n = 1; n <= 4; ++n) {
      const auto hyp_counts = ngram_counts(hyp.tokens, n);
      if (hyp_counts.empty()) continue;
      std::unordered_map<std::string, std::uint64_t> max_ref_counts;
      for (const auto& ref : ref_tokens) {
        for (const auto& [gram, count] : ngram_counts(ref, n)) {
          auto& best = max_ref_counts[gram];
          best = std::max(best, count);
        }
      }
      for (const auto& [gram, count] : hyp_counts) {
        total[static_cast<std::size_t>(n - 1)] += count;
        const auto it = max_ref_counts.find(gram);
        if (it != max_ref_counts.end()) {
          correct[static_cast<std::size_t>(n - 1)] += std::min(count, it->second);
        }
      }
    }
  }

  if (hyp_len_total == 0) return 0.0;

  double log_precision_sum = 0.0;
  for (int n = 0; n < 4; ++n) {
    if (total[static_cast<std::size_t>(n)] == 0) continue;  // no n-grams of this order: neutral
    double p = static_cast<double>(correct[static_cast<std::size_t>(n)]) /
               static_cast<double>(total[static_cast<std::size_t>(n)]);
    if (p == 0.0) p = kBleuEpsilon;
    log_precision_sum += std::log(p);
  }
  const double geo_mean = std::exp(log_precision_sum / 4.0);

  const double bp =
      hyp_len_total >= ref_len_total
          ? 1.0
          : std::exp(1.0 - static_cast<double>(ref_len_total) /
                               static_cast<double>(hyp_len_total));
  return bp * geo_mean;
}

double mr_coverage(std::span<const UtterancePair> augmented,
                   std::span<const UtterancePair> test) {
  if (test.empty()) throw EmptyTest();
  std::unordered_set<std::string> augmented_delex;
  for (const UtterancePair& pair : augmented) {
    augmented_delex.insert(delexicalize(pair.mr).to_string());
  }
  std::unordered_set<std::string> test_delex;
  for (const UtterancePair& pair : test) {
    test_delex.insert(delexicalize(pair.mr).to_string());
  }
  std::size_t covered = 0;
  for (const std::string& delex : test_delex) {
    if (augmented_delex.contains(delex)) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(test_delex.size());
}

double slot_coverage(std::span<const UtterancePair> augmented,
                     std::span<const UtterancePair> test) {
  if (test.empty()) throw EmptyTest();
  auto keys_of = [](std::span<const UtterancePair> pairs) {
    std::unordered_set<std::string> keys;
    for (const UtterancePair& pair : pairs) {
      for (const DialogAct& act : pair.mr.acts) {
        for (const SlotValuePair& slot : act.slots) keys.insert(slot.key);
      }
    }
    return keys;
  };
  const std::unordered_set<std::string> augmented_keys = keys_of(augmented);
  const std::unordered_set<std::string> test_keys = keys_of(test);
  if (test_keys.empty()) return 0.0;
  std::size_t covered = 0;
  for (const std::string& key : test_keys) {
    if (augmented_keys.contains(key)) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(test_keys.size());
}

double ngram_novelty(std::span<const std::string> augmented_utts,
                     std::span<const std::string> test_utts, int n) {
  if (test_utts.empty()) throw EmptyTest();
  if (n < 1 || n > 4) throw Error("novelty order must lie in [1, 4]");
  const std::unordered_set<std::string> test_types = ngram_type_set(test_utts, n);
  if (test_types.empty()) return 0.0;
  const std::unordered_set<std::string> augmented_types =
      ngram_type_set(augmented_utts, n);
  std::size_t present = 0;
  for (const std::string& gram : test_types) {
    if (augmented_types.contains(gram)) ++present;
  }
  return 1.0 - static_cast<double>(present) / static_cast<double>(test_types.size());
}

double average_novelty(std::span<const std::string> augmented_utts,
                       std::span<const std::string> test_utts) {
  double sum = 0.0;
  for (int n = 1; n <= 4; ++n) sum += ngram_novelty(augmented_utts, test_utts, n);
  return sum / 4.0;
}

std::string NgramLm::map_token(const std::string& token) const {
  if (token == kEos || token == kBos || vocab_.contains(token)) return token;
  return kUnk;
}

std::string NgramLm::context_key(std::span<const std::string> context) const {
  const std::size_t len = static_cast<std::size_t>(options_.order - 1);
  std::string key;
  const std::size_t start = context.size() > len ? context.size() - len : 0;
  for (std::size_t i = start; i < context.size(); ++i) {
    if (!key.empty()) key.push_back('\x1f');
    key += map_token(context[i]);
  }
  return key;
}

NgramLm NgramLm::fit(std::span<const std::string> train_utts, LmOptions options) {
  if (train_utts.empty()) throw EmptyTraining();
  if (options.order < 1) throw ConfigError("language model order must be at least 1");
  if (options.k <= 0.0) throw ConfigError("smoothing constant k must be positive");

  NgramLm lm;
  lm.options_ = options;

  std::vector<std::vector<std::string>> tokenized;
  tokenized.reserve(train_utts.size());
  for (const std::string& utt : train_utts) {
    tokenized.push_back(tokenize(utt).tokens);
    for (const std::string& token : tokenized.back()) lm.vocab_.insert(token);
  }
  lm.support_ = lm.vocab_;
  lm.support_.insert(kEos);
  lm.support_.insert(kUnk);

  const std::size_t pad = static_cast<std::size_t>(options.order - 1);
  for (const std::vector<std::string>& tokens : tokenized) {
    std::vector<std::string> padded(pad, kBos);
    padded.insert(padded.end(), tokens.begin(), tokens.end());
    padded.push_back(kEos);
    for (std::size_t i = pad; i < padded.size(); ++i) {
      std::string key;
      for (std::size_t j = i - pad; j < i; ++j) {
        if (!key.empty()) key.push_back('\x1f');
        key += padded[j];
      }
      ContextCounts& counts = lm.contexts_[key];
      counts.continuations[padded[i]] += 1;
      counts.total += 1;
    }
  }
  return lm;
}

double NgramLm::prob(std::span<const std::string> context,
                     const std::string& token) const {
  const std::string key = context_key(context);
  const std::string mapped = map_token(token);
  const double v = static_cast<double>(support_.size());
  const auto it = contexts_.find(key);
  if (it == contexts_.end()) {
    return 1.0 / v;  // unseen context: add-k reduces to uniform
  }
  const auto cont = it->second.continuations.find(mapped);
  const double count =
      cont == it->second.continuations.end() ? 0.0 : static_cast<double>(cont->second);
  return (count + options_.k) /
         (static_cast<double>(it->second.total) + options_.k * v);
}

double NgramLm::perplexity(std::span<const std::string> eval_utts) const {
  const std::size_t pad = static_cast<std::size_t>(options_.order - 1);
  double log_sum = 0.0;
  std::uint64_t token_count = 0;
  for (const std::string& utt : eval_utts) {
    const TokenSequence seq = tokenize(utt);
    std::vector<std::string> padded(pad, kBos);
    for (const std::string& token : seq.tokens) padded.push_back(map_token(token));
    padded.push_back(kEos);
    for (std::size_t i = pad; i < padded.size(); ++i) {
      const std::span<const std::string> context(padded.data() + (i - pad), pad);
      log_sum += std::log(prob(context, padded[i]));
      ++token_count;
    }
  }
  if (token_count == 0) return 1.0;
  return std::exp(-log_sum / static_cast<double>(token_count));
}

double lm_perplexity(std::span<const std::string> train_utts,
                     std::span<const std::string> eval_utts, LmOptions options) {
  return NgramLm::fit(train_utts, options).perplexity(eval_utts);
}

}  // namespace mraug
