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

#include "mraug/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <unordered_set>

#include "mraug/error.hpp"
#include "mraug/metrics.hpp"
#include "mraug/rng.hpp"

namespace mraug {

FewShotSplit make_split(std::span<const UtterancePair> corpus, std::size_t k_groups,
                        std::uint64_t seed) {
  if (corpus.empty()) throw EmptyCorpus();

  FewShotSplit split;
  std::vector<std::string> group_order;  // first-occurrence order
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::string key = delexicalize(corpus[i].mr).to_string();
    auto [it, inserted] = split.groups.try_emplace(std::move(key));
    if (inserted) group_order.push_back(it->first);
    it->second.push_back(i);
  }

  Rng rng(seed);
  const std::vector<std::size_t> picked_groups =
      rng.sample_indices(group_order.size(), std::min(k_groups, group_order.size()));

  std::vector<std::size_t> train_ids;
  for (const std::size_t g : picked_groups) {
    const std::vector<std::size_t>& members = split.groups.at(group_order[g]);
    train_ids.push_back(members[rng.below(members.size())]);
  }
  std::sort(train_ids.begin(), train_ids.end());

  std::unordered_set<std::size_t> in_train(train_ids.begin(), train_ids.end());
  for (const std::size_t id : train_ids) split.train.push_back(corpus[id]);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (!in_train.contains(i)) split.test.push_back(corpus[i]);
  }
  return split;
}

CorpusStats compute_stats(const FewShotSplit& split) {
  CorpusStats stats;
  stats.n_train = split.train.size();
  stats.n_test = split.test.size();

  std::set<std::string> intents;
  std::set<std::string> slots;
  std::set<std::string> delex_train;
  std::set<std::string> delex_test;
  auto scan = [&](std::span<const UtterancePair> pairs, std::set<std::string>& delex) {
    for (const UtterancePair& pair : pairs) {
      delex.insert(delexicalize(pair.mr).to_string());
      for (const DialogAct& act : pair.mr.acts) {
        intents.insert(act.intent);
        for (const SlotValuePair& slot : act.slots) slots.insert(slot.key);
      }
    }
  };
  scan(split.train, delex_train);
  scan(split.test, delex_test);
  stats.n_intents = intents.size();
  stats.n_slots = slots.size();
  stats.n_delex_mrs_train = delex_train.size();
  stats.n_delex_mrs_test = delex_test.size();

  std::vector<std::string> train_utts;
  train_utts.reserve(split.train.size());
  for (const UtterancePair& pair : split.train) train_utts.push_back(pair.utterance);
  std::vector<std::string> test_utts;
  test_utts.reserve(split.test.size());
  for (const UtterancePair& pair : split.test) test_utts.push_back(pair.utterance);

  for (int n = 1; n <= 4; ++n) {
    stats.novelty[static_cast<std::size_t>(n - 1)] =
        test_utts.empty() ? 0.0 : ngram_novelty(train_utts, test_utts, n);
  }
  return stats;
}

void write_stats(const std::filesystem::path& path, const CorpusStats& stats) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write stats file: " + path.string());
  char buf[32];
  out << "n_intents\t" << stats.n_intents << '\n';
  out << "n_slots\t" << stats.n_slots << '\n';
  out << "n_delex_mrs_train\t" << stats.n_delex_mrs_train << '\n';
  out << "n_delex_mrs_test\t" << stats.n_delex_mrs_test << '\n';
  out << "n_train\t" << stats.n_train << '\n';
  out << "n_test\t" << stats.n_test << '\n';
  for (int n = 1; n <= 4; ++n) {
    std::snprintf(buf, sizeof(buf), "%.4f", stats.novelty[static_cast<std::size_t>(n - 1)]);
    out << "novelty_" << n << '\t' << buf << '\n';
  }
}

}  // namespace mraug
