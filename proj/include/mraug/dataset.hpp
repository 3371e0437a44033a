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

#ifndef MRAUG_DATASET_HPP_
#define MRAUG_DATASET_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mraug/mr.hpp"

namespace mraug {

// Few-shot split: one training pair per sampled delexicalized-MR group,
// everything else in the test set.
struct FewShotSplit {
  std::vector<UtterancePair> train;
  std::vector<UtterancePair> test;
  std::map<std::string, std::vector<std::size_t>> groups;  // delex MR -> corpus ids
};

// Groups the corpus by delexicalized MR, samples min(k_groups, #groups)
// groups without replacement, then one pair per sampled group (both draws
// seeded). Throws EmptyCorpus.
FewShotSplit make_split(std::span<const UtterancePair> corpus, std::size_t k_groups,
                        std::uint64_t seed);

struct CorpusStats {
  std::size_t n_intents = 0;
  std::size_t n_slots = 0;
  std::size_t n_delex_mrs_train = 0;
  std::size_t n_delex_mrs_test = 0;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
  // Fraction of test n-gram types absent from the training set, orders 1-4.
  std::array<double, 4> novelty{};
};

CorpusStats compute_stats(const FewShotSplit& split);

// Flat `key<TAB>value` report, one line per statistic.
void write_stats(const std::filesystem::path& path, const CorpusStats& stats);

}  // namespace mraug

#endif  // MRAUG_DATASET_HPP_
