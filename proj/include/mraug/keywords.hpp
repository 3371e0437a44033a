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

#ifndef MRAUG_KEYWORDS_HPP_
#define MRAUG_KEYWORDS_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mraug/text.hpp"

namespace mraug {

struct ScoredKeyword {
  NGram phrase;
  double tfidf = 0.0;
  std::uint64_t freq_in_domain = 0;
};

// Keywords sorted by score descending, ties broken lexicographically by
// phrase. No duplicate phrases.
struct KeywordSet {
  std::vector<ScoredKeyword> keywords;

  std::size_t size() const { return keywords.size(); }
  bool empty() const { return keywords.empty(); }

  // One `<phrase>\t<score to 6 decimals>` per line, sorted descending.
  void save(const std::filesystem::path& path) const;
  static KeywordSet load(const std::filesystem::path& path);
};

// TF-IDF of a phrase: tf = log(1 + freq in the concatenated in-domain text),
// idf = log(|D| / df) with one background utterance per document. Returns 0
// when the phrase is absent in-domain or absent from every background
// document (a df=0 phrase can never retrieve anything from the same pool, so
// it is excluded rather than given an unbounded idf). Throws EmptyBackground.
double score_tfidf(const NGram& phrase, std::span<const TokenSequence> in_domain,
                   std::span<const TokenSequence> background);

// Scores every n-gram of the in-domain utterances, drops scores <= min_score,
// and keeps the top max_keywords. Deterministic given its inputs.
KeywordSet extract_keywords(std::span<const TokenSequence> in_domain,
                            std::span<const TokenSequence> background, int n_min,
                            int n_max, std::size_t max_keywords, double min_score);

}  // namespace mraug

#endif  // MRAUG_KEYWORDS_HPP_
