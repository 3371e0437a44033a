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

#ifndef MRAUG_POOL_HPP_
#define MRAUG_POOL_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mraug/keywords.hpp"
#include "mraug/text.hpp"

namespace mraug {

struct PoolOptions {
  std::size_t min_len = 2;   // token-length bounds, inclusive
  std::size_t max_len = 40;
  int n_min = 1;             // indexed n-gram orders; must match the keyword
  int n_max = 3;             // extraction settings

  bool operator==(const PoolOptions&) const = default;
};

// The open-domain utterance pool plus an inverted n-gram index over it.
// Immutable once built; every accessor is const and safe to call from any
// number of threads.
class UtterancePool {
 public:
  // Reads one utterance per line, dropping lines outside the token-length
  // bounds and skipping (with a count) lines that are not valid UTF-8.
  // Streaming: memory is proportional to the retained text plus the index.
  static UtterancePool ingest(std::istream& in, const PoolOptions& options);
  static UtterancePool ingest_file(const std::filesystem::path& path,
                                   const PoolOptions& options);

  std::size_t size() const { return utterances_.size(); }
  const TokenSequence& utterance(std::uint32_t id) const { return utterances_[id]; }
  const std::string& text(std::uint32_t id) const { return utterances_[id].source; }
  const std::vector<TokenSequence>& utterances() const { return utterances_; }
  const PoolOptions& options() const { return options_; }

  std::size_t skipped_invalid_utf8() const { return skipped_invalid_utf8_; }
  std::size_t dropped_by_length() const { return dropped_by_length_; }

  // Sorted, strictly increasing ids of utterances containing the n-gram;
  // nullptr when the n-gram occurs nowhere.
  const std::vector<std::uint32_t>* postings(std::string_view ngram_text) const;

  // Versioned binary index file (magic "MRAUGIDX1"); layout documented in
  // the README. Identical pools serialize to identical bytes.
  void save_index(const std::filesystem::path& path) const;
  static UtterancePool load_index(const std::filesystem::path& path);

 private:
  PoolOptions options_;
  std::vector<TokenSequence> utterances_;
  std::unordered_map<std::string, std::vector<std::uint32_t>, StringHash,
                     std::equal_to<>>
      index_;
  std::size_t skipped_invalid_utf8_ = 0;
  std::size_t dropped_by_length_ = 0;

  void add_utterance(std::string_view line);
};

// Utterances containing at least one keyword as a contiguous token
// subsequence. `matched_keywords[i]` lists, in keyword rank order, the
// phrases found in utterance `ids[i]`.
struct CandidateSet {
  std::vector<std::uint32_t> ids;  // sorted, deduplicated
  std::vector<std::vector<std::string>> matched_keywords;

  std::size_t size() const { return ids.size(); }
  bool empty() const { return ids.empty(); }
  bool contains(std::uint32_t id) const;
};

// Exact keyword retrieval via the inverted index; sound and complete with
// respect to a linear scan. Throws Error if a keyword's order lies outside
// the indexed range (the pool and keywords must be built with the same
// tokenizer and n-gram settings).
CandidateSet retrieve(const UtterancePool& pool, const KeywordSet& keywords);

}  // namespace mraug

#endif  // MRAUG_POOL_HPP_
