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

#include "mraug/pool.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>

#include "mraug/error.hpp"

namespace mraug {

namespace {

constexpr char kIndexMagic[] = "MRAUGIDX1";
constexpr std::size_t kIndexMagicLen = 9;

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
               static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
  out.write(b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    const char b = static_cast<char>(v >> (8 * i));
    out.write(&b, 1);
  }
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw IoError("truncated index file");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t get_u64(std::istream& in) {
  std::uint64_t v = 0;
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw IoError("truncated index file");
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

std::string get_string(std::istream& in) {
  const std::uint32_t len = get_u32(in);
  std::string s(len, '\0');
  in.read(s.data(), len);
  if (!in) throw IoError("truncated index file");
  return s;
}

}  // namespace

void UtterancePool::add_utterance(std::string_view line) {
  TokenSequence seq = tokenize(line);
  if (seq.size() < options_.min_len || seq.size() > options_.max_len) {
    ++dropped_by_length_;
    return;
  }
  const std::uint32_t id = static_cast<std::uint32_t>(utterances_.size());
  for_each_ngram(seq.tokens, options_.n_min, options_.n_max,
                 [&](std::string_view gram) {
                   auto it = index_.find(gram);
                   if (it == index_.end()) {
                     index_.emplace(std::string(gram),
                                    std::vector<std::uint32_t>{id});
                   } else if (it->second.back() != id) {
                     // ids arrive in increasing order, so postings stay
                     // sorted and duplicate-free by construction
                     it->second.push_back(id);
                   }
                 });
  utterances_.push_back(std::move(seq));
}

UtterancePool UtterancePool::ingest(std::istream& in, const PoolOptions& options) {
  UtterancePool pool;
  pool.options_ = options;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!valid_utf8(line)) {
      ++pool.skipped_invalid_utf8_;
      continue;
    }
    pool.add_utterance(line);
  }
  return pool;
}

UtterancePool UtterancePool::ingest_file(const std::filesystem::path& path,
                                         const PoolOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open pool file: " + path.string());
  return ingest(in, options);
}

const std::vector<std::uint32_t>* UtterancePool::postings(
    std::string_view ngram_text) const {
  const auto it = index_.find(ngram_text);
  return it == index_.end() ? nullptr : &it->second;
}

void UtterancePool::save_index(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write index file: " + path.string());
  out.write(kIndexMagic, kIndexMagicLen);
  put_u32(out, static_cast<std::uint32_t>(options_.min_len));
  put_u32(out, static_cast<std::uint32_t>(options_.max_len));
  put_u32(out, static_cast<std::uint32_t>(options_.n_min));
  put_u32(out, static_cast<std::uint32_t>(options_.n_max));

  put_u64(out, utterances_.size());
  for (const TokenSequence& seq : utterances_) {
    put_u32(out, static_cast<std::uint32_t>(seq.source.size()));
    out.write(seq.source.data(), static_cast<std::streamsize>(seq.source.size()));
  }

  // Terms sorted so that identical pools produce identical files.
  std::map<std::string_view, const std::vector<std::uint32_t>*> sorted;
  for (const auto& [term, postings] : index_) sorted.emplace(term, &postings);
  put_u64(out, sorted.size());
  for (const auto& [term, postings] : sorted) {
    put_u32(out, static_cast<std::uint32_t>(term.size()));
    out.write(term.data(), static_cast<std::streamsize>(term.size()));
    put_u64(out, postings->size());
    for (const std::uint32_t id : *postings) put_u32(out, id);
  }
  if (!out) throw IoError("failed writing index file: " + path.string());
}

UtterancePool UtterancePool::load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open index file: " + path.string());
  char magic[kIndexMagicLen];
  in.read(magic, kIndexMagicLen);
  if (!in || std::string_view(magic, kIndexMagicLen) != kIndexMagic) {
    throw IoError("not an index file (bad magic): " + path.string());
  }
  UtterancePool pool;
  pool.options_.min_len = get_u32(in);
  pool.options_.max_len = get_u32(in);
  pool.options_.n_min = static_cast<int>(get_u32(in));
  pool.options_.n_max = static_cast<int>(get_u32(in));

  const std::uint64_t count = get_u64(in);
  pool.utterances_.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    pool.utterances_.push_back(tokenize(get_string(in)));
  }

  const std::uint64_t terms = get_u64(in);
  for (std::uint64_t i = 0; i < terms; ++i) {
    std::string term = get_string(in);
    const std::uint64_t n = get_u64(in);
    std::vector<std::uint32_t> postings(n);
    for (std::uint64_t j = 0; j < n; ++j) postings[j] = get_u32(in);
    pool.index_.emplace(std::move(term), std::move(postings));
  }
  return pool;
}

bool CandidateSet::contains(std::uint32_t id) const {
  return std::binary_search(ids.begin(), ids.end(), id);
}

CandidateSet retrieve(const UtterancePool& pool, const KeywordSet& keywords) {
  for (const ScoredKeyword& kw : keywords.keywords) {
    const int order = kw.phrase.order();
    if (order < pool.options().n_min || order > pool.options().n_max) {
      throw Error("keyword '" + kw.phrase.text + "' has order " +
                  std::to_string(order) + " outside the indexed range [" +
                  std::to_string(pool.options().n_min) + ", " +
                  std::to_string(pool.options().n_max) + "]");
    }
  }

  std::unordered_map<std::uint32_t, std::vector<std::string>> matches;
  for (const ScoredKeyword& kw : keywords.keywords) {
    const std::vector<std::uint32_t>* postings = pool.postings(kw.phrase.text);
    if (postings == nullptr) continue;
    for (const std::uint32_t id : *postings) {
      matches[id].push_back(kw.phrase.text);
    }
  }

  CandidateSet result;
  result.ids.reserve(matches.size());
  for (const auto& [id, _] : matches) result.ids.push_back(id);
  std::sort(result.ids.begin(), result.ids.end());
  result.matched_keywords.reserve(result.ids.size());
  for (const std::uint32_t id : result.ids) {
    result.matched_keywords.push_back(std::move(matches[id]));
  }
  return result;
}

}  // namespace mraug
