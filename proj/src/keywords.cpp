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

#include "mraug/keywords.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "mraug/error.hpp"

namespace mraug {

namespace {

// Occurrences of `phrase` summed per utterance; windows never cross
// utterance boundaries.
std::uint64_t phrase_frequency(const NGram& phrase,
                               std::span<const TokenSequence> corpus) {
  const std::vector<std::string> target = phrase.tokens();
  const std::size_t n = target.size();
  std::uint64_t freq = 0;
  for (const TokenSequence& seq : corpus) {
    if (seq.size() < n) continue;
    for (std::size_t i = 0; i + n <= seq.size(); ++i) {
      bool hit = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (seq.tokens[i + j] != target[j]) {
          hit = false;
          break;
        }
      }
      if (hit) ++freq;
    }
  }
  return freq;
}

std::uint64_t document_frequency(const NGram& phrase,
                                 std::span<const TokenSequence> corpus) {
  const std::vector<std::string> target = phrase.tokens();
  const std::size_t n = target.size();
  std::uint64_t df = 0;
  for (const TokenSequence& seq : corpus) {
    if (seq.size() < n) continue;
    for (std::size_t i = 0; i + n <= seq.size(); ++i) {
      bool hit = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (seq.tokens[i + j] != target[j]) {
          hit = false;
          break;
        }
      }
      if (hit) {
        ++df;
        break;
      }
    }
  }
  return df;
}

}  // namespace

double score_tfidf(const NGram& phrase, std::span<const TokenSequence> in_domain,
                   std::span<const TokenSequence> background) {
  if (background.empty()) throw EmptyBackground();
  const std::uint64_t freq = phrase_frequency(phrase, in_domain);
  if (freq == 0) return 0.0;
  const std::uint64_t df = document_frequency(phrase, background);
  if (df == 0) return 0.0;
  const double tf = std::log(1.0 + static_cast<double>(freq));
  const double idf =
      std::log(static_cast<double>(background.size()) / static_cast<double>(df));
  return tf * idf;
}

KeywordSet extract_keywords(std::span<const TokenSequence> in_domain,
                            std::span<const TokenSequence> background, int n_min,
                            int n_max, std::size_t max_keywords, double min_score) {
  if (background.empty()) throw EmptyBackground();

  // In-domain term frequencies over the whole set treated as one document.
  std::unordered_map<std::string, std::uint64_t, StringHash, std::equal_to<>> freq;
  for (const TokenSequence& seq : in_domain) {
    for_each_ngram(seq.tokens, n_min, n_max, [&](std::string_view gram) {
      const auto it = freq.find(gram);
      if (it == freq.end()) {
        freq.emplace(std::string(gram), 1);
      } else {
        it->second += 1;
      }
    });
  }

  // Document frequencies, restricted to phrases seen in-domain.
  std::unordered_map<std::string_view, std::uint64_t> df;
  std::unordered_set<std::string_view> seen_in_doc;
  for (const TokenSequence& seq : background) {
    seen_in_doc.clear();
    for_each_ngram(seq.tokens, n_min, n_max, [&](std::string_view gram) {
      const auto it = freq.find(gram);
      if (it == freq.end()) return;
      if (seen_in_doc.insert(it->first).second) df[it->first] += 1;
    });
  }

  const double total_docs = static_cast<double>(background.size());
  KeywordSet set;
  for (const auto& [phrase, count] : freq) {
    const auto df_it = df.find(phrase);
    if (df_it == df.end()) continue;  // df = 0: cannot match the pool
    const double score = std::log(1.0 + static_cast<double>(count)) *
                         std::log(total_docs / static_cast<double>(df_it->second));
    if (score <= min_score) continue;
    set.keywords.push_back({NGram{phrase}, score, count});
  }

  std::sort(set.keywords.begin(), set.keywords.end(),
            [](const ScoredKeyword& a, const ScoredKeyword& b) {
              if (a.tfidf != b.tfidf) return a.tfidf > b.tfidf;
              return a.phrase.text < b.phrase.text;
            });
  if (set.keywords.size() > max_keywords) set.keywords.resize(max_keywords);
  return set;
}

void KeywordSet::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write keyword file: " + path.string());
  char buf[32];
  for (const ScoredKeyword& kw : keywords) {
    std::snprintf(buf, sizeof(buf), "%.6f", kw.tfidf);
    out << kw.phrase.text << '\t' << buf << '\n';
  }
}

KeywordSet KeywordSet::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open keyword file: " + path.string());
  KeywordSet set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": keyword line has no tab separator");
    }
    ScoredKeyword kw;
    kw.phrase.text = line.substr(0, tab);
    try {
      kw.tfidf = std::stod(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": malformed keyword score");
    }
    set.keywords.push_back(std::move(kw));
  }
  return set;
}

}  // namespace mraug
