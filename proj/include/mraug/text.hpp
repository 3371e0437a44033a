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

#ifndef MRAUG_TEXT_HPP_
#define MRAUG_TEXT_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mraug {

// Tokenized utterance. Tokens are lowercase and never empty; spans give the
// byte range of each token in `source` so original casing can be recovered.
struct TokenSequence {
  std::vector<std::string> tokens;
  std::string source;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> spans;

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }

  // Original text covering tokens [begin, end), including any bytes between
  // them.
  std::string source_span(std::size_t begin, std::size_t end) const;
};

// Lowercases, splits on whitespace, and detaches . , ! ? ; : ( ) " as
// standalone tokens. Apostrophes stay inside tokens. Every consumer of token
// text in this project must go through here so that keyword extraction,
// retrieval, tagging, and the metrics all see the same vocabulary.
TokenSequence tokenize(std::string_view text);

// Contiguous token window, stored as the tokens joined by single spaces
// (tokens contain no whitespace, so the joined form is unambiguous).
struct NGram {
  std::string text;

  int order() const;
  std::vector<std::string> tokens() const;
  static NGram from_tokens(std::span<const std::string> tokens, std::size_t begin,
                           std::size_t n);

  bool operator==(const NGram&) const = default;
  auto operator<=>(const NGram&) const = default;
};

// All contiguous windows of length n in [n_min, n_max], multiplicities
// preserved. Throws Error when the range is invalid.
std::vector<NGram> ngrams(const TokenSequence& seq, int n_min, int n_max);

// Allocation-light variant used by the index and counting code.
void for_each_ngram(std::span<const std::string> tokens, int n_min, int n_max,
                    const std::function<void(std::string_view)>& fn);

bool valid_utf8(std::string_view s);

std::string lowercase_ascii(std::string_view s);

// Transparent hashing so unordered maps keyed by std::string accept
// std::string_view lookups without allocating.
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
};

}  // namespace mraug

#endif  // MRAUG_TEXT_HPP_
