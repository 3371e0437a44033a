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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "mraug/error.hpp"
#include "mraug/rng.hpp"
#include "mraug/text.hpp"

using namespace mraug;

TEST_CASE("tokenize detaches punctuation and lowercases") {
  const TokenSequence seq = tokenize("With kids movies?");
  CHECK(seq.tokens == std::vector<std::string>{"with", "kids", "movies", "?"});
}

TEST_CASE("tokenize keeps apostrophes inside tokens") {
  const TokenSequence seq = tokenize("I can't go.");
  CHECK(seq.tokens == std::vector<std::string>{"i", "can't", "go", "."});
}

TEST_CASE("tokenize of empty input yields empty sequence") {
  CHECK(tokenize("").empty());
  CHECK(tokenize("   \t ").empty());
}

TEST_CASE("tokenize records source spans") {
  const TokenSequence seq = tokenize("We love Chicago!");
  REQUIRE(seq.tokens.size() == 4);
  CHECK(seq.tokens[2] == "chicago");
  CHECK(seq.source_span(2, 3) == "Chicago");
  CHECK(seq.source_span(0, 2) == "We love");
}

TEST_CASE("tokenize handles consecutive punctuation") {
  const TokenSequence seq = tokenize("what?! (really)");
  CHECK(seq.tokens == std::vector<std::string>{"what", "?", "!", "(", "really", ")"});
}

TEST_CASE("token invariants hold on arbitrary input") {
  Rng rng(7);
  const std::string alphabet = "abcXYZ'.,!?;:()\" \t-09";
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const std::size_t len = rng.below(60);
    for (std::size_t i = 0; i < len; ++i) text.push_back(alphabet[rng.below(alphabet.size())]);
    const TokenSequence seq = tokenize(text);
    REQUIRE(seq.tokens.size() == seq.spans.size());
    for (const std::string& token : seq.tokens) {
      CHECK(!token.empty());
      CHECK(token.find(' ') == std::string::npos);
      CHECK(token.find('\t') == std::string::npos);
    }
    // determinism
    CHECK(tokenize(text).tokens == seq.tokens);
  }
}

TEST_CASE("ngrams enumerates contiguous windows") {
  TokenSequence seq;
  seq.tokens = {"a", "b", "c"};
  const std::vector<NGram> grams = ngrams(seq, 2, 2);
  REQUIRE(grams.size() == 2);
  CHECK(grams[0].text == "a b");
  CHECK(grams[1].text == "b c");
}

TEST_CASE("ngrams of a short sequence is empty") {
  TokenSequence seq;
  seq.tokens = {"a"};
  CHECK(ngrams(seq, 2, 2).empty());
}

TEST_CASE("ngrams preserves multiplicity") {
  TokenSequence seq;
  seq.tokens = {"a", "a", "a"};
  const std::vector<NGram> grams = ngrams(seq, 1, 1);
  REQUIRE(grams.size() == 3);
  for (const NGram& g : grams) CHECK(g.text == "a");
}

TEST_CASE("ngram window count matches the closed form") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    TokenSequence seq;
    const std::size_t len = rng.below(12);
    for (std::size_t i = 0; i < len; ++i) {
      seq.tokens.push_back("t" + std::to_string(rng.below(5)));
    }
    const int n = 1 + static_cast<int>(rng.below(4));
    const std::size_t count = ngrams(seq, n, n).size();
    const std::size_t expected =
        seq.size() + 1 >= static_cast<std::size_t>(n) ? seq.size() + 1 - n : 0;
    CHECK(count == expected);
  }
}

TEST_CASE("ngrams rejects an invalid range") {
  TokenSequence seq;
  seq.tokens = {"a", "b"};
  CHECK_THROWS_AS(ngrams(seq, 0, 2), Error);
  CHECK_THROWS_AS(ngrams(seq, 3, 2), Error);
}

TEST_CASE("ngram order and token round-trip") {
  const NGram gram = NGram::from_tokens(std::vector<std::string>{"x", "y", "z"}, 0, 3);
  CHECK(gram.text == "x y z");
  CHECK(gram.order() == 3);
  CHECK(gram.tokens() == std::vector<std::string>{"x", "y", "z"});
}

TEST_CASE("utf8 validation") {
  CHECK(valid_utf8("plain ascii"));
  CHECK(valid_utf8("caf\xc3\xa9"));
  CHECK(valid_utf8("\xe4\xb8\xad\xe6\x96\x87"));
  CHECK(!valid_utf8("\xff\xfe"));
  CHECK(!valid_utf8("truncated \xc3"));
  CHECK(!valid_utf8("overlong \xc0\xaf"));
}
