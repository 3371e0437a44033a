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

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mraug/error.hpp"
#include "mraug/pool.hpp"
#include "mraug/rng.hpp"
#include "testutil.hpp"

using namespace mraug;

namespace {

UtterancePool pool_from_lines(const std::vector<std::string>& lines,
                              PoolOptions options = {}) {
  std::stringstream ss;
  for (const std::string& line : lines) ss << line << '\n';
  return UtterancePool::ingest(ss, options);
}

// Brute-force reference: ids of utterances containing the phrase as a
// contiguous token run.
std::vector<std::uint32_t> scan_for_phrase(const UtterancePool& pool,
                                           const std::string& phrase) {
  const std::vector<std::string> target = tokenize(phrase).tokens;
  std::vector<std::uint32_t> hits;
  for (std::uint32_t id = 0; id < pool.size(); ++id) {
    const auto& tokens = pool.utterance(id).tokens;
    if (tokens.size() < target.size() || target.empty()) continue;
    for (std::size_t i = 0; i + target.size() <= tokens.size(); ++i) {
      if (std::equal(target.begin(), target.end(), tokens.begin() + i)) {
        hits.push_back(id);
        break;
      }
    }
  }
  return hits;
}

KeywordSet keyword_set(const std::vector<std::string>& phrases) {
  KeywordSet set;
  double score = static_cast<double>(phrases.size());
  for (const std::string& phrase : phrases) {
    set.keywords.push_back({NGram{phrase}, score, 1});
    score -= 1.0;
  }
  return set;
}

std::vector<std::string> random_lines(Rng& rng, std::size_t count,
                                      std::size_t vocab = 30) {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < count; ++i) {
    std::string line;
    const std::size_t len = 2 + rng.below(9);
    for (std::size_t t = 0; t < len; ++t) {
      if (t > 0) line.push_back(' ');
      line += "w" + std::to_string(rng.below(vocab));
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace

TEST_CASE("ingest drops utterances outside the token-length bounds") {
  const UtterancePool pool = pool_from_lines({"hi there", "a", "this is fine"});
  CHECK(pool.size() == 2);
  CHECK(pool.dropped_by_length() == 1);
  CHECK(pool.text(0) == "hi there");
  CHECK(pool.text(1) == "this is fine");

  PoolOptions wide;
  wide.min_len = 1;
  const UtterancePool all = pool_from_lines({"hi", "a", "this is fine"}, wide);
  CHECK(all.size() == 3);

  PoolOptions narrow;
  narrow.max_len = 2;
  const UtterancePool capped = pool_from_lines({"hi there", "one two three"}, narrow);
  CHECK(capped.size() == 1);
}

TEST_CASE("ingest of empty input yields an empty pool") {
  const UtterancePool pool = pool_from_lines({});
  CHECK(pool.size() == 0);
}

TEST_CASE("ingest skips malformed utf8 lines with a count") {
  std::stringstream ss;
  ss << "good line one\n";
  ss << "bad \xff\xfe line\n";
  ss << "good line two\n";
  const UtterancePool pool = UtterancePool::ingest(ss, {});
  CHECK(pool.size() == 2);
  CHECK(pool.skipped_invalid_utf8() == 1);
}

TEST_CASE("ingest_file raises IoError with the path in the message") {
  try {
    UtterancePool::ingest_file("/nonexistent/pool.txt", {});
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/pool.txt") != std::string::npos);
  }
}

TEST_CASE("index postings agree with a brute-force scan") {
  Rng rng(5);
  const UtterancePool pool = pool_from_lines(random_lines(rng, 1000));
  REQUIRE(pool.size() == 1000);
  for (int probe = 0; probe < 50; ++probe) {
    // pick a random n-gram from a random utterance so most probes hit
    const std::uint32_t id = static_cast<std::uint32_t>(rng.below(pool.size()));
    const auto& tokens = pool.utterance(id).tokens;
    const std::size_t n = 1 + rng.below(3);
    if (tokens.size() < n) continue;
    const std::size_t at = rng.below(tokens.size() - n + 1);
    std::string phrase;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) phrase.push_back(' ');
      phrase += tokens[at + i];
    }
    const std::vector<std::uint32_t>* postings = pool.postings(phrase);
    REQUIRE(postings != nullptr);
    CHECK(*postings == scan_for_phrase(pool, phrase));
  }
  CHECK(pool.postings("nonexistent token") == nullptr);
}

TEST_CASE("postings are strictly increasing") {
  Rng rng(6);
  const UtterancePool pool = pool_from_lines(random_lines(rng, 300, 10));
  for (int probe = 0; probe < 20; ++probe) {
    const std::string phrase = "w" + std::to_string(rng.below(10));
    const std::vector<std::uint32_t>* postings = pool.postings(phrase);
    if (postings == nullptr) continue;
    for (std::size_t i = 1; i < postings->size(); ++i) {
      CHECK((*postings)[i - 1] < (*postings)[i]);
    }
  }
}

TEST_CASE("retrieve finds keyword-bearing utterances") {
  const UtterancePool pool =
      pool_from_lines({"With kids movies?", "nothing here", "also with kids again"});
  const CandidateSet result = retrieve(pool, keyword_set({"with kids"}));
  CHECK(result.ids == std::vector<std::uint32_t>{0, 2});
  REQUIRE(result.matched_keywords.size() == 2);
  CHECK(result.matched_keywords[0] == std::vector<std::string>{"with kids"});
}

TEST_CASE("retrieve with an empty keyword set is empty") {
  const UtterancePool pool = pool_from_lines({"some line here", "another line"});
  CHECK(retrieve(pool, KeywordSet{}).empty());
}

TEST_CASE("retrieve equals a linear scan on a small pool") {
  const UtterancePool pool = pool_from_lines({
      "the cheap place downtown",
      "movies with kids",
      "cheap eats near me",
      "totally unrelated line",
      "kids love cheap toys",
  });
  const KeywordSet keywords = keyword_set({"cheap", "with kids"});
  const CandidateSet result = retrieve(pool, keywords);

  std::set<std::uint32_t> expected;
  for (const char* phrase : {"cheap", "with kids"}) {
    for (const std::uint32_t id : scan_for_phrase(pool, phrase)) expected.insert(id);
  }
  CHECK(std::vector<std::uint32_t>(expected.begin(), expected.end()) == result.ids);
}

TEST_CASE("retrieve is sound and complete on randomized pools") {
  Rng rng(9);
  for (int trial = 0; trial < 25; ++trial) {
    const UtterancePool pool = pool_from_lines(random_lines(rng, 200, 12));
    std::vector<std::string> phrases;
    for (int k = 0; k < 4; ++k) {
      std::string phrase = "w" + std::to_string(rng.below(12));
      if (rng.below(2) == 1) phrase += " w" + std::to_string(rng.below(12));
      phrases.push_back(std::move(phrase));
    }
    const CandidateSet result = retrieve(pool, keyword_set(phrases));

    std::set<std::uint32_t> expected;
    for (const std::string& phrase : phrases) {
      for (const std::uint32_t id : scan_for_phrase(pool, phrase)) expected.insert(id);
    }
    CHECK(std::vector<std::uint32_t>(expected.begin(), expected.end()) == result.ids);
  }
}

TEST_CASE("retrieval distributes over keyword-set union") {
  Rng rng(10);
  const UtterancePool pool = pool_from_lines(random_lines(rng, 400, 15));
  const KeywordSet k1 = keyword_set({"w1", "w2 w3"});
  const KeywordSet k2 = keyword_set({"w4", "w5"});
  KeywordSet both = keyword_set({"w1", "w2 w3", "w4", "w5"});

  std::set<std::uint32_t> union_ids;
  for (const std::uint32_t id : retrieve(pool, k1).ids) union_ids.insert(id);
  for (const std::uint32_t id : retrieve(pool, k2).ids) union_ids.insert(id);
  CHECK(std::vector<std::uint32_t>(union_ids.begin(), union_ids.end()) ==
        retrieve(pool, both).ids);
}

TEST_CASE("permuting input lines preserves the retrieved multiset") {
  Rng rng(11);
  std::vector<std::string> lines = random_lines(rng, 150, 8);
  const UtterancePool pool = pool_from_lines(lines);
  std::vector<std::string> shuffled = lines;
  rng.shuffle(shuffled);
  const UtterancePool permuted = pool_from_lines(shuffled);

  const KeywordSet keywords = keyword_set({"w0", "w1 w2"});
  auto texts = [](const UtterancePool& p, const CandidateSet& c) {
    std::vector<std::string> out;
    for (const std::uint32_t id : c.ids) out.push_back(p.text(id));
    std::sort(out.begin(), out.end());
    return out;
  };
  CHECK(texts(pool, retrieve(pool, keywords)) ==
        texts(permuted, retrieve(permuted, keywords)));
}

TEST_CASE("retrieve rejects keywords outside the indexed n-gram range") {
  const UtterancePool pool = pool_from_lines({"a b c d e"});
  CHECK_THROWS_AS(retrieve(pool, keyword_set({"a b c d"})), Error);
}

TEST_CASE("index files round-trip through disk") {
  testutil::TempDir dir("idx");
  Rng rng(12);
  const std::vector<std::string> lines = random_lines(rng, 120, 10);
  const UtterancePool pool = pool_from_lines(lines);
  pool.save_index(dir.file("pool.idx"));

  // identical pools serialize identically
  pool_from_lines(lines).save_index(dir.file("pool2.idx"));
  CHECK(testutil::slurp(dir.file("pool.idx")) == testutil::slurp(dir.file("pool2.idx")));

  const UtterancePool loaded = UtterancePool::load_index(dir.file("pool.idx"));
  CHECK(loaded.size() == pool.size());
  CHECK(loaded.options() == pool.options());
  const KeywordSet keywords = keyword_set({"w0", "w1 w2"});
  CHECK(retrieve(loaded, keywords).ids == retrieve(pool, keywords).ids);

  testutil::write_file(dir.file("garbage.idx"), {"not an index"});
  CHECK_THROWS_AS(UtterancePool::load_index(dir.file("garbage.idx")), IoError);
  CHECK_THROWS_AS(UtterancePool::load_index(dir.file("missing.idx")), IoError);
}
