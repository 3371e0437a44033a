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

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "mraug/error.hpp"
#include "mraug/mr.hpp"
#include "mraug/pipeline.hpp"
#include "testutil.hpp"

using namespace mraug;

namespace {

namespace fs = std::filesystem;

struct Fixture {
  testutil::TempDir dir{"pipeline"};
  testutil::PlantedDomain domain;
  PipelineConfig cfg;

  explicit Fixture(std::uint64_t seed, std::size_t n_in = 40, std::size_t n_rel = 300,
                   std::size_t n_irr = 300, std::size_t n_bg = 1400)
      : domain(testutil::make_planted_domain(seed, n_in, n_rel, n_irr, n_bg)) {
    write_pairs_file(dir.file("in_pairs.txt"), domain.in_pairs);
    testutil::write_file(dir.file("pool.txt"), domain.pool_lines);
    cfg.in_pairs = dir.file("in_pairs.txt").string();
    cfg.pool = dir.file("pool.txt").string();
    cfg.max_keywords = 5000;  // keep every scored phrase for the tiny fixture
    cfg.seed = 31337;
  }

  PipelineConfig in(const std::string& out_name) {
    PipelineConfig c = cfg;
    c.out_dir = dir.file(out_name).string();
    return c;
  }
};

std::vector<std::string> lines_of(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

void check_same_file(const fs::path& a, const fs::path& b) {
  CAPTURE(a.string());
  CHECK(testutil::slurp(a) == testutil::slurp(b));
}

}  // namespace

TEST_CASE("augment pipeline produces parsable pairs aligned with the filtered set") {
  Fixture fx(101);
  const PipelineConfig cfg = fx.in("out");
  cmd_augment(cfg);

  const auto filtered = lines_of(fs::path(cfg.out_dir) / outputs::kFiltered);
  const std::vector<UtterancePair> augmented =
      read_pairs_file(fs::path(cfg.out_dir) / outputs::kAugmented);
  CHECK(augmented.size() == filtered.size());
  for (std::size_t i = 0; i < augmented.size(); ++i) {
    CHECK(augmented[i].utterance == filtered[i]);
  }
}

TEST_CASE("augment recovers planted annotations end to end") {
  Fixture fx(102);
  const PipelineConfig cfg = fx.in("out");
  cmd_augment(cfg);

  const std::vector<UtterancePair> augmented =
      read_pairs_file(fs::path(cfg.out_dir) / outputs::kAugmented);
  REQUIRE(!augmented.empty());
  std::size_t exact = 0;
  for (const UtterancePair& pair : augmented) {
    const auto it = fx.domain.gold_mr.find(pair.utterance);
    if (it != fx.domain.gold_mr.end() && serialize_mr(pair.mr) == it->second) ++exact;
  }
  CHECK(static_cast<double>(exact) / augmented.size() >= 0.85);
}

TEST_CASE("augment twice with one seed is byte-identical") {
  Fixture fx(103, 30, 200, 200, 900);
  const PipelineConfig run1 = fx.in("out1");
  const PipelineConfig run2 = fx.in("out2");
  cmd_augment(run1);
  cmd_augment(run2);
  for (const char* file : {outputs::kKeywords, outputs::kCandidates, outputs::kFiltered,
                           outputs::kFilterReport, outputs::kAugmented}) {
    check_same_file(fs::path(run1.out_dir) / file, fs::path(run2.out_dir) / file);
  }
}

TEST_CASE("stage-chained execution equals the monolithic pipeline") {
  Fixture fx(104, 30, 200, 200, 900);
  const PipelineConfig mono = fx.in("mono");
  cmd_augment(mono);

  const PipelineConfig chained = fx.in("chained");
  cmd_extract_keywords(chained);
  cmd_retrieve(chained);
  cmd_filter(chained);
  cmd_annotate(chained);

  for (const char* file : {outputs::kKeywords, outputs::kCandidates, outputs::kFiltered,
                           outputs::kFilterReport, outputs::kAugmented}) {
    check_same_file(fs::path(mono.out_dir) / file, fs::path(chained.out_dir) / file);
  }
}

TEST_CASE("keyword extraction writes a byte-stable sorted file") {
  Fixture fx(105, 25, 150, 150, 700);
  const PipelineConfig run1 = fx.in("kw1");
  const PipelineConfig run2 = fx.in("kw2");
  cmd_extract_keywords(run1);
  cmd_extract_keywords(run2);
  check_same_file(fs::path(run1.out_dir) / outputs::kKeywords,
                  fs::path(run2.out_dir) / outputs::kKeywords);

  const auto lines = lines_of(fs::path(run1.out_dir) / outputs::kKeywords);
  REQUIRE(!lines.empty());
  double prev = 1e300;
  for (const std::string& line : lines) {
    const std::size_t tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    const double score = std::stod(line.substr(tab + 1));
    CHECK(score <= prev);
    prev = score;
  }
}

TEST_CASE("missing pool path surfaces an IoError naming the path") {
  Fixture fx(106, 20, 50, 50, 300);
  PipelineConfig cfg = fx.in("badpool");
  cfg.pool = "/nonexistent/nowhere/pool.txt";
  try {
    cmd_extract_keywords(cfg);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/nowhere/pool.txt") != std::string::npos);
  }
}

TEST_CASE("split command writes k training groups") {
  testutil::TempDir dir("splitcmd");
  std::vector<UtterancePair> corpus;
  for (int g = 0; g < 100; ++g) {
    for (int m = 0; m < 3; ++m) {
      corpus.push_back({parse_mr("inform(k" + std::to_string(g) + "=v" + std::to_string(m) + ")"),
                        "utterance " + std::to_string(g) + " " + std::to_string(m)});
    }
  }
  write_pairs_file(dir.file("corpus.txt"), corpus);

  PipelineConfig cfg;
  cfg.in_pairs = dir.file("corpus.txt").string();
  cfg.out_dir = dir.file("out").string();
  cfg.split_groups = 50;
  cfg.seed = 5;
  cmd_split(cfg);

  CHECK(lines_of(fs::path(cfg.out_dir) / outputs::kTrain).size() == 50);
  CHECK(lines_of(fs::path(cfg.out_dir) / outputs::kTest).size() == corpus.size() - 50);

  // stats over the produced split
  PipelineConfig stats_cfg;
  stats_cfg.train_pairs = (fs::path(cfg.out_dir) / outputs::kTrain).string();
  stats_cfg.test_pairs = (fs::path(cfg.out_dir) / outputs::kTest).string();
  stats_cfg.out_dir = cfg.out_dir;
  cmd_stats(stats_cfg);
  const std::string stats_text = testutil::slurp(fs::path(cfg.out_dir) / outputs::kStats);
  CHECK(stats_text.find("n_train\t50") != std::string::npos);
  CHECK(stats_text.find("n_test\t250") != std::string::npos);
}

TEST_CASE("evaluate reports BLEU 1.0 for hypothesis equal to reference") {
  testutil::TempDir dir("evalcmd");
  std::vector<UtterancePair> pairs;
  pairs.push_back({parse_mr("inform(food=chinese;price=cheap)"),
                   "a cheap chinese restaurant in town"});
  pairs.push_back({parse_mr("inform(name=marlowe)"), "marlowe serves dinner"});
  write_pairs_file(dir.file("hyp.txt"), pairs);
  write_pairs_file(dir.file("ref.txt"), pairs);

  PipelineConfig cfg;
  cfg.hyp_pairs = dir.file("hyp.txt").string();
  cfg.ref_pairs = dir.file("ref.txt").string();
  cfg.out_dir = dir.file("out").string();
  cmd_evaluate(cfg);

  const std::string report = testutil::slurp(fs::path(cfg.out_dir) / outputs::kReport);
  CHECK(report.find("bleu\t1.0000") != std::string::npos);
  CHECK(report.find("err\t0.0000") != std::string::npos);
}

TEST_CASE("evaluate computes intrinsic metrics for augmented data") {
  testutil::TempDir dir("evalaug");
  std::vector<UtterancePair> test;
  test.push_back({parse_mr("inform(food=chinese)"), "i want chinese food"});
  test.push_back({parse_mr("request(area=north)"), "which area is north"});
  std::vector<UtterancePair> augmented;
  augmented.push_back({parse_mr("inform(food=thai)"), "i want thai food"});
  write_pairs_file(dir.file("test.txt"), test);
  write_pairs_file(dir.file("aug.txt"), augmented);

  PipelineConfig cfg;
  cfg.aug_pairs = dir.file("aug.txt").string();
  cfg.test_pairs = dir.file("test.txt").string();
  cfg.out_dir = dir.file("out").string();
  cmd_evaluate(cfg);

  const std::string report = testutil::slurp(fs::path(cfg.out_dir) / outputs::kReport);
  CHECK(report.find("mr_cov\t0.5000") != std::string::npos);  // inform(food) covered
  CHECK(report.find("sl_cov\t0.5000") != std::string::npos);  // food of {food, area}
  CHECK(report.find("novelty_1\t") != std::string::npos);
  CHECK(report.find("ppl\t") != std::string::npos);
}

TEST_CASE("metric selection limits the report") {
  testutil::TempDir dir("evalsel");
  std::vector<UtterancePair> pairs = {{parse_mr("inform(a=b)"), "b is here"}};
  write_pairs_file(dir.file("hyp.txt"), pairs);
  write_pairs_file(dir.file("ref.txt"), pairs);

  PipelineConfig cfg;
  cfg.hyp_pairs = dir.file("hyp.txt").string();
  cfg.ref_pairs = dir.file("ref.txt").string();
  cfg.out_dir = dir.file("out").string();
  cfg.metric_select = "bleu";
  cmd_evaluate(cfg);

  const std::string report = testutil::slurp(fs::path(cfg.out_dir) / outputs::kReport);
  CHECK(report.find("bleu\t") != std::string::npos);
  CHECK(report.find("err\t") == std::string::npos);
}

TEST_CASE("external scorer and intent commands plug into the pipeline") {
  Fixture fx(108, 20, 80, 80, 500);
  PipelineConfig cfg = fx.in("ext");

  // scorer: relevance 1.0 iff the line carries the domain signal token
  const fs::path scorer = fx.dir.file("scorer.sh");
  {
    std::ofstream out(scorer);
    out << "#!/bin/sh\ndir=\"$1\"\n: > \"$dir/scores.txt\"\n"
        << "while IFS= read -r line; do\n"
        << "  case \"$line\" in *restaurantx*) echo 1.0 ;; *) echo 0.0 ;; esac\n"
        << "done < \"$dir/predict.txt\" >> \"$dir/scores.txt\"\n";
  }
  // intent: constant label
  const fs::path intent = fx.dir.file("intent.sh");
  {
    std::ofstream out(intent);
    out << "#!/bin/sh\ndir=\"$1\"\n: > \"$dir/nlu_intents.txt\"\n"
        << "while IFS= read -r line; do printf 'inform\\t1.0\\n'; done"
        << " < \"$dir/nlu_predict.txt\" >> \"$dir/nlu_intents.txt\"\n";
  }
  std::filesystem::permissions(scorer, std::filesystem::perms::owner_all);
  std::filesystem::permissions(intent, std::filesystem::perms::owner_all);
  cfg.scorer_cmd = scorer.string();
  cfg.intent_cmd = intent.string();

  cmd_augment(cfg);

  // the perfect scorer keeps exactly the signal-bearing candidates
  const auto filtered = lines_of(fs::path(cfg.out_dir) / outputs::kFiltered);
  CHECK(filtered.size() == fx.domain.n_relevant);
  for (const std::string& line : filtered) {
    CHECK(line.find("restaurantx") != std::string::npos);
  }
  const std::vector<UtterancePair> augmented =
      read_pairs_file(fs::path(cfg.out_dir) / outputs::kAugmented);
  REQUIRE(augmented.size() == filtered.size());
  for (const UtterancePair& pair : augmented) {
    CHECK(pair.mr.acts[0].intent == "inform");
  }
}

TEST_CASE("saved index reproduces the pool-backed retrieval byte for byte") {
  Fixture fx(107, 25, 150, 150, 700);
  PipelineConfig direct = fx.in("direct");
  cmd_extract_keywords(direct);
  cmd_retrieve(direct);

  PipelineConfig saving = fx.in("saving");
  saving.save_index = fx.dir.file("pool.idx").string();
  cmd_extract_keywords(saving);

  PipelineConfig loading = fx.in("saving");  // same out dir, now via the index
  loading.load_index = fx.dir.file("pool.idx").string();
  loading.pool.clear();
  cmd_retrieve(loading);

  check_same_file(fs::path(direct.out_dir) / outputs::kCandidates,
                  fs::path(loading.out_dir) / outputs::kCandidates);
}
