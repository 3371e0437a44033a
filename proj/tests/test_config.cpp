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

#include <sstream>

#include "mraug/config.hpp"
#include "mraug/error.hpp"

using namespace mraug;

TEST_CASE("config file parses sections and values") {
  std::stringstream ss;
  ss << "# pipeline configuration\n"
     << "[paths]\n"
     << "in_pairs = /data/train.txt\n"
     << "pool = /data/pool.txt\n"
     << "out_dir = /tmp/out\n"
     << "\n"
     << "[keywords]\n"
     << "n_min = 1\n"
     << "n_max = 3\n"
     << "max_keywords = 200\n"
     << "min_score = 0.5\n"
     << "[filter]\n"
     << "sigma_plus = 0.98\n"
     << "lambda1 = 12\n"
     << "delta = 50\n"
     << "[global]\n"
     << "seed = 1234\n";
  const PipelineConfig cfg = parse_config(ss);
  CHECK(cfg.in_pairs == "/data/train.txt");
  CHECK(cfg.pool == "/data/pool.txt");
  CHECK(cfg.out_dir == "/tmp/out");
  CHECK(cfg.max_keywords == 200);
  CHECK(cfg.min_score == 0.5);
  CHECK(cfg.filter.sigma_plus == 0.98);
  CHECK(cfg.filter.lambda1 == 12.0);
  CHECK(cfg.filter.delta == 50);
  CHECK(cfg.seed == 1234);
  // untouched values keep their defaults
  CHECK(cfg.filter.sigma_minus == 0.5);
  CHECK(cfg.split_groups == 50);
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("unknown config keys are rejected") {
  std::stringstream ss;
  ss << "[keywords]\nngram_span = 3\n";
  CHECK_THROWS_AS(parse_config(ss), ConfigError);

  std::stringstream ss2;
  ss2 << "[unknown_section]\nn_min = 1\n";
  CHECK_THROWS_AS(parse_config(ss2), ConfigError);
}

TEST_CASE("malformed config lines are rejected with location") {
  std::stringstream ss;
  ss << "[paths]\nthis line has no equals\n";
  try {
    parse_config(ss, "cfg.ini");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("cfg.ini:2") != std::string::npos);
  }
}

TEST_CASE("numeric config values are validated") {
  std::stringstream ss;
  ss << "[keywords]\nmax_keywords = many\n";
  CHECK_THROWS_AS(parse_config(ss), ConfigError);
}

TEST_CASE("config validation catches inconsistent thresholds") {
  std::stringstream ss;
  ss << "[filter]\nsigma_minus = 0.9\nsigma = 0.2\n";
  const PipelineConfig cfg = parse_config(ss);
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("missing config file raises IoError") {
  CHECK_THROWS_AS(load_config_file("/nonexistent/config.ini"), IoError);
}
