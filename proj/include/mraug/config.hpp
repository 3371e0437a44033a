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

#ifndef MRAUG_CONFIG_HPP_
#define MRAUG_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "mraug/filter.hpp"
#include "mraug/metrics.hpp"
#include "mraug/pool.hpp"

namespace mraug {

// Shared configuration of every pipeline stage. Loadable from a
// line-oriented `key = value` file with one `[section]` per stage; unknown
// keys are rejected. Command-line flags override file values.
struct PipelineConfig {
  // [paths]
  std::string in_pairs;     // in-domain MR-to-Text pairs
  std::string pool;         // open-domain utterances, one per line
  std::string out_dir = ".";
  std::string test_pairs;   // optional test set for intrinsic metrics
  std::string train_pairs;  // stats input
  std::string hyp_pairs;    // evaluation inputs
  std::string ref_pairs;
  std::string aug_pairs;

  // [keywords]
  int n_min = 1;
  int n_max = 3;
  std::size_t max_keywords = 500;
  double min_score = 0.0;

  // [retrieval]
  std::size_t pool_min_len = 2;
  std::size_t pool_max_len = 40;
  std::string save_index;  // optional index file to write after ingest
  std::string load_index;  // optional index file to read instead of the pool

  // [filter]
  FilterConfig filter;     // rng_seed is derived from `seed` at run time
  std::string scorer_cmd;  // optional external scorer command

  // [nlu]
  std::string intent_cmd;  // optional external intent command

  // [metrics]
  LmOptions lm;
  std::string metric_select;  // comma list; empty means all applicable

  // [split]
  std::size_t split_groups = 50;

  // [global]
  std::uint64_t seed = 0;
  bool verbose = false;

  PoolOptions pool_options() const {
    return PoolOptions{pool_min_len, pool_max_len, n_min, n_max};
  }

  void validate() const;
};

PipelineConfig parse_config(std::istream& in, std::string_view name = "<config>");
PipelineConfig load_config_file(const std::filesystem::path& path);

}  // namespace mraug

#endif  // MRAUG_CONFIG_HPP_
