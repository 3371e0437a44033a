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

#include "mraug/config.hpp"

#include <cctype>
#include <fstream>
#include <istream>

#include "mraug/error.hpp"

namespace mraug {

namespace {

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])) != 0) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])) != 0) --e;
  return s.substr(b, e - b);
}

std::uint64_t parse_count(std::string_view value, const std::string& where) {
  try {
    std::size_t used = 0;
    const std::string s(value);
    const std::uint64_t v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected a non-negative integer, got '" +
                      std::string(value) + "'");
  }
}

double parse_real(std::string_view value, const std::string& where) {
  try {
    std::size_t used = 0;
    const std::string s(value);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": expected a number, got '" + std::string(value) + "'");
  }
}

bool parse_bool(std::string_view value, const std::string& where) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(where + ": expected true/false, got '" + std::string(value) + "'");
}

void apply(PipelineConfig& cfg, const std::string& section, std::string_view key,
           std::string_view value, const std::string& where) {
  const std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);

  if (full == "paths.in_pairs") cfg.in_pairs = value;
  else if (full == "paths.pool") cfg.pool = value;
  else if (full == "paths.out_dir") cfg.out_dir = value;
  else if (full == "paths.test_pairs") cfg.test_pairs = value;
  else if (full == "paths.train_pairs") cfg.train_pairs = value;
  else if (full == "paths.hyp_pairs") cfg.hyp_pairs = value;
  else if (full == "paths.ref_pairs") cfg.ref_pairs = value;
  else if (full == "paths.aug_pairs") cfg.aug_pairs = value;
  else if (full == "keywords.n_min") cfg.n_min = static_cast<int>(parse_count(value, where));
  else if (full == "keywords.n_max") cfg.n_max = static_cast<int>(parse_count(value, where));
  else if (full == "keywords.max_keywords") cfg.max_keywords = parse_count(value, where);
  else if (full == "keywords.min_score") cfg.min_score = parse_real(value, where);
  else if (full == "retrieval.min_len") cfg.pool_min_len = parse_count(value, where);
  else if (full == "retrieval.max_len") cfg.pool_max_len = parse_count(value, where);
  else if (full == "retrieval.save_index") cfg.save_index = value;
  else if (full == "retrieval.load_index") cfg.load_index = value;
  else if (full == "filter.sigma_plus") cfg.filter.sigma_plus = parse_real(value, where);
  else if (full == "filter.sigma_minus") cfg.filter.sigma_minus = parse_real(value, where);
  else if (full == "filter.sigma") cfg.filter.sigma = parse_real(value, where);
  else if (full == "filter.lambda1") cfg.filter.lambda1 = parse_real(value, where);
  else if (full == "filter.lambda2") cfg.filter.lambda2 = parse_real(value, where);
  else if (full == "filter.delta") cfg.filter.delta = parse_count(value, where);
  else if (full == "filter.max_iters") cfg.filter.max_iters = parse_count(value, where);
  else if (full == "filter.scorer_cmd") cfg.scorer_cmd = value;
  else if (full == "nlu.intent_cmd") cfg.intent_cmd = value;
  else if (full == "metrics.lm_order") cfg.lm.order = static_cast<int>(parse_count(value, where));
  else if (full == "metrics.lm_k") cfg.lm.k = parse_real(value, where);
  else if (full == "metrics.select") cfg.metric_select = value;
  else if (full == "split.groups") cfg.split_groups = parse_count(value, where);
  else if (full == "global.seed") cfg.seed = parse_count(value, where);
  else if (full == "global.verbose") cfg.verbose = parse_bool(value, where);
  else throw ConfigError(where + ": unknown config key '" + full + "'");
}

}  // namespace

void PipelineConfig::validate() const {
  if (n_min < 1 || n_min > n_max) {
    throw ConfigError("keywords.n_min/n_max must satisfy 1 <= n_min <= n_max");
  }
  if (pool_min_len > pool_max_len) {
    throw ConfigError("retrieval.min_len must not exceed retrieval.max_len");
  }
  filter.validate();
  if (lm.order < 1) throw ConfigError("metrics.lm_order must be at least 1");
  if (lm.k <= 0.0) throw ConfigError("metrics.lm_k must be positive");
  if (split_groups == 0) throw ConfigError("split.groups must be positive");
}

PipelineConfig parse_config(std::istream& in, std::string_view name) {
  PipelineConfig cfg;
  std::string line;
  std::string section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const std::string where = std::string(name) + ":" + std::to_string(line_no);
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = std::string(trim(body.substr(1, body.size() - 2)));
      continue;
    }
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + ": expected 'key = value'");
    }
    const std::string_view key = trim(body.substr(0, eq));
    const std::string_view value = trim(body.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    apply(cfg, section, key, value, where);
  }
  return cfg;
}

PipelineConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  return parse_config(in, path.string());
}

}  // namespace mraug
