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

#ifndef MRAUG_PIPELINE_HPP_
#define MRAUG_PIPELINE_HPP_

#include <cstdint>
#include <string>

#include "mraug/config.hpp"

namespace mraug {

// Stage entry points shared by the command-line tool and the tests. Each
// stage reads its inputs and writes its outputs under cfg.out_dir, so
// running the stages one by one is byte-identical to cmd_augment:
//
//   extract-keywords   in_pairs + pool            -> keywords.tsv
//   retrieve           keywords.tsv + pool        -> candidates.tsv
//   filter             candidates.tsv + pool      -> filtered.txt, filter_report.txt
//   annotate           filtered.txt + in_pairs    -> augmented.txt
//   augment            all of the above           -> all of the above (+ metrics.txt)
//   split              in_pairs                   -> train.txt, test.txt
//   stats              train_pairs + test_pairs   -> stats.txt
//   evaluate           hyp/ref/aug/test pairs     -> report.txt
//
// All randomness comes from per-stage seeds derived from cfg.seed, so
// re-running one stage never shifts the randomness of another. Errors are
// thrown; the CLI wraps them with the failing stage's name.
void cmd_extract_keywords(const PipelineConfig& cfg);
void cmd_retrieve(const PipelineConfig& cfg);
void cmd_filter(const PipelineConfig& cfg);
void cmd_annotate(const PipelineConfig& cfg);
void cmd_augment(const PipelineConfig& cfg);
void cmd_split(const PipelineConfig& cfg);
void cmd_stats(const PipelineConfig& cfg);
void cmd_evaluate(const PipelineConfig& cfg);

// Output file names within cfg.out_dir.
namespace outputs {
inline constexpr const char* kKeywords = "keywords.tsv";
inline constexpr const char* kCandidates = "candidates.tsv";
inline constexpr const char* kFiltered = "filtered.txt";
inline constexpr const char* kFilterReport = "filter_report.txt";
inline constexpr const char* kAugmented = "augmented.txt";
inline constexpr const char* kMetrics = "metrics.txt";
inline constexpr const char* kTrain = "train.txt";
inline constexpr const char* kTest = "test.txt";
inline constexpr const char* kStats = "stats.txt";
inline constexpr const char* kReport = "report.txt";
}  // namespace outputs

}  // namespace mraug

#endif  // MRAUG_PIPELINE_HPP_
