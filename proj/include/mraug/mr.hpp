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

#ifndef MRAUG_MR_HPP_
#define MRAUG_MR_HPP_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mraug {

// One slot of a dialog act. Keys are lowercase tokens without parentheses,
// semicolons, or '='; values keep their original casing (phone numbers and
// proper names stay as written).
struct SlotValuePair {
  std::string key;
  std::string value;

  bool operator==(const SlotValuePair&) const = default;
};

// An intent plus its ordered slot-value pairs. Keys may repeat within one
// act (multi-valued slots); parse order is preserved exactly.
struct DialogAct {
  std::string intent;
  std::vector<SlotValuePair> slots;

  bool operator==(const DialogAct&) const = default;
};

// One or more dialog acts. Compound representations join acts with " @ ".
struct MeaningRepresentation {
  std::vector<DialogAct> acts;

  bool operator==(const MeaningRepresentation&) const = default;
};

// Value-free shape of a meaning representation, used to group paraphrase
// families. Act order is preserved; slot keys within an act are sorted so
// that representations differing only in slot order compare equal.
struct DelexMR {
  struct Act {
    std::string intent;
    std::vector<std::string> keys;  // sorted

    bool operator==(const Act&) const = default;
    auto operator<=>(const Act&) const = default;
  };
  std::vector<Act> acts;

  bool operator==(const DelexMR&) const = default;
  auto operator<=>(const DelexMR&) const = default;

  std::string to_string() const;
  static DelexMR parse(std::string_view text);
};

// An MR joined with a natural-language utterance; the unit of every dataset
// this project reads or writes.
struct UtterancePair {
  MeaningRepresentation mr;
  std::string utterance;

  bool operator==(const UtterancePair&) const = default;
};

// Grammar: act ("@" act)*, act = intent "(" [pairs] ")",
// pairs = pair (";" pair)*, pair = key "=" value | "none".
// Whitespace is tolerated around every token. Intents and keys are
// lowercased; values are stripped of surrounding whitespace but otherwise
// verbatim. Throws SyntaxError (with byte offset) on unbalanced
// parentheses, an empty intent, a missing '=' in a non-"none" pair, or
// empty input.
MeaningRepresentation parse_mr(std::string_view text);

// Canonical form: `intent(k1=v1;k2=v2)`, acts joined by " @ ", slot-less
// acts written `intent(none)`. parse_mr(serialize_mr(mr)) == mr.
std::string serialize_mr(const MeaningRepresentation& mr);

DelexMR delexicalize(const MeaningRepresentation& mr);

// Replaces every occurrence of every slot value in the utterance with the
// `[KEY]` placeholder of its slot. Matching is case-insensitive,
// longest-value-first, non-overlapping, left to right. Values absent from
// the utterance cause no change.
std::string delexicalize_utterance(const UtterancePair& pair);

// Pairs file: one `<canonical MR> & <utterance>` per line, `#` comments.
std::vector<UtterancePair> read_pairs(std::istream& in, std::string_view name = "<stream>");
std::vector<UtterancePair> read_pairs_file(const std::filesystem::path& path);
void write_pairs(std::ostream& out, std::span<const UtterancePair> pairs);
void write_pairs_file(const std::filesystem::path& path, std::span<const UtterancePair> pairs);

}  // namespace mraug

#endif  // MRAUG_MR_HPP_
