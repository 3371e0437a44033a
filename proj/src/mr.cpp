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

#include "mraug/mr.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mraug/error.hpp"
#include "mraug/text.hpp"

namespace mraug {

namespace {

constexpr std::string_view kPairSeparator = " & ";

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return s.substr(b, e - b);
}

// Offset of the first non-space character of `s` within the original text.
std::size_t trimmed_offset(std::string_view text, std::size_t chunk_begin,
                           std::string_view chunk) {
  std::size_t b = 0;
  while (b < chunk.size() && is_space(chunk[b])) ++b;
  (void)text;
  return chunk_begin + b;
}

bool is_none_sentinel(std::string_view s) {
  return lowercase_ascii(s) == "none";
}

void parse_pair(std::string_view text, std::size_t chunk_begin, std::string_view chunk,
                DialogAct& act) {
  const std::string_view body = trim(chunk);
  if (body.empty()) {
    throw SyntaxError("empty slot-value pair", trimmed_offset(text, chunk_begin, chunk));
  }
  if (is_none_sentinel(body)) return;  // slot-less act marker, adds nothing

  const std::size_t eq = chunk.find('=');
  if (eq == std::string_view::npos) {
    throw SyntaxError("missing '=' in slot-value pair",
                      trimmed_offset(text, chunk_begin, chunk));
  }
  const std::string_view raw_key = trim(chunk.substr(0, eq));
  if (raw_key.empty()) {
    throw SyntaxError("empty slot key", trimmed_offset(text, chunk_begin, chunk));
  }
  if (raw_key.find('(') != std::string_view::npos) {
    throw SyntaxError("unexpected '(' in slot key",
                      chunk_begin + chunk.find('('));
  }
  SlotValuePair pair;
  pair.key = lowercase_ascii(raw_key);
  pair.value = std::string(trim(chunk.substr(eq + 1)));
  act.slots.push_back(std::move(pair));
}

}  // namespace

MeaningRepresentation parse_mr(std::string_view text) {
  if (trim(text).empty()) throw SyntaxError("empty input", 0);

  MeaningRepresentation mr;
  std::size_t pos = 0;
  while (true) {
    // Intent runs up to the next '('.
    const std::size_t lparen = text.find('(', pos);
    if (lparen == std::string_view::npos) {
      throw SyntaxError("expected '(' after intent", text.size());
    }
    const std::string_view raw_intent = trim(text.substr(pos, lparen - pos));
    if (raw_intent.empty()) {
      throw SyntaxError("empty intent", trimmed_offset(text, pos, text.substr(pos, lparen - pos)));
    }
    if (const std::size_t bad = raw_intent.find_first_of(");="); bad != std::string_view::npos) {
      throw SyntaxError("unbalanced parentheses or stray separator before '('",
                        pos + text.substr(pos, lparen - pos).find(raw_intent[bad]));
    }
    for (const char c : raw_intent) {
      if (is_space(c) || c == '@') {
        // an intent is one token; '@' only separates acts after a ')'
        throw SyntaxError("malformed intent before '('",
                          trimmed_offset(text, pos, text.substr(pos, lparen - pos)));
      }
    }
    DialogAct act;
    act.intent = lowercase_ascii(raw_intent);

    // Slot-value pairs separated by ';' up to the matching ')'.
    std::size_t cursor = lparen + 1;
    while (true) {
      const std::size_t stop = text.find_first_of(";)", cursor);
      if (stop == std::string_view::npos) {
        throw SyntaxError("unbalanced parentheses", lparen);
      }
      const std::string_view chunk = text.substr(cursor, stop - cursor);
      if (text[stop] == ')') {
        if (!trim(chunk).empty() || !act.slots.empty()) {
          parse_pair(text, cursor, chunk, act);
        }
        cursor = stop + 1;
        break;
      }
      parse_pair(text, cursor, chunk, act);
      cursor = stop + 1;
    }
    mr.acts.push_back(std::move(act));

    // After an act: end of input or an '@' separator before the next act.
    std::size_t after = cursor;
    while (after < text.size() && is_space(text[after])) ++after;
    if (after == text.size()) break;
    if (text[after] != '@') {
      throw SyntaxError("expected '@' between acts or end of input", after);
    }
    pos = after + 1;
  }
  return mr;
}

std::string serialize_mr(const MeaningRepresentation& mr) {
  std::string out;
  for (std::size_t i = 0; i < mr.acts.size(); ++i) {
    if (i > 0) out += " @ ";
    const DialogAct& act = mr.acts[i];
    out += act.intent;
    out.push_back('(');
    if (act.slots.empty()) {
      out += "none";
    } else {
      for (std::size_t j = 0; j < act.slots.size(); ++j) {
        if (j > 0) out.push_back(';');
        out += act.slots[j].key;
        out.push_back('=');
        out += act.slots[j].value;
      }
    }
    out.push_back(')');
  }
  return out;
}

DelexMR delexicalize(const MeaningRepresentation& mr) {
  DelexMR delex;
  delex.acts.reserve(mr.acts.size());
  for (const DialogAct& act : mr.acts) {
    DelexMR::Act shape;
    shape.intent = act.intent;
    shape.keys.reserve(act.slots.size());
    for (const SlotValuePair& slot : act.slots) shape.keys.push_back(slot.key);
    std::sort(shape.keys.begin(), shape.keys.end());
    delex.acts.push_back(std::move(shape));
  }
  return delex;
}

std::string DelexMR::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < acts.size(); ++i) {
    if (i > 0) out += " @ ";
    out += acts[i].intent;
    out.push_back('(');
    if (acts[i].keys.empty()) {
      out += "none";
    } else {
      for (std::size_t j = 0; j < acts[i].keys.size(); ++j) {
        if (j > 0) out.push_back(';');
        out += acts[i].keys[j];
      }
    }
    out.push_back(')');
  }
  return out;
}

DelexMR DelexMR::parse(std::string_view text) {
  DelexMR delex;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t lparen = text.find('(', pos);
    if (lparen == std::string_view::npos) {
      throw SyntaxError("expected '(' in delexicalized form", text.size());
    }
    DelexMR::Act act;
    act.intent = lowercase_ascii(trim(text.substr(pos, lparen - pos)));
    if (act.intent.empty()) throw SyntaxError("empty intent", pos);
    const std::size_t rparen = text.find(')', lparen);
    if (rparen == std::string_view::npos) {
      throw SyntaxError("unbalanced parentheses", lparen);
    }
    std::string_view body = trim(text.substr(lparen + 1, rparen - lparen - 1));
    if (!body.empty() && !is_none_sentinel(body)) {
      std::size_t start = 0;
      while (start <= body.size()) {
        const std::size_t semi = body.find(';', start);
        const std::string_view key =
            trim(body.substr(start, semi == std::string_view::npos ? semi : semi - start));
        if (!key.empty()) act.keys.push_back(lowercase_ascii(key));
        if (semi == std::string_view::npos) break;
        start = semi + 1;
      }
    }
    std::sort(act.keys.begin(), act.keys.end());
    delex.acts.push_back(std::move(act));

    std::size_t after = rparen + 1;
    while (after < text.size() && is_space(text[after])) ++after;
    if (after == text.size()) break;
    if (text[after] != '@') {
      throw SyntaxError("expected '@' between acts", after);
    }
    pos = after + 1;
  }
  if (delex.acts.empty()) throw SyntaxError("empty input", 0);
  return delex;
}

std::string delexicalize_utterance(const UtterancePair& pair) {
  struct Replacement {
    std::string value_lower;
    std::string key;
  };
  std::vector<Replacement> replacements;
  for (const DialogAct& act : pair.mr.acts) {
    for (const SlotValuePair& slot : act.slots) {
      if (slot.value.empty()) continue;
      replacements.push_back({lowercase_ascii(slot.value), slot.key});
    }
  }
  // Longest value first resolves nested values deterministically; remaining
  // ties break on the value text, then the key.
  std::sort(replacements.begin(), replacements.end(),
            [](const Replacement& a, const Replacement& b) {
              if (a.value_lower.size() != b.value_lower.size()) {
                return a.value_lower.size() > b.value_lower.size();
              }
              if (a.value_lower != b.value_lower) return a.value_lower < b.value_lower;
              return a.key < b.key;
            });

  const std::string haystack = lowercase_ascii(pair.utterance);
  struct Claim {
    std::size_t begin;
    std::size_t end;
    std::string placeholder;
  };
  std::vector<Claim> claims;
  auto overlaps = [&](std::size_t b, std::size_t e) {
    for (const Claim& c : claims) {
      if (b < c.end && c.begin < e) return true;
    }
    return false;
  };

  for (const Replacement& r : replacements) {
    std::size_t from = 0;
    while (true) {
      const std::size_t at = haystack.find(r.value_lower, from);
      if (at == std::string::npos) break;
      const std::size_t end = at + r.value_lower.size();
      if (!overlaps(at, end)) {
        std::string placeholder = "[";
        for (char c : r.key) {
          placeholder.push_back(
              static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        }
        placeholder.push_back(']');
        claims.push_back({at, end, std::move(placeholder)});
        from = end;
      } else {
        from = at + 1;
      }
    }
  }

  std::sort(claims.begin(), claims.end(),
            [](const Claim& a, const Claim& b) { return a.begin < b.begin; });
  std::string out;
  std::size_t cursor = 0;
  for (const Claim& c : claims) {
    out += pair.utterance.substr(cursor, c.begin - cursor);
    out += c.placeholder;
    cursor = c.end;
  }
  out += pair.utterance.substr(cursor);
  return out;
}

std::vector<UtterancePair> read_pairs(std::istream& in, std::string_view name) {
  std::vector<UtterancePair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const std::size_t sep = line.find(kPairSeparator);
    if (sep == std::string::npos) {
      throw SyntaxError(std::string(name) + ":" + std::to_string(line_no) +
                            ": missing ' & ' separator",
                        0);
    }
    UtterancePair pair;
    try {
      pair.mr = parse_mr(std::string_view(line).substr(0, sep));
    } catch (const SyntaxError& e) {
      throw SyntaxError(std::string(name) + ":" + std::to_string(line_no) + ": " + e.what(),
                        e.offset());
    }
    pair.utterance = std::string(trim(std::string_view(line).substr(sep + kPairSeparator.size())));
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<UtterancePair> read_pairs_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open pairs file: " + path.string());
  return read_pairs(in, path.string());
}

void write_pairs(std::ostream& out, std::span<const UtterancePair> pairs) {
  for (const UtterancePair& pair : pairs) {
    const std::string mr_text = serialize_mr(pair.mr);
    if (mr_text.find(kPairSeparator) != std::string::npos) {
      throw Error("pairs format cannot represent an MR containing ' & ': " + mr_text);
    }
    out << mr_text << kPairSeparator << pair.utterance << '\n';
  }
}

void write_pairs_file(const std::filesystem::path& path, std::span<const UtterancePair> pairs) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write pairs file: " + path.string());
  write_pairs(out, pairs);
}

}  // namespace mraug
