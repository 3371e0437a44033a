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

#include "mraug/text.hpp"

#include <algorithm>
#include <cctype>

#include "mraug/error.hpp"

namespace mraug {

namespace {

bool is_detached_punct(char c) {
  switch (c) {
    case '.':
    case ',':
    case '!':
    case '?':
    case ';':
    case ':':
    case '(':
    case ')':
    case '"':
      return true;
    default:
      return false;
  }
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

char to_lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

}  // namespace

std::string lowercase_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), to_lower);
  return out;
}

std::string TokenSequence::source_span(std::size_t begin, std::size_t end) const {
  if (begin >= end || end > spans.size()) return {};
  const std::uint32_t from = spans[begin].first;
  const std::uint32_t to = spans[end - 1].second;
  return source.substr(from, to - from);
}

TokenSequence tokenize(std::string_view text) {
  TokenSequence seq;
  seq.source.assign(text);

  std::string current;
  std::uint32_t current_begin = 0;
  auto flush = [&](std::uint32_t end) {
    if (!current.empty()) {
      seq.tokens.push_back(std::move(current));
      seq.spans.emplace_back(current_begin, end);
      current.clear();
    }
  };

  for (std::uint32_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (is_space(c)) {
      flush(i);
    } else if (is_detached_punct(c)) {
      flush(i);
      seq.tokens.emplace_back(1, c);
      seq.spans.emplace_back(i, i + 1);
    } else {
      if (current.empty()) current_begin = i;
      current.push_back(to_lower(c));
    }
  }
  flush(static_cast<std::uint32_t>(text.size()));
  return seq;
}

int NGram::order() const {
  if (text.empty()) return 0;
  return static_cast<int>(std::count(text.begin(), text.end(), ' ')) + 1;
}

std::vector<std::string> NGram::tokens() const {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t pos = text.find(' ', start);
    if (pos == std::string::npos) {
      out.push_back(text.substr(start));
      break;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

NGram NGram::from_tokens(std::span<const std::string> tokens, std::size_t begin,
                         std::size_t n) {
  std::string joined;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) joined.push_back(' ');
    joined += tokens[begin + i];
  }
  return NGram{std::move(joined)};
}

std::vector<NGram> ngrams(const TokenSequence& seq, int n_min, int n_max) {
  if (n_min < 1 || n_min > n_max) {
    throw Error("invalid n-gram range [" + std::to_string(n_min) + ", " +
                std::to_string(n_max) + "]");
  }
  std::vector<NGram> out;
  for (int n = n_min; n <= n_max; ++n) {
    if (seq.size() < static_cast<std::size_t>(n)) continue;
    for (std::size_t i = 0; i + n <= seq.size(); ++i) {
      out.push_back(NGram::from_tokens(seq.tokens, i, static_cast<std::size_t>(n)));
    }
  }
  return out;
}

void for_each_ngram(std::span<const std::string> tokens, int n_min, int n_max,
                    const std::function<void(std::string_view)>& fn) {
  if (n_min < 1 || n_min > n_max) {
    throw Error("invalid n-gram range [" + std::to_string(n_min) + ", " +
                std::to_string(n_max) + "]");
  }
  std::string buf;
  for (int n = n_min; n <= n_max; ++n) {
    if (tokens.size() < static_cast<std::size_t>(n)) continue;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      buf.clear();
      for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
        if (j > 0) buf.push_back(' ');
        buf += tokens[i + j];
      }
      fn(buf);
    }
  }
}

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t len;
    std::uint32_t min_cp;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      len = 2;
      min_cp = 0x80;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
      min_cp = 0x800;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      min_cp = 0x10000;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t j = 1; j < len; ++j) {
      const unsigned char cc = static_cast<unsigned char>(s[i + j]);
      if ((cc & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3f);
    }
    if (cp < min_cp) return false;                  // overlong encoding
    if (cp > 0x10ffff) return false;                // beyond Unicode range
    if (cp >= 0xd800 && cp <= 0xdfff) return false; // surrogate half
    i += len;
  }
  return true;
}

}  // namespace mraug
