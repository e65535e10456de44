// Copyright 2026 The schemadst Authors.
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

#include "schemadst/encoder/tokenizer.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>

#include "schemadst/common/hash.h"

namespace schemadst::encoder {
namespace {

constexpr const char* kSpecials[] = {"[PAD]", "[UNK]", "[CLS]", "[SEP]"};
constexpr std::size_t kMaxWordBytes = 100;

bool is_space(unsigned char c) { return std::isspace(c) != 0; }
bool is_punct(unsigned char c) { return c < 0x80 && std::ispunct(c) != 0; }

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

// Byte length of the UTF-8 sequence starting with `lead`.
int utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

std::vector<int> char_boundaries(std::string_view word) {
  std::vector<int> b;
  std::size_t i = 0;
  while (i < word.size()) {
    b.push_back(static_cast<int>(i));
    i += utf8_length(static_cast<unsigned char>(word[i]));
  }
  b.push_back(static_cast<int>(std::min(i, word.size())));
  return b;
}

}  // namespace

Vocabulary::Vocabulary() : Vocabulary(std::vector<std::string>{}) {}

Vocabulary::Vocabulary(std::vector<std::string> tokens) {
  for (const char* s : kSpecials) {
    ids_.emplace(s, static_cast<int>(tokens_.size()));
    tokens_.emplace_back(s);
  }
  for (auto& t : tokens) {
    if (t.empty()) continue;
    if (ids_.emplace(t, static_cast<int>(tokens_.size())).second) {
      tokens_.push_back(std::move(t));
    }
  }
}

Vocabulary Vocabulary::build(const std::vector<std::string>& texts,
                             std::size_t max_words) {
  std::map<std::string, long> counts;
  std::vector<std::string> chars;
  std::vector<std::string> cont;
  for (const auto& text : texts) {
    for (auto [s, e] : split_words(text)) {
      const std::string w = lower(std::string_view(text).substr(s, e - s));
      ++counts[w];
      const auto b = char_boundaries(w);
      for (std::size_t k = 0; k + 1 < b.size(); ++k) {
        std::string c = w.substr(b[k], b[k + 1] - b[k]);
        chars.push_back(c);
        cont.push_back("##" + c);
      }
    }
  }
  auto dedupe = [](std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(chars);
  dedupe(cont);
  std::vector<std::pair<std::string, long>> words(counts.begin(), counts.end());
  std::stable_sort(words.begin(), words.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  std::vector<std::string> tokens = chars;
  tokens.insert(tokens.end(), cont.begin(), cont.end());
  for (std::size_t i = 0; i < words.size() && i < max_words; ++i) {
    tokens.push_back(words[i].first);
  }
  return Vocabulary(std::move(tokens));
}

Vocabulary Vocabulary::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError(file.string(), "<file>", "cannot open");
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.push_back(line);
  }
  for (std::size_t i = 0; i < std::size(kSpecials); ++i) {
    if (i >= tokens.size() || tokens[i] != kSpecials[i]) {
      throw ParseError(file.string(), "line " + std::to_string(i + 1),
                       std::string("expected special token ") + kSpecials[i]);
    }
  }
  Vocabulary v(std::vector<std::string>(tokens.begin() + std::size(kSpecials),
                                        tokens.end()));
  if (v.size() != tokens.size()) {
    throw ParseError(file.string(), "<tokens>", "duplicate or empty tokens");
  }
  return v;
}

void Vocabulary::save(const std::filesystem::path& file) const {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file);
  if (!out) throw Error("cannot write " + file.string());
  for (const auto& t : tokens_) out << t << '\n';
}

int Vocabulary::id(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  return it == ids_.end() ? -1 : it->second;
}

std::uint64_t Vocabulary::fingerprint() const {
  Fnv1a h;
  for (const auto& t : tokens_) h.update(t).update("\n", 1);
  return h.digest();
}

std::vector<std::pair<int, int>> split_words(std::string_view text) {
  std::vector<std::pair<int, int>> out;
  int start = -1;
  for (int i = 0; i < static_cast<int>(text.size()); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (is_space(c) || is_punct(c)) {
      if (start >= 0) out.emplace_back(start, i);
      start = -1;
      if (is_punct(c)) out.emplace_back(i, i + 1);
    } else if (start < 0) {
      start = i;
    }
  }
  if (start >= 0) out.emplace_back(start, static_cast<int>(text.size()));
  return out;
}

std::vector<Token> Tokenizer::tokenize(std::string_view text) const {
  std::vector<Token> out;
  for (auto [ws, we] : split_words(text)) {
    const std::string word = lower(text.substr(ws, we - ws));
    if (word.size() > kMaxWordBytes) {
      out.push_back({Vocabulary::kUnk, ws, we});
      continue;
    }
    const auto bounds = char_boundaries(word);
    std::vector<Token> pieces;
    std::size_t k = 0;
    bool ok = true;
    while (k + 1 < bounds.size()) {
      int found = -1;
      std::size_t found_end = 0;
      for (std::size_t e = bounds.size() - 1; e > k; --e) {
        std::string piece = word.substr(bounds[k], bounds[e] - bounds[k]);
        if (k > 0) piece = "##" + piece;
        const int id = vocab_.id(piece);
        if (id >= 0) {
          found = id;
          found_end = e;
          break;
        }
      }
      if (found < 0) {
        ok = false;
        break;
      }
      pieces.push_back({found, ws + bounds[k], ws + bounds[found_end]});
      k = found_end;
    }
    if (ok) {
      out.insert(out.end(), pieces.begin(), pieces.end());
    } else {
      out.push_back({Vocabulary::kUnk, ws, we});
    }
  }
  return out;
}

PairInput build_pair_input(const Tokenizer& tokenizer, std::string_view first,
                           std::string_view second, int max_seq_len) {
  std::vector<Token> a = tokenizer.tokenize(first);
  const std::vector<Token> b = tokenizer.tokenize(second);
  const int fixed = 3 + static_cast<int>(b.size());
  if (fixed > max_seq_len) {
    throw InputTooLongError("second sequence needs " + std::to_string(fixed) +
                            " positions, max_seq_len is " +
                            std::to_string(max_seq_len));
  }
  PairInput in;
  const int room = max_seq_len - fixed;
  if (static_cast<int>(a.size()) > room) {
    in.dropped_first_tokens = static_cast<int>(a.size()) - room;
    a.erase(a.begin(), a.begin() + in.dropped_first_tokens);
  }
  auto push = [&](int id, int segment, TokenOrigin origin) {
    in.ids.push_back(id);
    in.segment_ids.push_back(segment);
    in.origins.push_back(origin);
  };
  push(Vocabulary::kCls, 0, {});
  in.first.begin = static_cast<int>(in.ids.size());
  for (const Token& t : a) push(t.id, 0, {Segment::kFirst, t.start, t.end});
  in.first.end = static_cast<int>(in.ids.size());
  push(Vocabulary::kSep, 0, {});
  in.second.begin = static_cast<int>(in.ids.size());
  for (const Token& t : b) push(t.id, 1, {Segment::kSecond, t.start, t.end});
  in.second.end = static_cast<int>(in.ids.size());
  push(Vocabulary::kSep, 1, {});
  return in;
}

std::vector<std::string> token_strings(const PairInput& input,
                                       const Vocabulary& vocab) {
  std::vector<std::string> out;
  out.reserve(input.ids.size());
  for (int id : input.ids) out.push_back(vocab.token(id));
  return out;
}

std::optional<TokenSpan> char_span_to_token_span(
    const std::vector<TokenOrigin>& origins, int start_char, int end_char,
    TokenRange range) {
  int first = -1, last = -1;
  for (int i = range.begin; i < range.end; ++i) {
    const TokenOrigin& o = origins[i];
    if (o.end <= start_char || o.start >= end_char) continue;
    if (first < 0) first = i;
    last = i;
  }
  if (first < 0) return std::nullopt;
  TokenSpan span{first, last, false};
  span.lossy = origins[first].start != start_char || origins[last].end != end_char;
  return span;
}

std::optional<std::string> token_span_text(const PairInput& input, int start,
                                           int end, std::string_view first,
                                           std::string_view second) {
  if (start < 0 || end < start || end >= static_cast<int>(input.size())) {
    return std::nullopt;
  }
  const TokenOrigin& a = input.origins[start];
  const TokenOrigin& b = input.origins[end];
  if (a.segment == Segment::kSpecial || a.segment != b.segment) return std::nullopt;
  const std::string_view text = a.segment == Segment::kFirst ? first : second;
  return std::string(text.substr(a.start, b.end - a.start));
}

}  // namespace schemadst::encoder
