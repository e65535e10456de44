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

#ifndef SCHEMADST_ENCODER_TOKENIZER_H_
#define SCHEMADST_ENCODER_TOKENIZER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "schemadst/common/error.h"

namespace schemadst::encoder {

// Token list with special tokens first, in the fixed order
// [PAD], [UNK], [CLS], [SEP]. Continuation pieces carry a "##" prefix.
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kCls = 2;
  static constexpr int kSep = 3;

  Vocabulary();
  explicit Vocabulary(std::vector<std::string> tokens);

  // Specials, then every character seen (plain and "##"-prefixed), then the
  // `max_words` most frequent lower-cased words (ties broken
  // lexicographically).
  static Vocabulary build(const std::vector<std::string>& texts,
                          std::size_t max_words);
  // One token per line; line number is the id.
  static Vocabulary load(const std::filesystem::path& file);
  void save(const std::filesystem::path& file) const;

  // -1 when absent.
  int id(std::string_view token) const;
  const std::string& token(int id) const { return tokens_.at(id); }
  std::size_t size() const { return tokens_.size(); }
  std::uint64_t fingerprint() const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

struct Token {
  int id = Vocabulary::kUnk;
  int start = 0;  // byte offsets into the tokenized text, end exclusive
  int end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

// Lower-cases ASCII, splits on whitespace and ASCII punctuation, then splits
// each word greedily into the longest vocabulary pieces. A word that cannot
// be covered becomes a single [UNK] spanning the whole word.
class Tokenizer {
 public:
  explicit Tokenizer(Vocabulary vocab) : vocab_(std::move(vocab)) {}

  std::vector<Token> tokenize(std::string_view text) const;
  const Vocabulary& vocab() const { return vocab_; }

 private:
  Vocabulary vocab_;
};

// Whitespace/punctuation pre-split used by both the vocabulary builder and
// the tokenizer: (start, end) byte ranges of words.
std::vector<std::pair<int, int>> split_words(std::string_view text);

enum class Segment : std::uint8_t { kSpecial, kFirst, kSecond };

struct TokenOrigin {
  Segment segment = Segment::kSpecial;
  int start = 0;  // byte offsets into the segment's own text
  int end = 0;

  friend bool operator==(const TokenOrigin&, const TokenOrigin&) = default;
};

// Half-open range of token positions.
struct TokenRange {
  int begin = 0;
  int end = 0;

  bool contains(int i) const { return i >= begin && i < end; }
  int size() const { return end - begin; }
  friend bool operator==(const TokenRange&, const TokenRange&) = default;
};

// [CLS] first [SEP] second [SEP] with segment ids 0 for [CLS] and the first
// sequence (plus its [SEP]) and 1 for the second sequence and final [SEP].
struct PairInput {
  std::vector<int> ids;
  std::vector<int> segment_ids;
  std::vector<TokenOrigin> origins;
  TokenRange first;
  TokenRange second;
  int dropped_first_tokens = 0;

  std::size_t size() const { return ids.size(); }
};

class InputTooLongError : public Error {
 public:
  using Error::Error;
};

// Over-long inputs lose their oldest (leading) first-sequence tokens; the
// second sequence is never cut. Throws InputTooLongError when the second
// sequence alone does not fit.
PairInput build_pair_input(const Tokenizer& tokenizer, std::string_view first,
                           std::string_view second, int max_seq_len);

std::vector<std::string> token_strings(const PairInput& input,
                                       const Vocabulary& vocab);

struct TokenSpan {
  int start = 0;  // inclusive token positions
  int end = 0;
  bool lossy = false;  // covering tokens extend beyond the character span

  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

// Smallest interval of tokens inside `range` covering [start_char, end_char)
// of the second sequence; nullopt when no token overlaps it.
std::optional<TokenSpan> char_span_to_token_span(
    const std::vector<TokenOrigin>& origins, int start_char, int end_char,
    TokenRange range);

// Text covered by tokens [start, end] when both lie in the same segment.
std::optional<std::string> token_span_text(const PairInput& input, int start,
                                           int end, std::string_view first,
                                           std::string_view second);

}  // namespace schemadst::encoder

#endif  // SCHEMADST_ENCODER_TOKENIZER_H_
