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

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "schemadst/encoder/tokenizer.h"
#include "schemadst/encoder/transformer.h"
#include "schemadst/tensor/grad_check.h"
#include "schemadst/tensor/ops.h"

namespace schemadst::encoder {
namespace {

Tokenizer small_tokenizer() {
  return Tokenizer(Vocabulary({"play", "##ing", "##s", "the", "game", "a", "b",
                               "c", "d", "e", "x", "y", "?", ",", "new",
                               "york", "##er"}));
}

std::vector<std::string> pieces(const Tokenizer& tok, std::string_view text) {
  std::vector<std::string> out;
  for (const auto& t : tok.tokenize(text)) out.push_back(tok.vocab().token(t.id));
  return out;
}

TEST(Vocabulary, SpecialsComeFirst) {
  const Vocabulary v({"hello"});
  EXPECT_EQ(v.token(Vocabulary::kPad), "[PAD]");
  EXPECT_EQ(v.token(Vocabulary::kUnk), "[UNK]");
  EXPECT_EQ(v.token(Vocabulary::kCls), "[CLS]");
  EXPECT_EQ(v.token(Vocabulary::kSep), "[SEP]");
  EXPECT_EQ(v.id("hello"), 4);
  EXPECT_EQ(v.id("absent"), -1);
}

TEST(Vocabulary, BuildKeepsMostFrequentWordsAndAllCharacters) {
  const auto v = Vocabulary::build({"b a a", "c c c a"}, 2);
  EXPECT_GE(v.id("a"), 0);
  EXPECT_GE(v.id("c"), 0);
  EXPECT_GE(v.id("##b"), 0);
  EXPECT_GE(v.id("b"), 0);  // as a character
  const auto words = Vocabulary::build({"zebra zebra apple"}, 1);
  EXPECT_GE(words.id("zebra"), 0);
  EXPECT_EQ(words.id("apple"), -1);
}

TEST(Vocabulary, SaveLoadRoundTrip) {
  const auto v = Vocabulary::build({"find a table for two"}, 10);
  const auto file = std::filesystem::temp_directory_path() / "schemadst_vocab.txt";
  v.save(file);
  const auto back = Vocabulary::load(file);
  ASSERT_EQ(back.size(), v.size());
  EXPECT_EQ(back.fingerprint(), v.fingerprint());
  for (std::size_t i = 0; i < v.size(); ++i)
    EXPECT_EQ(back.token(static_cast<int>(i)), v.token(static_cast<int>(i)));
}

TEST(Tokenizer, GreedyWordPieces) {
  const auto tok = small_tokenizer();
  EXPECT_EQ(pieces(tok, "Playing the games?"),
            (std::vector<std::string>{"play", "##ing", "the", "game", "##s", "?"}));
  const auto toks = tok.tokenize("Playing the");
  EXPECT_EQ(toks[0].start, 0);
  EXPECT_EQ(toks[0].end, 4);
  EXPECT_EQ(toks[1].start, 4);
  EXPECT_EQ(toks[1].end, 7);
  EXPECT_EQ(toks[2].start, 8);
}

TEST(Tokenizer, UncoverableWordIsOneUnk) {
  const auto tok = small_tokenizer();
  const auto toks = tok.tokenize("new yorkzz");
  ASSERT_EQ(toks.size(), 2u);
  EXPECT_EQ(toks[1].id, Vocabulary::kUnk);
  EXPECT_EQ(toks[1].start, 4);
  EXPECT_EQ(toks[1].end, 10);
}

TEST(Tokenizer, SplitsOnPunctuationAndWhitespace) {
  EXPECT_EQ(split_words("a,b  c?"),
            (std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}, {5, 6}, {6, 7}}));
}

TEST(PairInput, LayoutAndSegments) {
  const auto tok = small_tokenizer();
  const auto in = build_pair_input(tok, "a b", "x y", 16);
  EXPECT_EQ(token_strings(in, tok.vocab()),
            (std::vector<std::string>{"[CLS]", "a", "b", "[SEP]", "x", "y", "[SEP]"}));
  EXPECT_EQ(in.segment_ids, (std::vector<int>{0, 0, 0, 0, 1, 1, 1}));
  EXPECT_EQ(in.first, (TokenRange{1, 3}));
  EXPECT_EQ(in.second, (TokenRange{4, 6}));
  EXPECT_EQ(in.origins[5], (TokenOrigin{Segment::kSecond, 2, 3}));
  EXPECT_EQ(in.origins[0].segment, Segment::kSpecial);
  EXPECT_EQ(in.dropped_first_tokens, 0);
}

TEST(PairInput, EmptyFirstSequence) {
  const auto tok = small_tokenizer();
  const auto in = build_pair_input(tok, "", "x", 8);
  EXPECT_EQ(in.size(), 4u);
  EXPECT_EQ(in.first.size(), 0);
}

TEST(PairInput, TruncationDropsOldestFirstTokens) {
  const auto tok = small_tokenizer();
  const auto in = build_pair_input(tok, "a b c d e", "x y", 8);
  EXPECT_EQ(in.size(), 8u);
  EXPECT_EQ(in.dropped_first_tokens, 2);
  EXPECT_EQ(token_strings(in, tok.vocab()),
            (std::vector<std::string>{"[CLS]", "c", "d", "e", "[SEP]", "x", "y", "[SEP]"}));
  EXPECT_EQ(in.origins[1], (TokenOrigin{Segment::kFirst, 4, 5}));
}

TEST(PairInput, SecondSequenceIsNeverCut) {
  const auto tok = small_tokenizer();
  EXPECT_NO_THROW(build_pair_input(tok, "a b", "x y x", 6));
  EXPECT_THROW(build_pair_input(tok, "a", "x y x y", 6), InputTooLongError);
}

TEST(PairInput, CharSpanToTokens) {
  const auto tok = small_tokenizer();
  const std::string second = "playing new york";
  const auto in = build_pair_input(tok, "a", second, 32);
  const auto exact = char_span_to_token_span(in.origins, 8, 16, in.second);
  ASSERT_TRUE(exact);
  EXPECT_EQ(exact->start, in.second.begin + 2);
  EXPECT_EQ(exact->end, in.second.begin + 3);
  EXPECT_FALSE(exact->lossy);
  const auto partial = char_span_to_token_span(in.origins, 2, 5, in.second);
  ASSERT_TRUE(partial);
  EXPECT_EQ(partial->start, in.second.begin);
  EXPECT_EQ(partial->end, in.second.begin + 1);
  EXPECT_TRUE(partial->lossy);
  EXPECT_FALSE(char_span_to_token_span(in.origins, 7, 8, in.second));
  EXPECT_EQ(token_span_text(in, exact->start, exact->end, "a", second), "new york");
  EXPECT_FALSE(token_span_text(in, 1, in.second.begin, "a", second));
}

EncoderConfig tiny_config(int vocab) {
  EncoderConfig c;
  c.vocab_size = vocab;
  c.model_dim = 8;
  c.num_layers = 1;
  c.num_heads = 2;
  c.ffn_dim = 12;
  c.max_seq_len = 16;
  c.init_stddev = 0.3;
  return c;
}

TEST(Transformer, GradientsMatchFiniteDifferences) {
  tensor::ParameterStore store;
  std::mt19937_64 rng(1);
  const auto tok = small_tokenizer();
  TransformerEncoder enc(store, "enc", tiny_config(static_cast<int>(tok.vocab().size())), rng);
  const auto in = build_pair_input(tok, "a b", "x y", 16);
  tensor::GradCheckOptions opts;
  opts.max_elements_per_parameter = 40;
  const auto report = tensor::grad_check(store, [&](tensor::Tape& t) {
    const auto out = enc.forward(t, in);
    tensor::Matrix weights(8, 1);
    for (int i = 0; i < 8; ++i) weights(i, 0) = 0.3 * i - 1.0;
    Var pooled = tensor::matmul(out.tokens, t.constant(weights));
    return tensor::add(tensor::sum(tensor::gelu(pooled)),
                       tensor::cross_entropy(out.cls, {3}));
  }, opts);
  EXPECT_LT(report.max_relative_error, 1e-4) << report.worst_parameter;
}

TEST(Transformer, PaddingDoesNotChangeRealPositions) {
  tensor::ParameterStore store;
  std::mt19937_64 rng(2);
  const auto tok = small_tokenizer();
  TransformerEncoder enc(store, "enc", tiny_config(static_cast<int>(tok.vocab().size())), rng);
  const auto in = build_pair_input(tok, "the game", "a b c", 16);
  const auto plain = encode_turn(enc, in);
  const auto padded = encode_turn(enc, in, 14);
  ASSERT_EQ(padded.y_tok.rows(), 14);
  EXPECT_EQ(plain.y_tok.rows(), static_cast<int>(in.size()));
  EXPECT_LT((padded.y_tok.topRows(in.size()) - plain.y_tok).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(plain.y_cls, plain.y_tok.row(0));
  EXPECT_FALSE(padded.pad_mask.back());
}

TEST(Transformer, DropoutOnlyWithRng) {
  tensor::ParameterStore store;
  std::mt19937_64 rng(2);
  const auto tok = small_tokenizer();
  auto cfg = tiny_config(static_cast<int>(tok.vocab().size()));
  TransformerEncoder enc(store, "enc", cfg, rng);
  const auto in = build_pair_input(tok, "a", "b", 16);
  tensor::Tape t;
  const auto a = enc.forward(t, in, {0.5, nullptr}).tokens.value();
  const auto b = enc.forward(t, in).tokens.value();
  EXPECT_EQ(a, b);
  std::mt19937_64 drop(9);
  const auto c = enc.forward(t, in, {0.5, &drop}).tokens.value();
  EXPECT_NE(a, c);
}

TEST(Transformer, RejectsBadConfig) {
  auto c = tiny_config(10);
  c.num_heads = 3;
  EXPECT_THROW(c.validate(), Error);
  c = tiny_config(0);
  EXPECT_THROW(c.validate(), Error);
}

}  // namespace
}  // namespace schemadst::encoder
