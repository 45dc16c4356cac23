/* Copyright 2026 The acrotag Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef ACROTAG_TOKENIZER_HPP_
#define ACROTAG_TOKENIZER_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "acrotag/corpus.hpp"

namespace acrotag::tok {

inline constexpr std::string_view kPadPiece = "[PAD]";
inline constexpr std::string_view kUnkPiece = "[UNK]";
inline constexpr std::string_view kMaskPiece = "[MASK]";
inline constexpr std::string_view kContinuation = "##";

// Subword inventory. Pieces starting with "##" only match inside a word.
class SubwordVocab {
 public:
  SubwordVocab() = default;

  // Line i of the list gets id i. Throws on duplicates or missing specials.
  static SubwordVocab FromPieces(std::vector<std::string> pieces);
  static SubwordVocab Load(const std::filesystem::path& path);
  void Save(const std::filesystem::path& path) const;

  // -1 when absent.
  int32_t FindInitial(const std::u32string& piece) const;
  int32_t FindContinuation(const std::u32string& piece) const;
  int32_t Find(std::string_view piece) const;

  const std::string& piece(int32_t id) const { return pieces_.at(id); }
  const std::vector<std::string>& pieces() const { return pieces_; }
  size_t size() const { return pieces_.size(); }

  int32_t pad_id() const { return pad_id_; }
  int32_t unk_id() const { return unk_id_; }
  int32_t mask_id() const { return mask_id_; }

 private:
  std::vector<std::string> pieces_;
  std::unordered_map<std::u32string, int32_t> initial_;
  std::unordered_map<std::u32string, int32_t> continuation_;
  int32_t pad_id_ = -1;
  int32_t unk_id_ = -1;
  int32_t mask_id_ = -1;
};

struct VocabBuildOptions {
  // Multi-character pieces kept, ranked by frequency.
  size_t max_pieces = 8000;
  // Minimum corpus frequency for a multi-character piece.
  size_t min_count = 2;
  size_t max_piece_chars = 16;
};

// Specials, then every single character seen (initial and "##" forms), then
// the most frequent multi-character substrings of pre-split words.
SubwordVocab BuildVocab(const std::vector<std::u32string>& texts,
                        const VocabBuildOptions& options = {});

class CharVocab {
 public:
  static constexpr int32_t kPadId = 0;
  static constexpr int32_t kUnkId = 1;

  CharVocab() = default;
  // Sorted, de-duplicated set of characters; ids follow code point order.
  explicit CharVocab(std::vector<char32_t> chars);
  // Characters for ids 2, 3, ... in the given order.
  static CharVocab FromIds(std::vector<char32_t> chars);

  static CharVocab Load(const std::filesystem::path& path);
  void Save(const std::filesystem::path& path) const;

  int32_t Id(char32_t c) const;
  // Characters by id; entries 0 and 1 (pad, unknown) hold U+0000.
  const std::vector<char32_t>& chars() const { return chars_; }
  size_t size() const { return chars_.size(); }

 private:
  std::vector<char32_t> chars_{0, 0};
  std::unordered_map<char32_t, int32_t> index_;
};

CharVocab BuildCharVocab(const std::vector<std::u32string>& texts);

struct TokenSequence {
  std::vector<std::string> tokens;
  std::vector<int32_t> ids;
  std::vector<Span> offsets;
  std::vector<std::vector<int32_t>> char_rows;

  size_t size() const { return tokens.size(); }
  void Truncate(size_t n);
};

// Fixed-length character ids of a piece; a leading "##" is stripped first.
std::vector<int32_t> EncodeChars(std::string_view piece, const CharVocab& chars,
                                 size_t max_len);
std::vector<int32_t> EncodeChars(std::u32string_view chars,
                                 const CharVocab& vocab, size_t max_len);

class Tokenizer {
 public:
  static constexpr size_t kDefaultCharLen = 16;
  static constexpr size_t kMaxWordChars = 100;

  Tokenizer() = default;
  Tokenizer(SubwordVocab vocab, CharVocab chars,
            size_t char_len = kDefaultCharLen);

  // Whitespace/punctuation pre-split, then greedy longest-match. A word that
  // cannot be fully segmented becomes one UNK piece spanning the word. Char
  // rows come from the source characters, so UNK pieces keep their
  // spelling.
  TokenSequence Tokenize(std::u32string_view text) const;

  const SubwordVocab& vocab() const { return vocab_; }
  const CharVocab& chars() const { return chars_; }
  size_t char_len() const { return char_len_; }

 private:
  SubwordVocab vocab_;
  CharVocab chars_;
  size_t char_len_ = kDefaultCharLen;
};

Tokenizer BuildTokenizer(const std::vector<std::u32string>& texts,
                         const VocabBuildOptions& options = {},
                         size_t char_len = Tokenizer::kDefaultCharLen);

// Word boundaries used by the pre-split: runs of non-space, non-punctuation
// characters, and every punctuation character on its own.
std::vector<Span> PreSplit(std::u32string_view text);

std::vector<std::u32string> Texts(const Dataset& dataset);

}  // namespace acrotag::tok

#endif  // ACROTAG_TOKENIZER_HPP_
