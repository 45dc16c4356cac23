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

#include "acrotag/tokenizer.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "acrotag/error.hpp"
#include "acrotag/unicode.hpp"

namespace acrotag::tok {
namespace {

const std::u32string kContinuation32 = U"##";

std::vector<std::string> ReadPieceLines(const std::filesystem::path& path) {
  std::istringstream in(corpus::ReadFile(path));
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace

SubwordVocab SubwordVocab::FromPieces(std::vector<std::string> pieces) {
  SubwordVocab v;
  std::unordered_map<std::string, int32_t> seen;
  for (size_t i = 0; i < pieces.size(); ++i) {
    const std::string& p = pieces[i];
    const auto id = static_cast<int32_t>(i);
    if (p.empty()) {
      Fail(ErrorCode::kValidation,
           "empty vocabulary piece at line " + std::to_string(i + 1));
    }
    if (!seen.emplace(p, id).second) {
      Fail(ErrorCode::kValidation, "duplicate vocabulary piece '" + p +
                                       "' at line " + std::to_string(i + 1));
    }
    if (p == kPadPiece) v.pad_id_ = id;
    if (p == kUnkPiece) v.unk_id_ = id;
    if (p == kMaskPiece) v.mask_id_ = id;
    std::u32string decoded = unicode::Decode(p);
    if (decoded.size() > 2 && decoded.starts_with(kContinuation32)) {
      v.continuation_.emplace(decoded.substr(2), id);
    } else {
      v.initial_.emplace(std::move(decoded), id);
    }
  }
  std::string missing;
  for (auto [name, id] : {std::pair{kPadPiece, v.pad_id_},
                          std::pair{kUnkPiece, v.unk_id_},
                          std::pair{kMaskPiece, v.mask_id_}}) {
    if (id < 0) missing += (missing.empty() ? "" : ", ") + std::string(name);
  }
  if (!missing.empty()) {
    Fail(ErrorCode::kValidation, "vocabulary lacks special pieces: " + missing);
  }
  v.pieces_ = std::move(pieces);
  return v;
}

SubwordVocab SubwordVocab::Load(const std::filesystem::path& path) {
  std::vector<std::string> lines = ReadPieceLines(path);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return FromPieces(std::move(lines));
}

void SubwordVocab::Save(const std::filesystem::path& path) const {
  std::string out;
  for (const std::string& p : pieces_) out += p + "\n";
  corpus::WriteFile(path, out);
}

int32_t SubwordVocab::FindInitial(const std::u32string& piece) const {
  auto it = initial_.find(piece);
  return it == initial_.end() ? -1 : it->second;
}

int32_t SubwordVocab::FindContinuation(const std::u32string& piece) const {
  auto it = continuation_.find(piece);
  return it == continuation_.end() ? -1 : it->second;
}

int32_t SubwordVocab::Find(std::string_view piece) const {
  std::u32string decoded = unicode::Decode(piece);
  if (decoded.size() > 2 && decoded.starts_with(kContinuation32)) {
    return FindContinuation(decoded.substr(2));
  }
  return FindInitial(decoded);
}

std::vector<Span> PreSplit(std::u32string_view text) {
  std::vector<Span> words;
  const auto n = static_cast<int64_t>(text.size());
  int64_t i = 0;
  while (i < n) {
    const char32_t c = text[i];
    if (unicode::IsSpace(c)) {
      ++i;
    } else if (unicode::IsPunct(c)) {
      words.push_back({i, i + 1});
      ++i;
    } else {
      int64_t j = i + 1;
      while (j < n && !unicode::IsSpace(text[j]) && !unicode::IsPunct(text[j])) {
        ++j;
      }
      words.push_back({i, j});
      i = j;
    }
  }
  return words;
}

std::vector<std::u32string> Texts(const Dataset& dataset) {
  std::vector<std::u32string> texts;
  texts.reserve(dataset.documents.size());
  for (const Document& d : dataset.documents) texts.push_back(d.text);
  return texts;
}

SubwordVocab BuildVocab(const std::vector<std::u32string>& texts,
                        const VocabBuildOptions& options) {
  std::map<std::u32string, size_t> word_counts;
  for (const std::u32string& text : texts) {
    for (const Span& w : PreSplit(text)) {
      ++word_counts[text.substr(w.start, w.length())];
    }
  }

  std::map<char32_t, bool> singles;
  // Key: (is_continuation, substring).
  std::map<std::pair<bool, std::u32string>, size_t> substrings;
  for (const auto& [word, count] : word_counts) {
    for (char32_t c : word) singles[c] = true;
    for (size_t i = 0; i < word.size(); ++i) {
      const size_t longest = std::min(options.max_piece_chars, word.size() - i);
      for (size_t len = 2; len <= longest; ++len) {
        substrings[{i > 0, word.substr(i, len)}] += count;
      }
    }
  }

  struct Ranked {
    size_t count;
    bool continuation;
    std::u32string text;
  };
  std::vector<Ranked> ranked;
  for (auto& [key, count] : substrings) {
    if (count >= options.min_count) ranked.push_back({count, key.first, key.second});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.text.size() != b.text.size()) return a.text.size() > b.text.size();
    if (a.continuation != b.continuation) return !a.continuation;
    return a.text < b.text;
  });
  if (ranked.size() > options.max_pieces) ranked.resize(options.max_pieces);

  std::vector<std::string> pieces{std::string(kPadPiece), std::string(kUnkPiece),
                                  std::string(kMaskPiece)};
  for (const auto& [c, unused] : singles) pieces.push_back(unicode::Encode(c));
  for (const auto& [c, unused] : singles) {
    pieces.push_back(std::string(kContinuation) + unicode::Encode(c));
  }
  for (const Ranked& r : ranked) {
    pieces.push_back((r.continuation ? std::string(kContinuation) : "") +
                     unicode::Encode(r.text));
  }
  // Literal "[PAD]"-style words cannot arise: brackets pre-split alone.
  return SubwordVocab::FromPieces(std::move(pieces));
}

CharVocab::CharVocab(std::vector<char32_t> chars) {
  std::sort(chars.begin(), chars.end());
  chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
  for (char32_t c : chars) {
    if (c == 0) continue;
    index_.emplace(c, static_cast<int32_t>(chars_.size()));
    chars_.push_back(c);
  }
}

int32_t CharVocab::Id(char32_t c) const {
  auto it = index_.find(c);
  return it == index_.end() ? kUnkId : it->second;
}

CharVocab CharVocab::Load(const std::filesystem::path& path) {
  std::vector<std::string> lines = ReadPieceLines(path);
  std::vector<char32_t> by_id;
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) continue;
    const size_t tab = line.rfind('\t');
    if (tab == std::string::npos) {
      Fail(ErrorCode::kParse, "char vocabulary line " + std::to_string(i + 1) +
                                  " lacks a tab separator");
    }
    const std::string key = line.substr(0, tab);
    int64_t id = -1;
    try {
      id = std::stoll(line.substr(tab + 1));
    } catch (const std::exception&) {
      Fail(ErrorCode::kParse,
           "char vocabulary line " + std::to_string(i + 1) + " has a bad id");
    }
    if (id != static_cast<int64_t>(by_id.size())) {
      Fail(ErrorCode::kValidation,
           "char vocabulary ids must be dense and ordered; line " +
               std::to_string(i + 1) + " has id " + std::to_string(id));
    }
    if (id == kPadId || id == kUnkId) {
      const std::string_view want = id == kPadId ? kPadPiece : kUnkPiece;
      if (key != want) {
        Fail(ErrorCode::kValidation, "char vocabulary id " + std::to_string(id) +
                                         " must be " + std::string(want));
      }
      by_id.push_back(0);
      continue;
    }
    const std::u32string decoded = unicode::Decode(key);
    if (decoded.size() != 1) {
      Fail(ErrorCode::kParse, "char vocabulary line " + std::to_string(i + 1) +
                                  " must hold exactly one character");
    }
    by_id.push_back(decoded[0]);
  }
  if (by_id.size() < 2) {
    Fail(ErrorCode::kValidation, "char vocabulary lacks pad/unknown entries");
  }
  by_id.erase(by_id.begin(), by_id.begin() + 2);
  return FromIds(std::move(by_id));
}

CharVocab CharVocab::FromIds(std::vector<char32_t> chars) {
  CharVocab v;
  for (char32_t c : chars) {
    if (c == 0 || !v.index_.emplace(c, static_cast<int32_t>(v.chars_.size())).second) {
      Fail(ErrorCode::kValidation, "duplicate or null character in char vocabulary");
    }
    v.chars_.push_back(c);
  }
  return v;
}

void CharVocab::Save(const std::filesystem::path& path) const {
  std::string out = std::string(kPadPiece) + "\t0\n" + std::string(kUnkPiece) +
                    "\t1\n";
  for (size_t id = 2; id < chars_.size(); ++id) {
    out += unicode::Encode(chars_[id]) + "\t" + std::to_string(id) + "\n";
  }
  corpus::WriteFile(path, out);
}

CharVocab BuildCharVocab(const std::vector<std::u32string>& texts) {
  std::vector<char32_t> chars;
  for (const std::u32string& t : texts) {
    for (char32_t c : t) {
      if (!unicode::IsSpace(c)) chars.push_back(c);
    }
  }
  return CharVocab(std::move(chars));
}

void TokenSequence::Truncate(size_t n) {
  if (n >= size()) return;
  tokens.resize(n);
  ids.resize(n);
  offsets.resize(n);
  char_rows.resize(n);
}

std::vector<int32_t> EncodeChars(std::u32string_view chars,
                                 const CharVocab& vocab, size_t max_len) {
  std::vector<int32_t> row(max_len, CharVocab::kPadId);
  const size_t n = std::min(max_len, chars.size());
  for (size_t i = 0; i < n; ++i) row[i] = vocab.Id(chars[i]);
  return row;
}

std::vector<int32_t> EncodeChars(std::string_view piece, const CharVocab& chars,
                                 size_t max_len) {
  std::u32string decoded = unicode::Decode(piece);
  if (decoded.size() > 2 && decoded.starts_with(kContinuation32)) {
    decoded.erase(0, 2);
  }
  return EncodeChars(std::u32string_view(decoded), chars, max_len);
}

Tokenizer::Tokenizer(SubwordVocab vocab, CharVocab chars, size_t char_len)
    : vocab_(std::move(vocab)), chars_(std::move(chars)), char_len_(char_len) {
  if (char_len_ == 0) {
    Fail(ErrorCode::kInvalidArgument, "token character length must be >= 1");
  }
}

TokenSequence Tokenizer::Tokenize(std::u32string_view text) const {
  TokenSequence ts;
  auto emit = [&](int32_t id, const Span& span) {
    ts.tokens.push_back(vocab_.piece(id));
    ts.ids.push_back(id);
    ts.offsets.push_back(span);
    ts.char_rows.push_back(
        EncodeChars(text.substr(span.start, span.length()), chars_, char_len_));
  };

  std::vector<std::pair<int32_t, Span>> pieces;
  std::u32string candidate;
  for (const Span& word : PreSplit(text)) {
    pieces.clear();
    bool unknown = word.length() > static_cast<int64_t>(kMaxWordChars);
    int64_t pos = word.start;
    while (!unknown && pos < word.end) {
      int32_t found = -1;
      int64_t end = word.end;
      for (; end > pos; --end) {
        candidate.assign(text.substr(pos, end - pos));
        found = pos == word.start ? vocab_.FindInitial(candidate)
                                  : vocab_.FindContinuation(candidate);
        if (found >= 0) break;
      }
      if (found < 0) {
        unknown = true;
        break;
      }
      pieces.push_back({found, {pos, end}});
      pos = end;
    }
    if (unknown) {
      emit(vocab_.unk_id(), word);
    } else {
      for (const auto& [id, span] : pieces) emit(id, span);
    }
  }
  return ts;
}

Tokenizer BuildTokenizer(const std::vector<std::u32string>& texts,
                         const VocabBuildOptions& options, size_t char_len) {
  return Tokenizer(BuildVocab(texts, options), BuildCharVocab(texts), char_len);
}

}  // namespace acrotag::tok
