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

#ifndef ACROTAG_UNICODE_HPP_
#define ACROTAG_UNICODE_HPP_

#include <string>
#include <string_view>

namespace acrotag::unicode {

// Strict UTF-8 decoding; throws Error(kParse) on malformed input.
std::u32string Decode(std::string_view utf8);
std::string Encode(std::u32string_view text);
std::string Encode(char32_t c);

bool IsSpace(char32_t c);
bool IsPunct(char32_t c);
bool IsAlpha(char32_t c);
bool IsUpper(char32_t c);
// Simple one-to-one lowercase mapping over the cased ranges IsUpper knows.
char32_t ToLower(char32_t c);

struct CaseCounts {
  int alpha = 0;
  int upper = 0;
};

CaseCounts CountCase(std::u32string_view word);

// Index range [begin, end) of `word` after trimming leading and trailing
// punctuation. begin == end when the word is all punctuation.
struct Trimmed {
  size_t begin = 0;
  size_t end = 0;
};
Trimmed TrimPunct(std::u32string_view word);

}  // namespace acrotag::unicode

#endif  // ACROTAG_UNICODE_HPP_
