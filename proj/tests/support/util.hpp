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

#ifndef ACROTAG_TESTS_UTIL_HPP_
#define ACROTAG_TESTS_UTIL_HPP_

#include <filesystem>
#include <string>

#include "acrotag/corpus.hpp"
#include "acrotag/unicode.hpp"
#include "support/tempdir.hpp"

namespace acrotag::testing {

inline std::u32string U(std::string_view s) { return unicode::Decode(s); }
inline std::string S(std::u32string_view s) { return unicode::Encode(s); }

inline std::string Slice(const Document& d, const Span& s) {
  return S(std::u32string_view(d.text).substr(s.start, s.length()));
}

}  // namespace acrotag::testing

#endif  // ACROTAG_TESTS_UTIL_HPP_
