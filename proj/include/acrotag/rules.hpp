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

#ifndef ACROTAG_RULES_HPP_
#define ACROTAG_RULES_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "acrotag/corpus.hpp"
#include "acrotag/tagging.hpp"

namespace acrotag::rules {

inline constexpr double kAcronymThreshold = 0.6;
inline constexpr double kSentenceThreshold = 0.5;

// Uppercase share of the alphabetic characters exceeds `threshold`, with at
// least two alphabetic characters. Surrounding punctuation is ignored.
bool IsAcronymCandidate(std::u32string_view word,
                        double threshold = kAcronymThreshold);

// Every candidate word is an acronym. The n words before an n-letter
// acronym (past any bare parentheses) form its long-form when their
// initials spell the acronym, ignoring case.
tagging::SpanSets ExtractRuleBased(std::u32string_view text,
                                   double threshold = kAcronymThreshold);

std::vector<Prediction> ExtractRuleBased(const Dataset& dataset,
                                         double threshold = kAcronymThreshold);

bool IsProbableAcronymSentence(std::u32string_view sentence,
                               double threshold = kSentenceThreshold);

std::vector<std::u32string> FilterSentences(
    const std::vector<std::u32string>& sentences,
    double threshold = kSentenceThreshold);

}  // namespace acrotag::rules

#endif  // ACROTAG_RULES_HPP_
