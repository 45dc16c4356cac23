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

#ifndef ACROTAG_TAGGING_HPP_
#define ACROTAG_TAGGING_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

#include "acrotag/corpus.hpp"
#include "acrotag/tokenizer.hpp"

namespace acrotag::tagging {

enum Label : int32_t {
  kOutside = 0,
  kBeginAcronym = 1,
  kInsideAcronym = 2,
  kBeginLongForm = 3,
  kInsideLongForm = 4,
};

inline constexpr int32_t kNumLabels = 5;

std::string_view LabelName(int32_t label);

using LabelSequence = std::vector<int32_t>;

struct BioOptions {
  // Label only the first occurrence of each annotated text instead of all.
  bool first_occurrence_only = false;
};

// Tokenizes each annotated acronym text, then each long-form text, and
// labels every token subsequence equal to it. A match touching a token that
// is already labelled is skipped, so acronyms win collisions and the output
// is always well-formed BIO. UNK tokens match only UNK tokens with the same
// surface text.
LabelSequence SpansToBio(const Document& doc, const tok::TokenSequence& ts,
                         const tok::Tokenizer& tokenizer,
                         const BioOptions& options = {});

struct SpanSets {
  std::vector<Span> acronyms;
  std::vector<Span> long_forms;
};

// One span per maximal B(I*) run of a type. An I label that does not
// continue a run of its own type starts a new run.
SpanSets BioToSpans(const LabelSequence& labels, const tok::TokenSequence& ts);

bool IsWellFormed(const LabelSequence& labels);

}  // namespace acrotag::tagging

#endif  // ACROTAG_TAGGING_HPP_
