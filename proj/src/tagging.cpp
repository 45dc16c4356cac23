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

#include "acrotag/tagging.hpp"

#include <algorithm>

#include "acrotag/error.hpp"

namespace acrotag::tagging {
namespace {

bool SameToken(const tok::TokenSequence& a, size_t i, std::u32string_view a_text,
               const tok::TokenSequence& b, size_t j, std::u32string_view b_text,
               int32_t unk_id) {
  if (a.ids[i] != b.ids[j]) return false;
  if (a.ids[i] != unk_id) return true;
  const Span& sa = a.offsets[i];
  const Span& sb = b.offsets[j];
  return a_text.substr(sa.start, sa.length()) ==
         b_text.substr(sb.start, sb.length());
}

void LabelMatches(const std::vector<Span>& spans, Label begin, Label inside,
                  const Document& doc, const tok::TokenSequence& ts,
                  const tok::Tokenizer& tokenizer, const BioOptions& options,
                  LabelSequence& target) {
  const std::u32string_view text = doc.text;
  for (const Span& span : spans) {
    const std::u32string_view annotated = text.substr(span.start, span.length());
    const tok::TokenSequence needle = tokenizer.Tokenize(annotated);
    if (needle.size() == 0) {
      Fail(ErrorCode::kValidation,
           "document " + doc.id + ": annotated span [" +
               std::to_string(span.start) + ", " + std::to_string(span.end) +
               ") tokenizes to nothing");
    }
    const size_t n = needle.size();
    for (size_t i = 0; i + n <= ts.size(); ++i) {
      bool match = true;
      for (size_t k = 0; k < n && match; ++k) {
        match = SameToken(ts, i + k, text, needle, k, annotated,
                          tokenizer.vocab().unk_id());
      }
      if (!match) continue;
      const bool free = std::all_of(target.begin() + i, target.begin() + i + n,
                                    [](int32_t l) { return l == kOutside; });
      if (!free) continue;
      target[i] = begin;
      std::fill(target.begin() + i + 1, target.begin() + i + n, inside);
      if (options.first_occurrence_only) break;
    }
  }
}

}  // namespace

std::string_view LabelName(int32_t label) {
  switch (label) {
    case kOutside:
      return "O";
    case kBeginAcronym:
      return "B-Acr";
    case kInsideAcronym:
      return "I-Acr";
    case kBeginLongForm:
      return "B-LF";
    case kInsideLongForm:
      return "I-LF";
    default:
      return "?";
  }
}

LabelSequence SpansToBio(const Document& doc, const tok::TokenSequence& ts,
                         const tok::Tokenizer& tokenizer,
                         const BioOptions& options) {
  LabelSequence target(ts.size(), kOutside);
  LabelMatches(doc.acronyms, kBeginAcronym, kInsideAcronym, doc, ts, tokenizer,
               options, target);
  LabelMatches(doc.long_forms, kBeginLongForm, kInsideLongForm, doc, ts,
               tokenizer, options, target);
  return target;
}

SpanSets BioToSpans(const LabelSequence& labels, const tok::TokenSequence& ts) {
  if (labels.size() != ts.size()) {
    Fail(ErrorCode::kInvalidArgument, "label and token counts differ");
  }
  SpanSets out;
  size_t i = 0;
  while (i < labels.size()) {
    const int32_t l = labels[i];
    if (l == kOutside) {
      ++i;
      continue;
    }
    const bool acronym = l == kBeginAcronym || l == kInsideAcronym;
    const int32_t inside = acronym ? kInsideAcronym : kInsideLongForm;
    size_t j = i + 1;
    while (j < labels.size() && labels[j] == inside) ++j;
    Span span{ts.offsets[i].start, ts.offsets[j - 1].end};
    (acronym ? out.acronyms : out.long_forms).push_back(span);
    i = j;
  }
  return out;
}

bool IsWellFormed(const LabelSequence& labels) {
  int32_t prev = kOutside;
  for (int32_t l : labels) {
    if (l < 0 || l >= kNumLabels) return false;
    if (l == kInsideAcronym && prev != kBeginAcronym && prev != kInsideAcronym) {
      return false;
    }
    if (l == kInsideLongForm && prev != kBeginLongForm &&
        prev != kInsideLongForm) {
      return false;
    }
    prev = l;
  }
  return true;
}

}  // namespace acrotag::tagging
