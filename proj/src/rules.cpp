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

#include "acrotag/rules.hpp"

#include <algorithm>

#include "acrotag/unicode.hpp"

namespace acrotag::rules {
namespace {

std::vector<Span> WhitespaceTokens(std::u32string_view text) {
  std::vector<Span> words;
  const auto n = static_cast<int64_t>(text.size());
  int64_t i = 0;
  while (i < n) {
    if (unicode::IsSpace(text[i])) {
      ++i;
      continue;
    }
    int64_t j = i;
    while (j < n && !unicode::IsSpace(text[j])) ++j;
    words.push_back({i, j});
    i = j;
  }
  return words;
}

bool CapitalizedEnough(std::u32string_view word, double threshold) {
  const unicode::CaseCounts c = unicode::CountCase(word);
  return c.alpha >= 2 &&
         static_cast<double>(c.upper) / static_cast<double>(c.alpha) > threshold;
}

bool IsBareParenthesis(std::u32string_view word) {
  return !word.empty() && std::all_of(word.begin(), word.end(), [](char32_t c) {
    return c == U'(' || c == U')';
  });
}

Span Core(std::u32string_view text, const Span& word) {
  const auto t = unicode::TrimPunct(text.substr(word.start, word.length()));
  return {word.start + static_cast<int64_t>(t.begin),
          word.start + static_cast<int64_t>(t.end)};
}

char32_t Initial(std::u32string_view text, const Span& core) {
  for (int64_t i = core.start; i < core.end; ++i) {
    if (unicode::IsAlpha(text[i])) return unicode::ToLower(text[i]);
  }
  return 0;
}

}  // namespace

bool IsAcronymCandidate(std::u32string_view word, double threshold) {
  const auto t = unicode::TrimPunct(word);
  if (t.begin == t.end) return false;
  return CapitalizedEnough(word.substr(t.begin, t.end - t.begin), threshold);
}

tagging::SpanSets ExtractRuleBased(std::u32string_view text, double threshold) {
  tagging::SpanSets out;
  const std::vector<Span> words = WhitespaceTokens(text);
  for (size_t w = 0; w < words.size(); ++w) {
    const Span core = Core(text, words[w]);
    if (core.length() == 0 ||
        !CapitalizedEnough(text.substr(core.start, core.length()), threshold)) {
      continue;
    }
    out.acronyms.push_back(core);

    std::u32string letters;
    for (int64_t i = core.start; i < core.end; ++i) {
      if (unicode::IsAlpha(text[i])) letters.push_back(unicode::ToLower(text[i]));
    }
    size_t last = w;
    while (last > 0 &&
           IsBareParenthesis(text.substr(words[last - 1].start,
                                         words[last - 1].length()))) {
      --last;
    }
    // Candidate long-form words are [last - n, last).
    if (letters.size() > last) continue;
    const size_t first = last - letters.size();
    bool spelled = true;
    for (size_t k = 0; k < letters.size() && spelled; ++k) {
      spelled = Initial(text, Core(text, words[first + k])) == letters[k];
    }
    if (!spelled) continue;
    const Span lf{Core(text, words[first]).start, Core(text, words[last - 1]).end};
    if (lf.length() <= 0) continue;
    if (!out.long_forms.empty() && out.long_forms.back().Overlaps(lf)) continue;
    out.long_forms.push_back(lf);
  }
  return out;
}

std::vector<Prediction> ExtractRuleBased(const Dataset& dataset,
                                         double threshold) {
  std::vector<Prediction> preds;
  preds.reserve(dataset.documents.size());
  for (const Document& d : dataset.documents) {
    tagging::SpanSets s = ExtractRuleBased(d.text, threshold);
    preds.push_back({d.id, std::move(s.acronyms), std::move(s.long_forms)});
  }
  return preds;
}

bool IsProbableAcronymSentence(std::u32string_view sentence, double threshold) {
  for (const Span& w : WhitespaceTokens(sentence)) {
    if (CapitalizedEnough(sentence.substr(w.start, w.length()), threshold)) {
      return true;
    }
  }
  return false;
}

std::vector<std::u32string> FilterSentences(
    const std::vector<std::u32string>& sentences, double threshold) {
  std::vector<std::u32string> kept;
  for (const std::u32string& s : sentences) {
    if (IsProbableAcronymSentence(s, threshold)) kept.push_back(s);
  }
  return kept;
}

}  // namespace acrotag::rules
