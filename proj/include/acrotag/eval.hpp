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

#ifndef ACROTAG_EVAL_HPP_
#define ACROTAG_EVAL_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "acrotag/corpus.hpp"

namespace acrotag::eval {

struct Counts {
  size_t tp = 0;
  size_t fp = 0;
  size_t fn = 0;

  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    fp += o.fp;
    fn += o.fn;
    return *this;
  }
  friend bool operator==(const Counts&, const Counts&) = default;
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  Counts counts;
};

// 0/0 is taken as 0 for precision, recall and F1.
Prf FromCounts(const Counts& c);

struct Metrics {
  Prf acronym;
  Prf long_form;
  // Micro average over the pooled acronym and long-form counts.
  Prf combined;
};

// One-to-one exact matching of (start, end) pairs.
Counts MatchSpans(const std::vector<Span>& predicted,
                  const std::vector<Span>& gold);

// Documents without a prediction count as predicting nothing. A prediction
// for an id absent from `gold` is an error.
Metrics Score(const std::vector<Prediction>& predictions, const Dataset& gold);

enum class ReportStyle { kCombined, kFineGrained };

// P, R and F1 to four decimals; one row per type in the fine-grained style.
std::string Report(const Metrics& metrics, ReportStyle style);

}  // namespace acrotag::eval

#endif  // ACROTAG_EVAL_HPP_
