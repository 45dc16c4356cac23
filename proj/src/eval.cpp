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

#include "acrotag/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <unordered_map>

#include "acrotag/error.hpp"

namespace acrotag::eval {
namespace {

std::string Row(const char* name, const Prf& p) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%-11s %.4f %.4f %.4f\n", name, p.precision,
                p.recall, p.f1);
  return buf;
}

}  // namespace

Prf FromCounts(const Counts& c) {
  Prf p;
  p.counts = c;
  if (c.tp + c.fp > 0) {
    p.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
  }
  if (c.tp + c.fn > 0) {
    p.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  }
  if (p.precision + p.recall > 0) {
    p.f1 = 2 * p.precision * p.recall / (p.precision + p.recall);
  }
  return p;
}

Counts MatchSpans(const std::vector<Span>& predicted,
                  const std::vector<Span>& gold) {
  std::map<Span, size_t> remaining;
  for (const Span& g : gold) ++remaining[g];
  Counts c;
  for (const Span& p : predicted) {
    auto it = remaining.find(p);
    if (it != remaining.end() && it->second > 0) {
      --it->second;
      ++c.tp;
    } else {
      ++c.fp;
    }
  }
  c.fn = gold.size() - c.tp;
  return c;
}

Metrics Score(const std::vector<Prediction>& predictions, const Dataset& gold) {
  std::unordered_map<std::string, const Document*> by_id;
  for (const Document& d : gold.documents) by_id.emplace(d.id, &d);

  std::unordered_map<std::string, bool> predicted;
  Counts acr, lf;
  for (const Prediction& p : predictions) {
    auto it = by_id.find(p.id);
    if (it == by_id.end()) {
      Fail(ErrorCode::kInvalidArgument, "prediction for unknown document id " + p.id);
    }
    if (!predicted.emplace(p.id, true).second) {
      Fail(ErrorCode::kInvalidArgument, "duplicate prediction for document id " + p.id);
    }
    acr += MatchSpans(p.acronyms, it->second->acronyms);
    lf += MatchSpans(p.long_forms, it->second->long_forms);
  }
  for (const Document& d : gold.documents) {
    if (predicted.count(d.id)) continue;
    acr.fn += d.acronyms.size();
    lf.fn += d.long_forms.size();
  }
  Counts all = acr;
  all += lf;
  return {FromCounts(acr), FromCounts(lf), FromCounts(all)};
}

std::string Report(const Metrics& metrics, ReportStyle style) {
  std::string out = "Type        P      R      F1\n";
  if (style == ReportStyle::kFineGrained) {
    out += Row("Acronyms", metrics.acronym);
    out += Row("Long-Forms", metrics.long_form);
  }
  out += Row("Combined", metrics.combined);
  return out;
}

}  // namespace acrotag::eval
