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

#include <doctest.h>

#include "acrotag/error.hpp"
#include "acrotag/eval.hpp"
#include "support/score_oracle.hpp"

using namespace acrotag;

namespace {

Dataset Gold() {
  Dataset ds;
  ds.documents.push_back({"a", std::u32string(30, U'x'), {{0, 3}, {10, 13}}, {{15, 25}}});
  ds.documents.push_back({"b", std::u32string(30, U'x'), {{4, 6}}, {}});
  return ds;
}

}  // namespace

TEST_SUITE("eval") {
  TEST_CASE("perfect predictions") {
    auto gold = Gold();
    auto m = eval::Score(corpus::GoldAsPredictions(gold), gold);
    for (const eval::Prf* p : {&m.acronym, &m.long_form, &m.combined}) {
      CHECK(p->precision == 1.0);
      CHECK(p->recall == 1.0);
      CHECK(p->f1 == 1.0);
    }
    const std::string r = eval::Report(m, eval::ReportStyle::kFineGrained);
    CHECK(r.find("Acronyms    1.0000 1.0000 1.0000") != std::string::npos);
    CHECK(r.find("Long-Forms  1.0000 1.0000 1.0000") != std::string::npos);
    CHECK(r.find("Combined    1.0000 1.0000 1.0000") != std::string::npos);
  }

  TEST_CASE("hand example") {
    Dataset gold;
    gold.documents.push_back({"a", std::u32string(30, U'x'), {{0, 3}, {10, 13}}, {}});
    std::vector<Prediction> pred = {{"a", {{0, 3}, {20, 23}}, {}}};
    auto m = eval::Score(pred, gold);
    CHECK(m.acronym.counts == eval::Counts{1, 1, 1});
    CHECK(m.acronym.precision == 0.5);
    CHECK(m.acronym.recall == 0.5);
    CHECK(m.acronym.f1 == 0.5);
    const std::string r = eval::Report(m, eval::ReportStyle::kFineGrained);
    CHECK(r.find("Acronyms    0.5000 0.5000 0.5000") != std::string::npos);
    CHECK(eval::Report(m, eval::ReportStyle::kCombined).find("Acronyms") == std::string::npos);
  }

  TEST_CASE("empty predictions") {
    auto m = eval::Score({}, Gold());
    CHECK(m.combined.precision == 0.0);
    CHECK(m.combined.recall == 0.0);
    CHECK(m.combined.counts.fn == 4);
    CHECK(eval::Report(m, eval::ReportStyle::kCombined).find("Combined    0.0000 0.0000 0.0000") !=
          std::string::npos);
  }

  TEST_CASE("duplicates and errors") {
    CHECK(eval::MatchSpans({{0, 3}, {0, 3}}, {{0, 3}}) == eval::Counts{1, 1, 0});
    std::vector<Prediction> unknown = {{"zzz", {}, {}}};
    CHECK_THROWS_AS(eval::Score(unknown, Gold()), Error);
    std::vector<Prediction> twice = {{"a", {}, {}}, {"a", {}, {}}};
    CHECK_THROWS_AS(eval::Score(twice, Gold()), Error);
  }

  TEST_CASE("matches the brute-force oracle") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
      auto inst = testing::RandomScoreInstance(rng);
      auto m = eval::Score(inst.predictions, inst.gold);
      eval::Counts acr, lf;
      for (const Document& d : inst.gold.documents) {
        const Prediction* p = nullptr;
        for (const Prediction& q : inst.predictions) {
          if (q.id == d.id) p = &q;
        }
        static const std::vector<Span> kNone;
        acr += testing::BruteForceCounts(p ? p->acronyms : kNone, d.acronyms);
        lf += testing::BruteForceCounts(p ? p->long_forms : kNone, d.long_forms);
      }
      CHECK(m.acronym.counts == acr);
      CHECK(m.long_form.counts == lf);
      CHECK(m.combined.counts.tp == acr.tp + lf.tp);

      // Order does not matter.
      auto shuffled = inst.predictions;
      rng.Shuffle(shuffled);
      for (auto& p : shuffled) rng.Shuffle(p.acronyms);
      CHECK(eval::Score(shuffled, inst.gold).combined.counts == m.combined.counts);
    }
  }
}
