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

#include <cmath>
#include <set>

#include "acrotag/augment.hpp"
#include "acrotag/error.hpp"
#include "acrotag/training.hpp"
#include "support/synthetic.hpp"
#include "support/util.hpp"

using namespace acrotag;
using namespace acrotag::augment;
using testing::U;

namespace {

const char* kOriginal =
    "We conduct a showcase study of dialectal language in online conversational text "
    "by investigating African-American English (AAE) on Twitter.";

Document ProposeDocument() {
  Document d{"propose", U(kOriginal), {}, {}};
  const auto acr = static_cast<int64_t>(d.text.find(U"AAE"));
  const auto lf = static_cast<int64_t>(d.text.find(U"African-American English"));
  d.acronyms.push_back({acr, acr + 3});
  d.long_forms.push_back({lf, lf + 24});
  return d;
}

WordEmbeddings ProposeEmbeddings() {
  return WordEmbeddings::Parse(
      "6 4\n"
      "investigating 1 0.1 0 0\n"
      "scrutinize 1 0.5 0 0\n"
      "showcase 0 0 1 0.2\n"
      "case 0 0 1 0.6\n"
      "conversational 0 1 0 -5\n"
      "English 0.7 0.7 0 0\n");
}

struct Trained {
  tok::Tokenizer tokenizer;
  model::Model model;
};

Trained ToyTagger() {
  testing::TemplateCorpus gen(21);
  auto ds = gen.Generate(120);
  auto t = tok::BuildTokenizer(tok::Texts(ds));
  model::ModelConfig c;
  c.d_tok = 16;
  c.d_char = 8;
  c.n_filters = 8;
  c.encoder_layers = 3;
  c.vocab_size = static_cast<int64_t>(t.vocab().size());
  c.char_vocab_size = static_cast<int64_t>(t.chars().size());
  c.seed = 21;
  auto m = model::InitModel(c);
  training::TrainConfig cfg;
  cfg.epochs = 15;
  cfg.learning_rate = 3e-3;
  cfg.seed = 21;
  training::Train(m, t, ds, Dataset{}, cfg);
  return {t, m};
}

std::vector<std::u32string> Sentences(uint64_t seed, size_t n) {
  testing::TemplateCorpus gen(seed);
  return tok::Texts(gen.Generate(n));
}

}  // namespace

TEST_SUITE("augment") {
  TEST_CASE("propose-to-suggest swap keeps the annotation") {
    const Document d = ProposeDocument();
    Rng rng(1);
    auto a = AdversarialAugment(d, ProposeEmbeddings(), 0.8, 1.0, rng);
    CHECK(testing::S(a.document.text) ==
          "We conduct a case study of dialectal language in online conversational text "
          "by scrutinize African-American English (AAE) on Twitter.");
    CHECK(testing::Slice(a.document, a.document.acronyms[0]) == "AAE");
    CHECK(testing::Slice(a.document, a.document.long_forms[0]) == "African-American English");
    CHECK(a.replacements.size() == 2);
    for (const auto& r : a.replacements) CHECK(r.cosine >= 0.8);
  }

  TEST_CASE("no neighbour above the threshold leaves text unchanged") {
    const Document d = ProposeDocument();
    Rng rng(1);
    auto a = AdversarialAugment(d, ProposeEmbeddings(), 0.95, 1.0, rng);
    CHECK(a.document == d);
    CHECK(a.replacements.empty());
    Rng again(1);
    CHECK(AdversarialAugment(d, ProposeEmbeddings(), 0.8, 0.0, again).document == d);
  }

  TEST_CASE("nearest neighbour ties go to the smaller word") {
    auto e = WordEmbeddings::Parse("3 2\nq 1 0\nzeta 2 0\nbeta 3 0\n");
    auto n = e.Nearest(U"q", 0.8);
    REQUIRE(n.has_value());
    CHECK(n->word == U"beta");
    CHECK(n->cosine == doctest::Approx(1.0));
    CHECK_FALSE(e.Nearest(U"missing", 0.0).has_value());
  }

  TEST_CASE("malformed embedding files") {
    CHECK_THROWS_AS(WordEmbeddings::Parse(""), Error);
    CHECK_THROWS_AS(WordEmbeddings::Parse("two 3\n"), Error);
    CHECK_THROWS_AS(WordEmbeddings::Parse("1 2\nx 1\n"), Error);
    CHECK_THROWS_AS(WordEmbeddings::Parse("1 2\nx 1 y\n"), Error);
    CHECK_THROWS_AS(WordEmbeddings::Parse("2 2\nx 1 0\n"), Error);
    CHECK_THROWS_AS(WordEmbeddings::Parse("2 2\nx 1 0\nx 0 1\n"), Error);
  }

  TEST_CASE("annotations survive random augmentation") {
    testing::TemplateCorpus gen(31);
    auto ds = gen.Generate(80);
    // Filler words and a few gold-span words get nearby random vectors.
    std::vector<std::u32string> words;
    std::vector<std::vector<double>> vectors;
    Rng rng(5);
    std::set<std::u32string> seen;
    for (const Document& d : ds.documents) {
      for (const Span& w : tok::PreSplit(d.text)) {
        std::u32string word = d.text.substr(w.start, w.length());
        if (word.size() < 2 || !seen.insert(word).second) continue;
        for (int variant = 0; variant < 2; ++variant) {
          std::vector<double> v(5);
          for (double& x : v) x = rng.Uniform(-1, 1);
          words.push_back(variant == 0 ? word : word + U"x");
          vectors.push_back(v);
        }
      }
    }
    auto emb = WordEmbeddings::FromVectors(words, vectors);
    auto out = AugmentDataset(ds, emb, 0.3, 0.5, 9);
    CHECK(!out.documents.empty());
    size_t k = 0;
    for (const Document& a : out.documents) {
      while (ds.documents[k].id + "-adv" != a.id) ++k;
      const Document& d = ds.documents[k];
      REQUIRE(a.acronyms.size() == d.acronyms.size());
      REQUIRE(a.long_forms.size() == d.long_forms.size());
      for (size_t i = 0; i < d.acronyms.size(); ++i) {
        CHECK(testing::Slice(a, a.acronyms[i]) == testing::Slice(d, d.acronyms[i]));
      }
      for (size_t i = 0; i < d.long_forms.size(); ++i) {
        CHECK(testing::Slice(a, a.long_forms[i]) == testing::Slice(d, d.long_forms[i]));
      }
    }
    Rng r1(4), r2(4);
    const Document& d = ds.documents[0];
    auto a1 = AdversarialAugment(d, emb, 0.3, 0.5, r1);
    auto a2 = AdversarialAugment(d, emb, 0.3, 0.5, r2);
    CHECK(a1.document == a2.document);
    for (const auto& r : a1.replacements) {
      CHECK(emb.Cosine(r.original, r.replacement) >= 0.3);
    }
    CHECK(corpus::SerializeDataset(AugmentDataset(ds, emb, 0.3, 0.5, 9)) ==
          corpus::SerializeDataset(out));
  }

  TEST_CASE("pseudo-labelling") {
    auto toy = ToyTagger();
    auto sentences = Sentences(99, 20);
    CHECK_THROWS_AS(PseudoLabel(toy.model, toy.tokenizer, sentences, 1.5), Error);
    CHECK_THROWS_AS(PseudoLabel(toy.model, toy.tokenizer, sentences, 0.0), Error);

    // Replay the acceptance rule on dumped probabilities.
    const double tau = 0.9;
    std::set<std::string> expected;
    for (size_t i = 0; i < sentences.size(); ++i) {
      auto ts = toy.tokenizer.Tokenize(sentences[i]);
      const model::Matrix probs = model::Forward(ts, toy.model).probs;
      bool positive = false;
      double confidence = 1.0;
      for (Eigen::Index j = 0; j < probs.cols(); ++j) {
        Eigen::Index label = 0;
        const double p = probs.col(j).maxCoeff(&label);
        if (label == 0) continue;
        positive = true;
        confidence = std::min(confidence, p);
      }
      if (positive && confidence >= tau) expected.insert("pseudo-" + std::to_string(i));
    }
    auto accepted = PseudoLabel(toy.model, toy.tokenizer, sentences, tau);
    std::set<std::string> got;
    for (const Document& d : accepted.documents) got.insert(d.id);
    CHECK(got == expected);
    CHECK(!got.empty());

    // Raising tau never adds a sentence.
    std::set<std::string> previous = got;
    for (double t : {0.95, 0.99, 0.999, 1.0}) {
      std::set<std::string> now;
      for (const Document& d : PseudoLabel(toy.model, toy.tokenizer, sentences, t).documents) {
        now.insert(d.id);
        CHECK(previous.count(d.id) == 1);
      }
      previous = now;
    }

    // A model that always predicts O accepts nothing.
    auto silent = toy.model;
    silent.params.cls_b(0, 0) = 1e3;
    CHECK(PseudoLabel(silent, toy.tokenizer, sentences, 0.5).documents.empty());
  }
}
