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

#include "acrotag/error.hpp"
#include "acrotag/loss.hpp"
#include "acrotag/model.hpp"
#include "acrotag/training.hpp"
#include "support/gradcheck.hpp"
#include "support/synthetic.hpp"
#include "support/util.hpp"

using namespace acrotag;
using model::Matrix;

namespace {

model::ModelConfig SmallConfig(uint64_t seed = 1) {
  model::ModelConfig c;
  c.d_tok = 16;
  c.d_char = 8;
  c.n_filters = 8;
  c.vocab_size = 40;
  c.char_vocab_size = 20;
  c.seed = seed;
  return c;
}

tok::TokenSequence Sequence(std::vector<int32_t> ids, int64_t char_len = 16) {
  tok::TokenSequence ts;
  for (size_t i = 0; i < ids.size(); ++i) {
    ts.tokens.push_back("w");
    ts.ids.push_back(ids[i]);
    ts.offsets.push_back({static_cast<int64_t>(2 * i), static_cast<int64_t>(2 * i + 1)});
    std::vector<int32_t> row(static_cast<size_t>(char_len), 0);
    row[0] = 2 + ids[i] % 10;
    row[1] = 3 + ids[i] % 7;
    ts.char_rows.push_back(row);
  }
  return ts;
}

bool BitEqual(const model::Parameters& a, const model::Parameters& b) {
  std::vector<const Matrix*> theirs;
  b.ForEach([&](const std::string&, const Matrix& m) { theirs.push_back(&m); });
  size_t k = 0;
  bool same = true;
  a.ForEach([&](const std::string&, const Matrix& m) {
    const Matrix& o = *theirs[k++];
    same = same && m.rows() == o.rows() && m.cols() == o.cols() &&
           std::memcmp(m.data(), o.data(), sizeof(double) * m.size()) == 0;
  });
  return same;
}

}  // namespace

TEST_SUITE("loss") {
  TEST_CASE("token losses") {
    Matrix probs(5, 3);
    probs.col(0) << 1.0, 0, 0, 0, 0;
    probs.col(1).setConstant(0.2);
    probs.col(2) << 0.5, 0.5, 0, 0, 0;
    auto l = training::TokenLosses(probs, {0, 3, 1});
    CHECK(l[0] == 0.0);
    CHECK(l[1] == doctest::Approx(std::log(5.0)));
    CHECK(l[1] == doctest::Approx(1.6094).epsilon(1e-4));
    CHECK(l[2] == doctest::Approx(0.6931).epsilon(1e-4));
    auto floored = training::TokenLosses(probs, {2, 2, 2});
    CHECK(floored[2] == doctest::Approx(-std::log(1e-12)));
  }

  TEST_CASE("augmented loss") {
    const std::vector<double> L = {0.2, 0.5, 0.8};
    const std::vector<size_t> mask0 = {0};
    CHECK(std::abs(training::AugmentedLoss(L, mask0, {2.0, 1.0}) - 2.3) < 1e-12);
    CHECK(training::AugmentedLoss(L, mask0, {0.0, 0.0}) == (0.2 + 0.5 + 0.8) / 3);
    const std::vector<double> one = {0.7};
    CHECK(training::AugmentedLoss(one, {}, {2.0, 1.0}) == doctest::Approx(0.7 + 2 * 0.7));
    CHECK(training::AugmentedLoss({}, {}, {2.0, 1.0}) == 0.0);
  }

  TEST_CASE("augmented loss bounds") {
    Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> L(1 + rng.Below(10));
      for (double& x : L) x = rng.Uniform(0, 5);
      double mean = 0;
      for (double x : L) mean += x / static_cast<double>(L.size());
      const double max = *std::max_element(L.begin(), L.end());
      const double min = *std::min_element(L.begin(), L.end());
      CHECK(max >= mean - 1e-15);
      CHECK(mean >= min - 1e-15);
      std::vector<size_t> masked;
      for (size_t i = 0; i < L.size(); ++i) {
        if (rng.Bernoulli(0.3)) masked.push_back(i);
      }
      const double aug = training::AugmentedLoss(L, masked, {rng.Uniform(0, 3), rng.Uniform(0, 3)});
      CHECK(aug >= mean - 1e-12);
    }
  }

  TEST_CASE("argmax takes the first maximum") {
    const std::vector<double> L = {0.1, 0.9, 0.9};
    CHECK(training::ArgMax(L) == 1);
  }
}

TEST_SUITE("model") {
  TEST_CASE("initialization is seeded") {
    auto a = model::InitModel(SmallConfig(5));
    auto b = model::InitModel(SmallConfig(5));
    auto c = model::InitModel(SmallConfig(6));
    CHECK(BitEqual(a.params, b.params));
    CHECK_FALSE(BitEqual(a.params, c.params));
  }

  TEST_CASE("invalid configs") {
    auto c = SmallConfig();
    c.filter_size = 17;
    CHECK_THROWS_AS(model::InitModel(c), Error);
    c = SmallConfig();
    c.vocab_size = 0;
    CHECK_THROWS_AS(model::InitModel(c), Error);
  }

  TEST_CASE("shapes") {
    auto c = SmallConfig();
    c.d_tok = 64;
    c.n_filters = 64;
    auto m = model::InitModel(c);
    auto t = model::Forward(Sequence({4, 5, 6}), m);
    CHECK(t.h.rows() == 128);
    CHECK(t.h.cols() == 3);
    CHECK(t.probs.cols() == 3);
    for (Eigen::Index i = 0; i < t.probs.cols(); ++i) {
      CHECK(std::abs(t.probs.col(i).sum() - 1.0) < 1e-9);
    }
    CHECK(model::Forward(Sequence({}), m).probs.cols() == 0);
  }

  TEST_CASE("char feature") {
    auto m = model::InitModel(SmallConfig());
    std::vector<int32_t> row(16, 0);
    row[0] = 5;
    row[1] = 6;
    auto f = model::ComputeCharFeature(row, m);
    CHECK(f.values.size() == 8);
    for (Eigen::Index k = 0; k < f.argmax.size(); ++k) {
      CHECK(f.argmax(k) >= 0);
      CHECK(f.argmax(k) < 13);
    }
    // An all-pad row pools the same constant for every call.
    std::vector<int32_t> pads(16, 0);
    auto p1 = model::ComputeCharFeature(pads, m);
    Eigen::VectorXd expected = m.params.conv_b.col(0);
    for (int64_t k = 0; k < 4; ++k) {
      expected += m.params.conv_w.middleCols(k * 8, 8) * m.params.char_emb.col(0);
    }
    CHECK((p1.values - expected).cwiseAbs().maxCoeff() < 1e-12);

    // Pure per-token function: context and position do not matter.
    auto t1 = model::Forward(Sequence({7, 9, 11}), m);
    auto t2 = model::Forward(Sequence({30, 9, 2, 9}), m);
    CHECK(t1.e.col(1) == t2.e.col(1));
    CHECK(t2.e.col(1) == t2.e.col(3));
  }

  TEST_CASE("single token sees only boundary padding") {
    auto m = model::InitModel(SmallConfig());
    Eigen::VectorXd s = m.params.tok_emb.col(12);
    for (const auto& layer : m.params.encoder) {
      s = (layer.self * s + layer.bias.col(0)).array().tanh().matrix();
    }
    auto t = model::Forward(Sequence({12}), m);
    CHECK((t.s.col(0) - s).cwiseAbs().maxCoeff() < 1e-14);
  }

  TEST_CASE("dropping the char pathway") {
    auto m = model::InitModel(SmallConfig());
    model::DropCharPathway(m);
    CHECK(m.config.n_filters == 0);
    auto t = model::Forward(Sequence({1, 2}), m);
    CHECK(t.h.rows() == 16);
    CHECK(t.e.rows() == 0);
  }

  TEST_CASE("gradients match finite differences") {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      auto gc = testing::RandomGradCheckCase(seed);
      auto r = testing::CheckGradients(gc.model, gc.tokens, gc.labels, gc.masked, {2.0, 1.0});
      INFO("seed ", seed, " worst ", r.worst);
      CHECK(r.loss_gap < 1e-12);
      CHECK(r.max_relative_error < 1e-4);
    }
  }

  TEST_CASE("inactive parameters get zero gradient") {
    auto gc = testing::RandomGradCheckCase(9);
    auto g = model::Gradients(gc.model, gc.tokens, gc.labels, gc.masked, {2.0, 1.0});
    CHECK(g.grads.mlm_w.cwiseAbs().maxCoeff() == 0.0);
    CHECK(g.grads.mlm_b.cwiseAbs().maxCoeff() == 0.0);
    for (int32_t id = 0; id < 20; ++id) {
      if (std::find(gc.tokens.ids.begin(), gc.tokens.ids.end(), id) == gc.tokens.ids.end()) {
        CHECK(g.grads.tok_emb.col(id).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }

  TEST_CASE("max-loss gradient is linear in lambda_max") {
    auto gc = testing::RandomGradCheckCase(3);
    auto g0 = model::Gradients(gc.model, gc.tokens, gc.labels, gc.masked, {0.0, 1.0}).grads;
    auto g1 = model::Gradients(gc.model, gc.tokens, gc.labels, gc.masked, {1.0, 1.0}).grads;
    auto g2 = model::Gradients(gc.model, gc.tokens, gc.labels, gc.masked, {2.0, 1.0}).grads;
    auto d1 = g1;
    d1.AddScaled(g0, -1.0);
    auto d2 = g2;
    d2.AddScaled(g0, -1.0);
    d1.Scale(2.0);
    d2.AddScaled(d1, -1.0);
    CHECK(std::sqrt(d2.SquaredNorm()) < 1e-12 * (1.0 + std::sqrt(d1.SquaredNorm())));
  }

  TEST_CASE("MLM loss") {
    auto c = SmallConfig();
    c.vocab_size = 300;
    auto m = model::InitModel(c);
    std::vector<int32_t> ids = {5, 2, 7, 2, 9, 11};
    std::vector<size_t> pos = {1, 3};
    std::vector<int32_t> targets = {40, 41};
    const double loss = model::MlmLoss(m, ids, pos, targets);
    CHECK(std::abs(loss - std::log(300.0)) < 0.1 * std::log(300.0));
    CHECK(model::MlmLoss(m, ids, pos, targets) == loss);
    CHECK_THROWS_AS(model::MlmLoss(m, ids, {}, {}), Error);

    // Only the masked positions enter: the MLM head receives no gradient
    // through the other columns, checked against finite differences.
    auto grads = m.params.ZerosLike();
    model::MlmLoss(m, ids, pos, targets, 1.0, &grads);
    CHECK(grads.cls_w.cwiseAbs().maxCoeff() == 0.0);
    auto probe = m;
    for (auto [r, col] : {std::pair{40, 3}, {41, 0}, {100, 5}}) {
      const double saved = probe.params.mlm_w(r, col);
      probe.params.mlm_w(r, col) = saved + 1e-5;
      const double up = model::MlmLoss(probe, ids, pos, targets);
      probe.params.mlm_w(r, col) = saved - 1e-5;
      const double down = model::MlmLoss(probe, ids, pos, targets);
      probe.params.mlm_w(r, col) = saved;
      CHECK(grads.mlm_w(r, col) == doctest::Approx((up - down) / 2e-5).epsilon(1e-6));
    }
    const double saved = probe.params.encoder[0].self(2, 3);
    probe.params.encoder[0].self(2, 3) = saved + 1e-5;
    const double up = model::MlmLoss(probe, ids, pos, targets);
    probe.params.encoder[0].self(2, 3) = saved - 1e-5;
    const double down = model::MlmLoss(probe, ids, pos, targets);
    CHECK(grads.encoder[0].self(2, 3) == doctest::Approx((up - down) / 2e-5).epsilon(1e-5));
  }

  TEST_CASE("checkpoint round trip is bitwise") {
    testing::TemplateCorpus gen(2);
    auto texts = tok::Texts(gen.Generate(30));
    auto tokenizer = tok::BuildTokenizer(texts);
    auto c = SmallConfig(4);
    c.vocab_size = static_cast<int64_t>(tokenizer.vocab().size());
    c.char_vocab_size = static_cast<int64_t>(tokenizer.chars().size());
    auto m = model::InitModel(c);
    testing::TempDir dir("ckpt");
    model::SaveCheckpoint(dir / "m.bin", m, &tokenizer);
    auto back = model::LoadCheckpoint(dir / "m.bin");
    CHECK(back.model.config == m.config);
    CHECK(BitEqual(back.model.params, m.params));
    REQUIRE(back.tokenizer.has_value());
    CHECK(back.tokenizer->vocab().pieces() == tokenizer.vocab().pieces());
    CHECK(back.tokenizer->chars().chars() == tokenizer.chars().chars());
    CHECK(model::SerializeCheckpoint(back.model, &*back.tokenizer) ==
          corpus::ReadFile(dir / "m.bin"));

    std::string bytes = corpus::ReadFile(dir / "m.bin");
    CHECK_THROWS_AS(model::ParseCheckpoint(bytes.substr(0, bytes.size() / 2)), Error);
    CHECK_THROWS_AS(model::ParseCheckpoint("not a checkpoint"), Error);
  }

  TEST_CASE("char vectors") {
    testing::TempDir dir("charvec");
    corpus::WriteFile(dir / "v.txt", "a 0.5 0.25\nb 1 2\n");
    auto v = model::LoadCharVectors(dir / "v.txt");
    CHECK(v.dim == 2);
    auto c = SmallConfig();
    c.d_char = 2;
    auto m = model::InitModel(c);
    tok::CharVocab chars({U'a', U'z'});
    CHECK(model::ApplyCharVectors(m, chars, v) == 1);
    CHECK(m.params.char_emb(0, chars.Id(U'a')) == 0.5);
    corpus::WriteFile(dir / "bad.txt", "a 0.5\nb 1 2\n");
    CHECK_THROWS_AS(model::LoadCharVectors(dir / "bad.txt"), Error);
  }
}
