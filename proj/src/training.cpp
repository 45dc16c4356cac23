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

#include "acrotag/training.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "acrotag/error.hpp"

namespace acrotag::training {
namespace {

bool IsBias(const std::string& name) {
  return name.ends_with("_b") || name.ends_with(".bias");
}

bool TaggerTrainable(const std::string& name, bool freeze_chars) {
  if (name.starts_with("mlm_")) return false;
  return !(freeze_chars && name == "char_emb");
}

bool MlmTrainable(const std::string& name) {
  return name == "tok_emb" || name.starts_with("encoder.") ||
         name.starts_with("mlm_");
}

size_t ResolveWarmup(int64_t warmup_steps, size_t total) {
  if (warmup_steps >= 0) return static_cast<size_t>(warmup_steps);
  return static_cast<size_t>(std::llround(0.1 * static_cast<double>(total)));
}

std::vector<std::vector<size_t>> Batches(size_t n, size_t batch_size, Rng& rng) {
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  rng.Shuffle(order);
  std::vector<std::vector<size_t>> batches;
  for (size_t i = 0; i < n; i += batch_size) {
    batches.emplace_back(order.begin() + i,
                         order.begin() + std::min(n, i + batch_size));
  }
  return batches;
}

size_t StepsPerEpoch(size_t n, size_t batch_size) {
  return (n + batch_size - 1) / batch_size;
}

void AppendRow(std::string& out, size_t epoch, const char* split,
               const Evaluation& e) {
  char buf[256];
  const eval::Metrics& m = e.metrics;
  std::snprintf(buf, sizeof(buf),
                "%zu\t%s\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\n",
                epoch, split, e.mean_cross_entropy, m.acronym.precision,
                m.acronym.recall, m.acronym.f1, m.long_form.precision,
                m.long_form.recall, m.long_form.f1, m.combined.precision,
                m.combined.recall, m.combined.f1);
  out += buf;
}

}  // namespace

void TrainConfig::Validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) Fail(ErrorCode::kInvalidArgument, "invalid train config: " + what);
  };
  require(mask_rate >= 0.0 && mask_rate <= 1.0, "mask_rate must be in [0, 1]");
  require(lambda_max >= 0.0 && lambda_mask >= 0.0, "lambdas must be >= 0");
  require(max_grad_norm > 0.0, "max_grad_norm must be > 0");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(learning_rate > 0.0, "learning rate must be > 0");
  require(max_seq_len >= 1, "max_seq_len must be >= 1");
}

void PretrainConfig::Validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) Fail(ErrorCode::kInvalidArgument, "invalid pretrain config: " + what);
  };
  require(mask_prob > 0.0 && mask_prob <= 1.0, "mask_prob must be in (0, 1]");
  require(max_grad_norm > 0.0, "max_grad_norm must be > 0");
  require(batch_size >= 1, "batch_size must be >= 1");
  require(learning_rate > 0.0, "learning rate must be > 0");
}

std::vector<Example> PrepareExamples(const Dataset& dataset,
                                     const tok::Tokenizer& tokenizer,
                                     size_t max_seq_len,
                                     const tagging::BioOptions& bio,
                                     size_t* truncated) {
  std::vector<Example> out;
  out.reserve(dataset.documents.size());
  size_t cut = 0;
  for (const Document& d : dataset.documents) {
    Example ex{d.id, tokenizer.Tokenize(d.text), {}};
    ex.labels = tagging::SpansToBio(d, ex.tokens, tokenizer, bio);
    if (ex.tokens.size() > max_seq_len) {
      ++cut;
      ex.tokens.Truncate(max_seq_len);
      ex.labels.resize(max_seq_len);
      // A run cut mid-way keeps its B label, so the labels stay well-formed.
    }
    out.push_back(std::move(ex));
  }
  if (truncated != nullptr) *truncated = cut;
  return out;
}

MaskedTokens MaskPositives(const tok::TokenSequence& ts,
                           const tagging::LabelSequence& labels, double rate,
                           int32_t mask_id, Rng& rng) {
  if (rate < 0.0 || rate > 1.0) {
    Fail(ErrorCode::kInvalidArgument, "mask rate must be in [0, 1]");
  }
  if (labels.size() != ts.size()) {
    Fail(ErrorCode::kInvalidArgument, "label and token counts differ");
  }
  MaskedTokens out{ts, {}};
  for (size_t i = 0; i < ts.size(); ++i) {
    if (labels[i] == tagging::kOutside) continue;
    if (!rng.Bernoulli(rate)) continue;
    out.tokens.ids[i] = mask_id;
    out.tokens.tokens[i] = std::string(tok::kMaskPiece);
    std::fill(out.tokens.char_rows[i].begin(), out.tokens.char_rows[i].end(),
              tok::CharVocab::kPadId);
    out.positions.push_back(i);
  }
  return out;
}

double LearningRate(size_t step, size_t total, size_t warmup, double base) {
  if (step <= warmup && warmup > 0) {
    return base * static_cast<double>(step) / static_cast<double>(warmup);
  }
  if (total <= warmup) return base;
  const double remaining = static_cast<double>(total) - static_cast<double>(step);
  return base * std::max(0.0, remaining) / static_cast<double>(total - warmup);
}

double ClipGlobalNorm(model::Parameters& grads, double max_norm) {
  const double norm = std::sqrt(grads.SquaredNorm());
  if (norm > max_norm) grads.Scale(max_norm / norm);
  return norm;
}

AdamW::AdamW(const model::Parameters& like, Options options)
    : options_(options), m_(like.ZerosLike()), v_(like.ZerosLike()) {}

void AdamW::Step(model::Parameters& params, const model::Parameters& grads,
                 double lr,
                 const std::function<bool(const std::string&)>& trainable) {
  ++t_;
  const double c1 = 1.0 - std::pow(options_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(options_.beta2, static_cast<double>(t_));
  std::vector<const model::Matrix*> g;
  std::vector<model::Matrix*> m, v;
  grads.ForEach([&](const std::string&, const model::Matrix& x) { g.push_back(&x); });
  m_.ForEach([&](const std::string&, model::Matrix& x) { m.push_back(&x); });
  v_.ForEach([&](const std::string&, model::Matrix& x) { v.push_back(&x); });
  size_t k = 0;
  params.ForEach([&](const std::string& name, model::Matrix& p) {
    const size_t i = k++;
    if (!trainable(name)) return;
    m[i]->array() = options_.beta1 * m[i]->array() + (1 - options_.beta1) * g[i]->array();
    v[i]->array() = options_.beta2 * v[i]->array() +
                    (1 - options_.beta2) * g[i]->array().square();
    if (!IsBias(name)) p *= 1.0 - lr * options_.weight_decay;
    p.array() -= lr * (m[i]->array() / c1) /
                 ((v[i]->array() / c2).sqrt() + options_.epsilon);
  });
}

DocumentPrediction PredictText(const model::Model& model,
                               const tok::Tokenizer& tokenizer,
                               std::u32string_view text, size_t max_seq_len) {
  DocumentPrediction p;
  p.tokens = tokenizer.Tokenize(text);
  p.tokens.Truncate(max_seq_len);
  p.trace = model::Forward(p.tokens, model);
  p.labels = model::Predict(p.trace);
  p.spans = tagging::BioToSpans(p.labels, p.tokens);
  return p;
}

std::vector<Prediction> PredictDataset(const model::Model& model,
                                       const tok::Tokenizer& tokenizer,
                                       const Dataset& dataset,
                                       size_t max_seq_len) {
  std::vector<Prediction> out;
  out.reserve(dataset.documents.size());
  for (const Document& d : dataset.documents) {
    DocumentPrediction p = PredictText(model, tokenizer, d.text, max_seq_len);
    out.push_back({d.id, std::move(p.spans.acronyms), std::move(p.spans.long_forms)});
  }
  return out;
}

Evaluation Evaluate(const model::Model& model, const std::vector<Example>& examples,
                    const Dataset& dataset) {
  Evaluation e;
  std::vector<Prediction> preds;
  preds.reserve(examples.size());
  double ce = 0.0;
  size_t counted = 0;
  for (const Example& ex : examples) {
    const model::ForwardTrace t = model::Forward(ex.tokens, model);
    if (ex.tokens.size() > 0) {
      const std::vector<double> losses = TokenLosses(t.probs, ex.labels);
      ce += std::accumulate(losses.begin(), losses.end(), 0.0) /
            static_cast<double>(losses.size());
      ++counted;
    }
    tagging::SpanSets spans = tagging::BioToSpans(model::Predict(t), ex.tokens);
    preds.push_back({ex.id, std::move(spans.acronyms), std::move(spans.long_forms)});
  }
  e.mean_cross_entropy = counted > 0 ? ce / static_cast<double>(counted) : 0.0;
  e.metrics = eval::Score(preds, dataset);
  return e;
}

TrainResult Train(model::Model& model, const tok::Tokenizer& tokenizer,
                  const Dataset& train, const Dataset& dev,
                  const TrainConfig& config, const Ablations& ablations) {
  config.Validate();
  if (train.documents.empty()) {
    Fail(ErrorCode::kInvalidArgument, "training set is empty");
  }
  if (static_cast<int64_t>(tokenizer.vocab().size()) != model.config.vocab_size ||
      static_cast<int64_t>(tokenizer.chars().size()) != model.config.char_vocab_size ||
      static_cast<int64_t>(tokenizer.char_len()) != model.config.char_len) {
    Fail(ErrorCode::kInvalidArgument, "tokenizer does not match the model");
  }
  if (ablations.no_char && model.config.n_filters > 0) model::DropCharPathway(model);
  LossWeights weights{ablations.no_max_loss ? 0.0 : config.lambda_max,
                      ablations.no_mask_loss ? 0.0 : config.lambda_mask};

  TrainResult result;
  size_t dev_truncated = 0;
  const std::vector<Example> examples = PrepareExamples(
      train, tokenizer, config.max_seq_len, config.bio, &result.truncated);
  const std::vector<Example> dev_examples =
      PrepareExamples(dev, tokenizer, config.max_seq_len, config.bio, &dev_truncated);
  const bool has_dev = !dev_examples.empty();

  const size_t total = config.epochs * StepsPerEpoch(examples.size(), config.batch_size);
  const size_t warmup = ResolveWarmup(config.warmup_steps, total);
  const bool freeze = model.config.freeze_char_embeddings;
  auto trainable = [freeze](const std::string& name) {
    return TaggerTrainable(name, freeze);
  };

  Rng rng(config.seed);
  AdamW optimizer(model.params, {config.beta1, config.beta2, config.epsilon,
                                 config.weight_decay});
  model::Parameters grads = model.params.ZerosLike();

  auto record = [&](size_t epoch, double aug) {
    EpochRecord r{epoch, Evaluate(model, examples, train), std::nullopt, aug};
    if (has_dev) r.dev = Evaluate(model, dev_examples, dev);
    result.history.push_back(std::move(r));
  };
  record(0, 0.0);
  double best_f1 = -1.0;
  model::Parameters best = model.params;

  for (size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    double epoch_loss = 0.0;
    const auto batches = Batches(examples.size(), config.batch_size, rng);
    for (const std::vector<size_t>& batch : batches) {
      grads.SetZero();
      double batch_loss = 0.0;
      const double scale = 1.0 / static_cast<double>(batch.size());
      for (size_t idx : batch) {
        const Example& ex = examples[idx];
        const MaskedTokens masked = MaskPositives(
            ex.tokens, ex.labels, config.mask_rate, tokenizer.vocab().mask_id(), rng);
        batch_loss += scale * model::AccumulateGradients(
                                  model, masked.tokens, ex.labels, masked.positions,
                                  weights, scale, grads);
      }
      if (!std::isfinite(batch_loss) || !grads.AllFinite()) {
        Fail(ErrorCode::kNumeric,
             "non-finite loss at epoch " + std::to_string(epoch) + ", step " +
                 std::to_string(result.steps + 1) + " (first document " +
                 examples[batch.front()].id + ", loss " + std::to_string(batch_loss) + ")");
      }
      ClipGlobalNorm(grads, config.max_grad_norm);
      ++result.steps;
      optimizer.Step(model.params, grads,
                     LearningRate(result.steps, total, warmup, config.learning_rate),
                     trainable);
      epoch_loss += batch_loss;
    }
    record(epoch, epoch_loss / static_cast<double>(batches.size()));
    const double f1 = has_dev ? result.history.back().dev->metrics.combined.f1 : 0.0;
    if (!has_dev || f1 > best_f1) {
      best_f1 = f1;
      best = model.params;
      result.best_epoch = epoch;
    }
  }
  if (config.epochs > 0) model.params = std::move(best);
  return result;
}

std::string FormatHistory(const std::vector<EpochRecord>& history) {
  std::string out =
      "epoch\tsplit\tloss\tacr_p\tacr_r\tacr_f1\tlf_p\tlf_r\tlf_f1\tp\tr\tf1\n";
  for (const EpochRecord& r : history) {
    AppendRow(out, r.epoch, "train", r.train);
    if (r.dev) AppendRow(out, r.epoch, "dev", *r.dev);
  }
  return out;
}

MlmMask MaskForMlm(const std::vector<int32_t>& ids, const tok::SubwordVocab& vocab,
                   double prob, Rng& rng) {
  MlmMask out{ids, {}, {}};
  if (ids.empty()) return out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (rng.Bernoulli(prob)) out.positions.push_back(i);
  }
  if (out.positions.empty()) out.positions.push_back(rng.Below(ids.size()));
  auto is_special = [&](int32_t id) {
    return id == vocab.pad_id() || id == vocab.unk_id() || id == vocab.mask_id();
  };
  for (size_t pos : out.positions) {
    out.targets.push_back(ids[pos]);
    const double r = rng.Uniform();
    if (r < 0.8) {
      out.ids[pos] = vocab.mask_id();
    } else if (r < 0.9 && vocab.size() > 3) {
      int32_t id = 0;
      do {
        id = static_cast<int32_t>(rng.Below(vocab.size()));
      } while (is_special(id));
      out.ids[pos] = id;
    }
  }
  return out;
}

PretrainResult Pretrain(model::Model& model, const tok::Tokenizer& tokenizer,
                        const std::vector<std::u32string>& texts,
                        const PretrainConfig& config) {
  config.Validate();
  std::vector<std::vector<int32_t>> sequences;
  for (const std::u32string& t : texts) {
    tok::TokenSequence ts = tokenizer.Tokenize(t);
    ts.Truncate(config.max_seq_len);
    if (ts.size() > 0) sequences.push_back(std::move(ts.ids));
  }
  if (sequences.empty()) {
    Fail(ErrorCode::kInvalidArgument, "pretraining corpus has no tokens");
  }

  Rng eval_rng(config.seed ^ 0x5DEECE66DULL);
  std::vector<MlmMask> held;
  held.reserve(sequences.size());
  for (const auto& ids : sequences) {
    held.push_back(MaskForMlm(ids, tokenizer.vocab(), config.mask_prob, eval_rng));
  }
  auto held_loss = [&] {
    double total = 0.0;
    for (const MlmMask& m : held) {
      total += model::MlmLoss(model, m.ids, m.positions, m.targets);
    }
    return total / static_cast<double>(held.size());
  };

  PretrainResult result;
  result.initial_loss = held_loss();
  const size_t total = config.epochs * StepsPerEpoch(sequences.size(), config.batch_size);
  const size_t warmup = ResolveWarmup(config.warmup_steps, total);
  Rng rng(config.seed);
  AdamW optimizer(model.params, {0.9, 0.999, 1e-8, config.weight_decay});
  model::Parameters grads = model.params.ZerosLike();
  size_t step = 0;
  for (size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    for (const std::vector<size_t>& batch :
         Batches(sequences.size(), config.batch_size, rng)) {
      grads.SetZero();
      const double scale = 1.0 / static_cast<double>(batch.size());
      double loss = 0.0;
      for (size_t idx : batch) {
        const MlmMask m = MaskForMlm(sequences[idx], tokenizer.vocab(),
                                     config.mask_prob, rng);
        loss += model::MlmLoss(model, m.ids, m.positions, m.targets, scale, &grads);
      }
      if (!std::isfinite(loss) || !grads.AllFinite()) {
        Fail(ErrorCode::kNumeric, "non-finite MLM loss at epoch " + std::to_string(epoch));
      }
      ClipGlobalNorm(grads, config.max_grad_norm);
      ++step;
      optimizer.Step(model.params, grads,
                     LearningRate(step, total, warmup, config.learning_rate),
                     MlmTrainable);
    }
    result.epoch_losses.push_back(held_loss());
  }
  result.final_loss =
      result.epoch_losses.empty() ? result.initial_loss : result.epoch_losses.back();
  return result;
}

FitResult Fit(const Dataset& train, const Dataset& dev, const FitConfig& config,
              const std::vector<std::u32string>& extra_texts) {
  std::vector<std::u32string> texts = tok::Texts(train);
  texts.insert(texts.end(), extra_texts.begin(), extra_texts.end());
  FitResult r{tok::BuildTokenizer(texts, config.vocab,
                                  static_cast<size_t>(config.model.char_len)),
              {}, std::nullopt, {}};
  model::ModelConfig mc = config.model;
  mc.vocab_size = static_cast<int64_t>(r.tokenizer.vocab().size());
  mc.char_vocab_size = static_cast<int64_t>(r.tokenizer.chars().size());
  if (config.ablations.no_char) mc.n_filters = 0;
  r.model = model::InitModel(mc);
  if (!config.ablations.no_mlm_init) {
    r.pretrain = Pretrain(r.model, r.tokenizer, texts, config.pretrain);
  }
  r.train = Train(r.model, r.tokenizer, train, dev, config.train, config.ablations);
  return r;
}

}  // namespace acrotag::training
