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

#ifndef ACROTAG_TRAINING_HPP_
#define ACROTAG_TRAINING_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "acrotag/corpus.hpp"
#include "acrotag/eval.hpp"
#include "acrotag/loss.hpp"
#include "acrotag/model.hpp"
#include "acrotag/random.hpp"
#include "acrotag/tagging.hpp"
#include "acrotag/tokenizer.hpp"

namespace acrotag::training {

inline constexpr size_t kMaxSequenceLength = 512;

struct TrainConfig {
  double lambda_max = 2.0;
  double lambda_mask = 1.0;
  double mask_rate = 0.1;
  size_t batch_size = 8;
  double learning_rate = 1e-3;
  // Negative: 10% of the total number of optimizer steps.
  int64_t warmup_steps = -1;
  double max_grad_norm = 1.0;
  size_t epochs = 20;
  uint64_t seed = 0;
  double weight_decay = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  size_t max_seq_len = kMaxSequenceLength;
  tagging::BioOptions bio;

  void Validate() const;
};

struct Ablations {
  bool no_max_loss = false;
  bool no_mask_loss = false;
  bool no_char = false;
  bool no_mlm_init = false;
};

struct Example {
  std::string id;
  tok::TokenSequence tokens;
  tagging::LabelSequence labels;
};

// Tokenizes and labels every document, truncating to `max_seq_len` tokens.
// `truncated` (optional) receives the number of truncated documents.
std::vector<Example> PrepareExamples(const Dataset& dataset,
                                     const tok::Tokenizer& tokenizer,
                                     size_t max_seq_len = kMaxSequenceLength,
                                     const tagging::BioOptions& bio = {},
                                     size_t* truncated = nullptr);

struct MaskedTokens {
  tok::TokenSequence tokens;
  std::vector<size_t> positions;  // ascending
};

// Each token with a non-O label is replaced by the MASK piece with
// probability `rate`; its char row becomes all padding.
MaskedTokens MaskPositives(const tok::TokenSequence& ts,
                           const tagging::LabelSequence& labels, double rate,
                           int32_t mask_id, Rng& rng);

// Linear warmup from 0 over `warmup` steps, then linear decay to 0 at
// `total`. `step` counts from 1.
double LearningRate(size_t step, size_t total, size_t warmup, double base);

// Scales `grads` so the global L2 norm is at most `max_norm`; returns the
// norm before clipping.
double ClipGlobalNorm(model::Parameters& grads, double max_norm);

// Adaptive-moment optimizer with decoupled weight decay. Biases are not
// decayed.
class AdamW {
 public:
  struct Options {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    double weight_decay = 0.01;
  };

  AdamW(const model::Parameters& like, Options options);

  // Updates every tensor whose name passes `trainable`.
  void Step(model::Parameters& params, const model::Parameters& grads,
            double lr, const std::function<bool(const std::string&)>& trainable);

 private:
  Options options_;
  model::Parameters m_;
  model::Parameters v_;
  size_t t_ = 0;
};

struct Evaluation {
  double mean_cross_entropy = 0.0;
  eval::Metrics metrics;
};

// Unmasked forward pass over the examples of `dataset` (same order).
Evaluation Evaluate(const model::Model& model, const std::vector<Example>& examples,
                    const Dataset& dataset);

struct EpochRecord {
  size_t epoch = 0;
  Evaluation train;
  std::optional<Evaluation> dev;
  double mean_augmented_loss = 0.0;  // over the epoch's batches
};

struct TrainResult {
  std::vector<EpochRecord> history;  // entry 0 is the untrained model
  size_t best_epoch = 0;
  size_t truncated = 0;
  size_t steps = 0;
};

// Mini-batch training of the augmented loss. Restores the parameters of the
// epoch with the best dev combined F1 (last epoch without a dev set).
TrainResult Train(model::Model& model, const tok::Tokenizer& tokenizer,
                  const Dataset& train, const Dataset& dev,
                  const TrainConfig& config, const Ablations& ablations = {});

// Tab-separated history: epoch, split, loss, then P/R/F1 for acronyms,
// long-forms and combined.
std::string FormatHistory(const std::vector<EpochRecord>& history);

struct DocumentPrediction {
  tok::TokenSequence tokens;
  model::ForwardTrace trace;
  tagging::LabelSequence labels;
  tagging::SpanSets spans;
};

DocumentPrediction PredictText(const model::Model& model,
                               const tok::Tokenizer& tokenizer,
                               std::u32string_view text,
                               size_t max_seq_len = kMaxSequenceLength);

std::vector<Prediction> PredictDataset(const model::Model& model,
                                       const tok::Tokenizer& tokenizer,
                                       const Dataset& dataset,
                                       size_t max_seq_len = kMaxSequenceLength);

// --- masked language modelling ---------------------------------------------

struct PretrainConfig {
  size_t epochs = 6;
  double mask_prob = 0.15;
  size_t batch_size = 8;
  double learning_rate = 5e-3;
  int64_t warmup_steps = -1;
  double max_grad_norm = 1.0;
  uint64_t seed = 0;
  double weight_decay = 0.01;
  size_t max_seq_len = kMaxSequenceLength;

  void Validate() const;
};

struct MlmMask {
  std::vector<int32_t> ids;        // corrupted input
  std::vector<size_t> positions;   // ascending, never empty for n > 0
  std::vector<int32_t> targets;    // original ids at `positions`
};

// Selects each position with probability `prob` (at least one); a selected
// token becomes MASK 80% of the time, a random regular piece 10%, and stays
// unchanged 10%.
MlmMask MaskForMlm(const std::vector<int32_t>& ids, const tok::SubwordVocab& vocab,
                   double prob, Rng& rng);

struct PretrainResult {
  double initial_loss = 0.0;
  double final_loss = 0.0;
  std::vector<double> epoch_losses;  // held-out-mask loss after each epoch
};

// Trains token embeddings, the context encoder and the MLM head. Losses are
// measured on one fixed masking of the corpus drawn from the seed.
PretrainResult Pretrain(model::Model& model, const tok::Tokenizer& tokenizer,
                        const std::vector<std::u32string>& texts,
                        const PretrainConfig& config);

// --- end-to-end pipeline -----------------------------------------------------

struct FitConfig {
  model::ModelConfig model;
  tok::VocabBuildOptions vocab;
  PretrainConfig pretrain;
  TrainConfig train;
  Ablations ablations;
};

struct FitResult {
  tok::Tokenizer tokenizer;
  model::Model model;
  std::optional<PretrainResult> pretrain;
  TrainResult train;
};

// Builds vocabularies from the training texts (plus `extra_texts`),
// initializes the model, runs MLM pretraining unless ablated, then trains
// the tagger.
FitResult Fit(const Dataset& train, const Dataset& dev, const FitConfig& config,
              const std::vector<std::u32string>& extra_texts = {});

}  // namespace acrotag::training

#endif  // ACROTAG_TRAINING_HPP_
