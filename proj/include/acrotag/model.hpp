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

#ifndef ACROTAG_MODEL_HPP_
#define ACROTAG_MODEL_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "acrotag/loss.hpp"
#include "acrotag/tagging.hpp"
#include "acrotag/tokenizer.hpp"

namespace acrotag::model {

using Matrix = Eigen::MatrixXd;

struct ModelConfig {
  int64_t d_tok = 64;
  int64_t d_char = 32;
  // Zero disables the character pathway.
  int64_t n_filters = 64;
  int64_t filter_size = 4;
  int64_t char_len = 16;
  int64_t n_labels = tagging::kNumLabels;
  int64_t encoder_layers = 2;
  int64_t vocab_size = 0;
  int64_t char_vocab_size = 0;
  uint64_t seed = 0;
  bool freeze_char_embeddings = false;

  void Validate() const;
  int64_t hidden_width() const { return d_tok + n_filters; }
  bool operator==(const ModelConfig&) const = default;
};

// s' = tanh(left * s[i-1] + self * s[i] + right * s[i+1] + bias), with
// zero vectors past either end of the sequence.
struct EncoderLayer {
  Matrix left;
  Matrix self;
  Matrix right;
  Matrix bias;
};

// Every tensor is a column-major Eigen matrix; biases are single columns.
struct Parameters {
  Matrix tok_emb;   // d_tok x vocab
  Matrix char_emb;  // d_char x char vocab
  Matrix conv_w;    // n_filters x (filter_size * d_char)
  Matrix conv_b;    // n_filters x 1
  std::vector<EncoderLayer> encoder;
  Matrix cls_w;  // n_labels x (d_tok + n_filters)
  Matrix cls_b;
  Matrix mlm_w;  // vocab x d_tok
  Matrix mlm_b;

  template <typename F>
  void ForEach(F&& f) {
    f("tok_emb", tok_emb);
    f("char_emb", char_emb);
    f("conv_w", conv_w);
    f("conv_b", conv_b);
    for (size_t l = 0; l < encoder.size(); ++l) {
      const std::string p = "encoder." + std::to_string(l) + ".";
      f(p + "left", encoder[l].left);
      f(p + "self", encoder[l].self);
      f(p + "right", encoder[l].right);
      f(p + "bias", encoder[l].bias);
    }
    f("cls_w", cls_w);
    f("cls_b", cls_b);
    f("mlm_w", mlm_w);
    f("mlm_b", mlm_b);
  }
  template <typename F>
  void ForEach(F&& f) const {
    const_cast<Parameters*>(this)->ForEach(
        [&](const std::string& name, Matrix& m) { f(name, std::as_const(m)); });
  }

  Parameters ZerosLike() const;
  void SetZero();
  // this += scale * other
  void AddScaled(const Parameters& other, double scale);
  void Scale(double factor);
  double SquaredNorm() const;
  bool AllFinite() const;
  size_t Count() const;
};

struct Model {
  ModelConfig config;
  Parameters params;
};

Model InitModel(const ModelConfig& config);

// Removes the character pathway (n_filters = 0) and re-initializes the
// classifier for the narrower input.
void DropCharPathway(Model& model);

struct CharVectors {
  int64_t dim = 0;
  std::unordered_map<char32_t, std::vector<double>> vectors;
};

// Text file of "char d1 ... dD" lines.
CharVectors LoadCharVectors(const std::filesystem::path& path);
// Copies vectors for every known character; d_char must equal the file's
// dimension. Returns the number of characters covered.
size_t ApplyCharVectors(Model& model, const tok::CharVocab& chars,
                        const CharVectors& vectors);

struct CharFeature {
  Eigen::VectorXd values;   // n_filters
  Eigen::VectorXi argmax;   // winning window per filter
};

// Embeds the row, convolves every filter over the char_len - filter_size + 1
// windows and max-pools each filter over positions.
CharFeature ComputeCharFeature(std::span<const int32_t> char_row,
                               const Model& model);

struct ForwardTrace {
  Matrix s;      // d_tok x n: contextual vectors
  Matrix e;      // n_filters x n: character features
  Matrix h;      // (d_tok + n_filters) x n
  Matrix probs;  // n_labels x n
  std::vector<Matrix> layers;  // encoder input and every layer output
  Eigen::MatrixXi argmax;      // n_filters x n
};

// Context encoder only: layers[0] holds the token embeddings.
std::vector<Matrix> Encode(std::span<const int32_t> ids, const Model& model);

ForwardTrace Forward(const tok::TokenSequence& ts, const Model& model);

// Adds `scale` times the gradient of the augmented loss of one sequence to
// `grads` and returns the (unscaled) loss.
double AccumulateGradients(const Model& model, const tok::TokenSequence& ts,
                           const tagging::LabelSequence& labels,
                           std::span<const size_t> masked,
                           const training::LossWeights& weights, double scale,
                           Parameters& grads);

struct GradientResult {
  Parameters grads;
  double loss = 0.0;
};

GradientResult Gradients(const Model& model, const tok::TokenSequence& ts,
                         const tagging::LabelSequence& labels,
                         std::span<const size_t> masked,
                         const training::LossWeights& weights);

// Mean cross-entropy of the MLM head over `positions`, whose original ids
// are `targets`. `ids` already carries the corrupted inputs. When `grads` is
// non-null, `scale` times the gradient is added to it.
double MlmLoss(const Model& model, std::span<const int32_t> ids,
               std::span<const size_t> positions,
               std::span<const int32_t> targets, double scale = 1.0,
               Parameters* grads = nullptr);

// Argmax label per token.
tagging::LabelSequence Predict(const ForwardTrace& trace);

struct Checkpoint {
  Model model;
  std::optional<tok::Tokenizer> tokenizer;
};

// Binary file of named sections: config, optional vocabularies, one section
// per tensor. Loading a saved checkpoint reproduces every bit.
void SaveCheckpoint(const std::filesystem::path& path, const Model& model,
                    const tok::Tokenizer* tokenizer = nullptr);
std::string SerializeCheckpoint(const Model& model,
                                const tok::Tokenizer* tokenizer = nullptr);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);
Checkpoint ParseCheckpoint(std::string_view bytes);

}  // namespace acrotag::model

#endif  // ACROTAG_MODEL_HPP_
