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

#include "acrotag/model.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <sstream>
#include <utility>

#include "acrotag/error.hpp"
#include "acrotag/random.hpp"
#include "acrotag/unicode.hpp"

namespace acrotag::model {
namespace {

constexpr double kEmbeddingScale = 0.1;

void FillUniform(Matrix& m, double limit, Rng& rng) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = rng.Uniform(-limit, limit);
  }
}

void FillGlorot(Matrix& m, Rng& rng) {
  const double fan = static_cast<double>(m.rows() + m.cols());
  FillUniform(m, fan > 0 ? std::sqrt(6.0 / fan) : 0.0, rng);
}

void InitClassifier(Model& model, Rng& rng) {
  const ModelConfig& c = model.config;
  model.params.cls_w.resize(c.n_labels, c.hidden_width());
  FillGlorot(model.params.cls_w, rng);
  model.params.cls_b = Matrix::Zero(c.n_labels, 1);
}

// Column-wise softmax.
Matrix Softmax(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index j = 0; j < logits.cols(); ++j) {
    const double shift = logits.col(j).maxCoeff();
    out.col(j) = (logits.col(j).array() - shift).exp().matrix();
    out.col(j) /= out.col(j).sum();
  }
  return out;
}

void CheckIds(std::span<const int32_t> ids, int64_t vocab_size) {
  for (int32_t id : ids) {
    if (id < 0 || id >= vocab_size) {
      Fail(ErrorCode::kInvalidArgument,
           "token id " + std::to_string(id) + " outside vocabulary of size " +
               std::to_string(vocab_size));
    }
  }
}

// Backpropagates dS (gradient w.r.t. the last encoder layer) through the
// encoder stack into the token embeddings.
void BackpropEncoder(const Model& model, const std::vector<Matrix>& layers,
                     std::span<const int32_t> ids, Matrix d_out,
                     Parameters& grads) {
  const Eigen::Index n = d_out.cols();
  if (n == 0) return;
  for (size_t l = model.params.encoder.size(); l-- > 0;) {
    const EncoderLayer& layer = model.params.encoder[l];
    EncoderLayer& g = grads.encoder[l];
    const Matrix& in = layers[l];
    const Matrix& out = layers[l + 1];
    const Matrix d_pre =
        (d_out.array() * (1.0 - out.array().square())).matrix();

    g.self.noalias() += d_pre * in.transpose();
    g.bias += d_pre.rowwise().sum();
    Matrix d_in = layer.self.transpose() * d_pre;
    if (n > 1) {
      // Column i of the pre-activation saw in[i-1] through `left` and
      // in[i+1] through `right`.
      g.left.noalias() += d_pre.rightCols(n - 1) * in.leftCols(n - 1).transpose();
      g.right.noalias() += d_pre.leftCols(n - 1) * in.rightCols(n - 1).transpose();
      d_in.leftCols(n - 1).noalias() +=
          layer.left.transpose() * d_pre.rightCols(n - 1);
      d_in.rightCols(n - 1).noalias() +=
          layer.right.transpose() * d_pre.leftCols(n - 1);
    }
    d_out = std::move(d_in);
  }
  for (Eigen::Index i = 0; i < n; ++i) grads.tok_emb.col(ids[i]) += d_out.col(i);
}

void BackpropChars(const Model& model, const tok::TokenSequence& ts,
                   const Eigen::MatrixXi& argmax, const Matrix& d_e,
                   Parameters& grads) {
  const ModelConfig& c = model.config;
  if (c.n_filters == 0) return;
  const Eigen::Index dc = c.d_char;
  for (Eigen::Index i = 0; i < d_e.cols(); ++i) {
    const std::vector<int32_t>& row = ts.char_rows[i];
    for (Eigen::Index f = 0; f < c.n_filters; ++f) {
      const double g = d_e(f, i);
      if (g == 0.0) continue;
      const int p = argmax(f, i);
      grads.conv_b(f, 0) += g;
      for (Eigen::Index k = 0; k < c.filter_size; ++k) {
        const int32_t ch = row[p + k];
        grads.conv_w.row(f).segment(k * dc, dc) +=
            g * model.params.char_emb.col(ch).transpose();
        if (!c.freeze_char_embeddings) {
          grads.char_emb.col(ch) +=
              g * model.params.conv_w.row(f).segment(k * dc, dc).transpose();
        }
      }
    }
  }
}

// --- checkpoint encoding ----------------------------------------------------

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

constexpr std::string_view kMagic = "ACROTAG\x01";

template <typename T>
void Put(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T Get() {
    T value;
    std::memcpy(&value, Take(sizeof(T)).data(), sizeof(T));
    return value;
  }

  std::string_view Take(size_t n) {
    if (n > bytes_.size() - pos_) {
      Fail(ErrorCode::kParse, "checkpoint is truncated");
    }
    std::string_view out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  size_t pos_ = 0;
};

std::string ConfigText(const ModelConfig& c) {
  std::ostringstream out;
  out << "d_tok=" << c.d_tok << "\nd_char=" << c.d_char
      << "\nn_filters=" << c.n_filters << "\nfilter_size=" << c.filter_size
      << "\nchar_len=" << c.char_len << "\nn_labels=" << c.n_labels
      << "\nencoder_layers=" << c.encoder_layers
      << "\nvocab_size=" << c.vocab_size
      << "\nchar_vocab_size=" << c.char_vocab_size << "\nseed=" << c.seed
      << "\nfreeze_char_embeddings=" << (c.freeze_char_embeddings ? 1 : 0)
      << "\n";
  return out.str();
}

ModelConfig ParseConfigText(std::string_view text) {
  ModelConfig c;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    try {
      if (key == "seed") {
        c.seed = std::stoull(value);
      } else if (key == "freeze_char_embeddings") {
        c.freeze_char_embeddings = value == "1";
      } else {
        const int64_t v = std::stoll(value);
        if (key == "d_tok") c.d_tok = v;
        else if (key == "d_char") c.d_char = v;
        else if (key == "n_filters") c.n_filters = v;
        else if (key == "filter_size") c.filter_size = v;
        else if (key == "char_len") c.char_len = v;
        else if (key == "n_labels") c.n_labels = v;
        else if (key == "encoder_layers") c.encoder_layers = v;
        else if (key == "vocab_size") c.vocab_size = v;
        else if (key == "char_vocab_size") c.char_vocab_size = v;
      }
    } catch (const std::exception&) {
      Fail(ErrorCode::kParse, "bad checkpoint config value for " + key);
    }
  }
  return c;
}

}  // namespace

void ModelConfig::Validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) Fail(ErrorCode::kInvalidArgument, "invalid model config: " + what);
  };
  require(d_tok >= 1, "d_tok must be >= 1");
  require(d_char >= 1, "d_char must be >= 1");
  require(n_filters >= 0, "n_filters must be >= 0");
  require(filter_size >= 1, "filter_size must be >= 1");
  require(char_len >= 1, "char_len must be >= 1");
  require(filter_size <= char_len, "filter_size must not exceed char_len");
  require(n_labels >= 2, "n_labels must be >= 2");
  require(encoder_layers >= 0, "encoder_layers must be >= 0");
  require(vocab_size >= 1, "vocab_size must be >= 1");
  require(char_vocab_size >= 2, "char_vocab_size must be >= 2");
}

Parameters Parameters::ZerosLike() const {
  Parameters z = *this;
  z.SetZero();
  return z;
}

void Parameters::SetZero() {
  ForEach([](const std::string&, Matrix& m) { m.setZero(); });
}

void Parameters::AddScaled(const Parameters& other, double scale) {
  std::vector<const Matrix*> theirs;
  other.ForEach([&](const std::string&, const Matrix& m) { theirs.push_back(&m); });
  size_t k = 0;
  ForEach([&](const std::string&, Matrix& m) { m += scale * *theirs[k++]; });
}

void Parameters::Scale(double factor) {
  ForEach([&](const std::string&, Matrix& m) { m *= factor; });
}

double Parameters::SquaredNorm() const {
  double total = 0.0;
  ForEach([&](const std::string&, const Matrix& m) { total += m.squaredNorm(); });
  return total;
}

bool Parameters::AllFinite() const {
  bool finite = true;
  ForEach([&](const std::string&, const Matrix& m) {
    finite = finite && m.allFinite();
  });
  return finite;
}

size_t Parameters::Count() const {
  size_t n = 0;
  ForEach([&](const std::string&, const Matrix& m) {
    n += static_cast<size_t>(m.size());
  });
  return n;
}

Model InitModel(const ModelConfig& config) {
  config.Validate();
  Model model{config, {}};
  Parameters& p = model.params;
  const ModelConfig& c = config;
  Rng rng(c.seed);

  p.tok_emb.resize(c.d_tok, c.vocab_size);
  FillUniform(p.tok_emb, kEmbeddingScale, rng);
  p.char_emb.resize(c.d_char, c.char_vocab_size);
  FillUniform(p.char_emb, kEmbeddingScale, rng);
  p.conv_w.resize(c.n_filters, c.filter_size * c.d_char);
  FillGlorot(p.conv_w, rng);
  p.conv_b = Matrix::Zero(c.n_filters, 1);
  p.encoder.resize(c.encoder_layers);
  for (EncoderLayer& layer : p.encoder) {
    for (Matrix* m : {&layer.left, &layer.self, &layer.right}) {
      m->resize(c.d_tok, c.d_tok);
      FillGlorot(*m, rng);
    }
    layer.bias = Matrix::Zero(c.d_tok, 1);
  }
  InitClassifier(model, rng);
  p.mlm_w.resize(c.vocab_size, c.d_tok);
  FillGlorot(p.mlm_w, rng);
  p.mlm_b = Matrix::Zero(c.vocab_size, 1);
  return model;
}

void DropCharPathway(Model& model) {
  ModelConfig& c = model.config;
  c.n_filters = 0;
  model.params.conv_w.resize(0, c.filter_size * c.d_char);
  model.params.conv_b.resize(0, 1);
  Rng rng(c.seed ^ 0x9E3779B97F4A7C15ULL);
  InitClassifier(model, rng);
}

CharVectors LoadCharVectors(const std::filesystem::path& path) {
  std::istringstream in(corpus::ReadFile(path));
  CharVectors out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    const std::u32string ch = unicode::Decode(key);
    if (ch.size() != 1) {
      Fail(ErrorCode::kParse, path.string() + ":" + std::to_string(line_no) +
                                  ": expected a single character key");
    }
    std::vector<double> values;
    double v = 0.0;
    while (fields >> v) values.push_back(v);
    if (!fields.eof() || values.empty()) {
      Fail(ErrorCode::kParse, path.string() + ":" + std::to_string(line_no) +
                                  ": malformed vector");
    }
    if (out.dim == 0) out.dim = static_cast<int64_t>(values.size());
    if (static_cast<int64_t>(values.size()) != out.dim) {
      Fail(ErrorCode::kParse, path.string() + ":" + std::to_string(line_no) +
                                  ": inconsistent vector width");
    }
    out.vectors[ch[0]] = std::move(values);
  }
  if (out.dim == 0) Fail(ErrorCode::kParse, path.string() + ": no vectors");
  return out;
}

size_t ApplyCharVectors(Model& model, const tok::CharVocab& chars,
                        const CharVectors& vectors) {
  if (vectors.dim != model.config.d_char) {
    Fail(ErrorCode::kInvalidArgument,
         "char vector width " + std::to_string(vectors.dim) +
             " differs from d_char " + std::to_string(model.config.d_char));
  }
  size_t covered = 0;
  for (size_t id = 2; id < chars.size(); ++id) {
    auto it = vectors.vectors.find(chars.chars()[id]);
    if (it == vectors.vectors.end()) continue;
    model.params.char_emb.col(static_cast<Eigen::Index>(id)) =
        Eigen::Map<const Eigen::VectorXd>(it->second.data(), vectors.dim);
    ++covered;
  }
  return covered;
}

CharFeature ComputeCharFeature(std::span<const int32_t> char_row,
                               const Model& model) {
  const ModelConfig& c = model.config;
  if (static_cast<int64_t>(char_row.size()) != c.char_len) {
    Fail(ErrorCode::kInvalidArgument, "char row length differs from char_len");
  }
  CharFeature out{Eigen::VectorXd::Zero(c.n_filters),
                  Eigen::VectorXi::Zero(c.n_filters)};
  if (c.n_filters == 0) return out;
  for (int32_t ch : char_row) {
    if (ch < 0 || ch >= c.char_vocab_size) {
      Fail(ErrorCode::kInvalidArgument, "char id outside char vocabulary");
    }
  }
  const Eigen::Index positions = c.char_len - c.filter_size + 1;
  const Eigen::Index dc = c.d_char;
  Matrix windows(c.filter_size * dc, positions);
  for (Eigen::Index p = 0; p < positions; ++p) {
    for (Eigen::Index k = 0; k < c.filter_size; ++k) {
      windows.col(p).segment(k * dc, dc) = model.params.char_emb.col(char_row[p + k]);
    }
  }
  Matrix conv = model.params.conv_w * windows;
  conv.colwise() += model.params.conv_b.col(0);
  for (Eigen::Index f = 0; f < c.n_filters; ++f) {
    Eigen::Index best = 0;
    out.values(f) = conv.row(f).maxCoeff(&best);
    out.argmax(f) = static_cast<int>(best);
  }
  return out;
}

std::vector<Matrix> Encode(std::span<const int32_t> ids, const Model& model) {
  CheckIds(ids, model.config.vocab_size);
  const auto n = static_cast<Eigen::Index>(ids.size());
  std::vector<Matrix> layers;
  layers.reserve(model.params.encoder.size() + 1);
  Matrix s(model.config.d_tok, n);
  for (Eigen::Index i = 0; i < n; ++i) s.col(i) = model.params.tok_emb.col(ids[i]);
  layers.push_back(std::move(s));
  for (const EncoderLayer& layer : model.params.encoder) {
    const Matrix& in = layers.back();
    Matrix pre = layer.self * in;
    pre.colwise() += layer.bias.col(0);
    if (n > 1) {
      pre.rightCols(n - 1).noalias() += layer.left * in.leftCols(n - 1);
      pre.leftCols(n - 1).noalias() += layer.right * in.rightCols(n - 1);
    }
    layers.push_back(pre.array().tanh().matrix());
  }
  return layers;
}

ForwardTrace Forward(const tok::TokenSequence& ts, const Model& model) {
  const ModelConfig& c = model.config;
  const auto n = static_cast<Eigen::Index>(ts.size());
  ForwardTrace t;
  t.layers = Encode(ts.ids, model);
  t.s = t.layers.back();
  t.e.resize(c.n_filters, n);
  t.argmax.resize(c.n_filters, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    CharFeature f = ComputeCharFeature(ts.char_rows[i], model);
    t.e.col(i) = f.values;
    t.argmax.col(i) = f.argmax;
  }
  t.h.resize(c.hidden_width(), n);
  t.h << t.s, t.e;
  Matrix logits = model.params.cls_w * t.h;
  logits.colwise() += model.params.cls_b.col(0);
  t.probs = Softmax(logits);
  return t;
}

double AccumulateGradients(const Model& model, const tok::TokenSequence& ts,
                           const tagging::LabelSequence& labels,
                           std::span<const size_t> masked,
                           const training::LossWeights& weights, double scale,
                           Parameters& grads) {
  if (labels.size() != ts.size()) {
    Fail(ErrorCode::kInvalidArgument, "label and token counts differ");
  }
  if (ts.size() == 0) return 0.0;
  const ForwardTrace t = Forward(ts, model);
  const std::vector<double> losses = training::TokenLosses(t.probs, labels);
  const double loss = training::AugmentedLoss(losses, masked, weights);

  const auto n = static_cast<Eigen::Index>(ts.size());
  Eigen::VectorXd coeff = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
  coeff(static_cast<Eigen::Index>(training::ArgMax(losses))) += weights.lambda_max;
  for (size_t i : masked) coeff(static_cast<Eigen::Index>(i)) += weights.lambda_mask;

  Matrix d_logits = t.probs;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int32_t y = labels[i];
    if (t.probs(y, i) < training::kProbabilityFloor) {
      d_logits.col(i).setZero();  // floored loss is locally constant
      continue;
    }
    d_logits(y, i) -= 1.0;
    d_logits.col(i) *= coeff(i) * scale;
  }

  grads.cls_w.noalias() += d_logits * t.h.transpose();
  grads.cls_b += d_logits.rowwise().sum();
  const Matrix d_h = model.params.cls_w.transpose() * d_logits;
  BackpropChars(model, ts, t.argmax, d_h.bottomRows(model.config.n_filters),
                grads);
  BackpropEncoder(model, t.layers, ts.ids, d_h.topRows(model.config.d_tok), grads);
  return loss;
}

GradientResult Gradients(const Model& model, const tok::TokenSequence& ts,
                         const tagging::LabelSequence& labels,
                         std::span<const size_t> masked,
                         const training::LossWeights& weights) {
  GradientResult r{model.params.ZerosLike(), 0.0};
  r.loss = AccumulateGradients(model, ts, labels, masked, weights, 1.0, r.grads);
  return r;
}

double MlmLoss(const Model& model, std::span<const int32_t> ids,
               std::span<const size_t> positions,
               std::span<const int32_t> targets, double scale,
               Parameters* grads) {
  if (positions.empty()) {
    Fail(ErrorCode::kInvalidArgument, "MLM loss needs at least one masked position");
  }
  if (positions.size() != targets.size()) {
    Fail(ErrorCode::kInvalidArgument, "MLM positions and targets differ in size");
  }
  CheckIds(targets, model.config.vocab_size);
  const std::vector<Matrix> layers = Encode(ids, model);
  const Matrix& s = layers.back();
  const double m = static_cast<double>(positions.size());

  Matrix d_s;
  if (grads != nullptr) d_s = Matrix::Zero(s.rows(), s.cols());
  double loss = 0.0;
  for (size_t k = 0; k < positions.size(); ++k) {
    const auto pos = static_cast<Eigen::Index>(positions[k]);
    if (pos >= s.cols()) {
      Fail(ErrorCode::kInvalidArgument, "MLM position out of range");
    }
    Eigen::VectorXd logits = model.params.mlm_w * s.col(pos) + model.params.mlm_b.col(0);
    logits.array() -= logits.maxCoeff();
    Eigen::VectorXd p = logits.array().exp().matrix();
    p /= p.sum();
    const double pt = p(targets[k]);
    loss -= std::log(std::max(pt, training::kProbabilityFloor));
    if (grads == nullptr || pt < training::kProbabilityFloor) continue;
    p(targets[k]) -= 1.0;
    p *= scale / m;
    grads->mlm_w.noalias() += p * s.col(pos).transpose();
    grads->mlm_b.col(0) += p;
    d_s.col(pos).noalias() += model.params.mlm_w.transpose() * p;
  }
  if (grads != nullptr) BackpropEncoder(model, layers, ids, std::move(d_s), *grads);
  return loss / m;
}

tagging::LabelSequence Predict(const ForwardTrace& trace) {
  tagging::LabelSequence labels(static_cast<size_t>(trace.probs.cols()));
  for (Eigen::Index i = 0; i < trace.probs.cols(); ++i) {
    Eigen::Index best = 0;
    trace.probs.col(i).maxCoeff(&best);
    labels[i] = static_cast<int32_t>(best);
  }
  return labels;
}

std::string SerializeCheckpoint(const Model& model,
                                const tok::Tokenizer* tokenizer) {
  std::vector<std::pair<std::string, std::string>> sections;
  sections.emplace_back("config", ConfigText(model.config));
  if (tokenizer != nullptr) {
    std::string vocab;
    for (const std::string& p : tokenizer->vocab().pieces()) vocab += p + "\n";
    sections.emplace_back("vocab", std::move(vocab));
    std::string chars;
    Put<uint64_t>(chars, tokenizer->char_len());
    for (size_t id = 2; id < tokenizer->chars().size(); ++id) {
      Put<uint32_t>(chars, tokenizer->chars().chars()[id]);
    }
    sections.emplace_back("char_vocab", std::move(chars));
  }
  model.params.ForEach([&](const std::string& name, const Matrix& m) {
    std::string payload;
    Put<uint64_t>(payload, static_cast<uint64_t>(m.rows()));
    Put<uint64_t>(payload, static_cast<uint64_t>(m.cols()));
    payload.append(reinterpret_cast<const char*>(m.data()),
                   static_cast<size_t>(m.size()) * sizeof(double));
    sections.emplace_back("tensor:" + name, std::move(payload));
  });

  std::string out(kMagic);
  Put<uint32_t>(out, static_cast<uint32_t>(sections.size()));
  for (const auto& [name, payload] : sections) {
    Put<uint32_t>(out, static_cast<uint32_t>(name.size()));
    out += name;
    Put<uint64_t>(out, payload.size());
    out += payload;
  }
  return out;
}

void SaveCheckpoint(const std::filesystem::path& path, const Model& model,
                    const tok::Tokenizer* tokenizer) {
  corpus::WriteFile(path, SerializeCheckpoint(model, tokenizer));
}

Checkpoint ParseCheckpoint(std::string_view bytes) {
  Reader in(bytes);
  if (in.Take(kMagic.size()) != kMagic) {
    Fail(ErrorCode::kParse, "not an acrotag checkpoint");
  }
  const auto count = in.Get<uint32_t>();
  std::unordered_map<std::string, std::string_view> sections;
  for (uint32_t i = 0; i < count; ++i) {
    const std::string name(in.Take(in.Get<uint32_t>()));
    sections[name] = in.Take(in.Get<uint64_t>());
  }
  if (!in.done()) Fail(ErrorCode::kParse, "trailing bytes after checkpoint");

  auto config_it = sections.find("config");
  if (config_it == sections.end()) {
    Fail(ErrorCode::kParse, "checkpoint lacks a config section");
  }
  Checkpoint ck;
  ck.model.config = ParseConfigText(config_it->second);
  const ModelConfig& c = ck.model.config;
  c.Validate();
  ck.model.params.encoder.resize(c.encoder_layers);
  ck.model.params.ForEach([&](const std::string& name, Matrix& m) {
    auto it = sections.find("tensor:" + name);
    if (it == sections.end()) {
      Fail(ErrorCode::kParse, "checkpoint lacks tensor " + name);
    }
    Reader t(it->second);
    const auto rows = static_cast<Eigen::Index>(t.Get<uint64_t>());
    const auto cols = static_cast<Eigen::Index>(t.Get<uint64_t>());
    m.resize(rows, cols);
    const std::string_view data = t.Take(static_cast<size_t>(rows * cols) * sizeof(double));
    std::memcpy(m.data(), data.data(), data.size());
    if (!t.done()) Fail(ErrorCode::kParse, "tensor " + name + " has extra bytes");
  });

  const Parameters& p = ck.model.params;
  const bool shapes_ok =
      p.tok_emb.rows() == c.d_tok && p.tok_emb.cols() == c.vocab_size &&
      p.char_emb.rows() == c.d_char && p.char_emb.cols() == c.char_vocab_size &&
      p.conv_w.rows() == c.n_filters &&
      p.conv_w.cols() == c.filter_size * c.d_char &&
      p.cls_w.rows() == c.n_labels && p.cls_w.cols() == c.hidden_width() &&
      p.mlm_w.rows() == c.vocab_size && p.mlm_w.cols() == c.d_tok;
  if (!shapes_ok) Fail(ErrorCode::kParse, "checkpoint tensor shapes disagree with config");

  auto vocab_it = sections.find("vocab");
  auto chars_it = sections.find("char_vocab");
  if (vocab_it != sections.end() && chars_it != sections.end()) {
    std::vector<std::string> pieces;
    std::istringstream lines{std::string(vocab_it->second)};
    std::string line;
    while (std::getline(lines, line)) pieces.push_back(line);
    Reader cr(chars_it->second);
    const auto char_len = cr.Get<uint64_t>();
    std::vector<char32_t> chars;
    while (!cr.done()) chars.push_back(cr.Get<uint32_t>());
    tok::CharVocab char_vocab = tok::CharVocab::FromIds(std::move(chars));
    ck.tokenizer.emplace(tok::SubwordVocab::FromPieces(std::move(pieces)),
                         std::move(char_vocab), char_len);
    if (static_cast<int64_t>(ck.tokenizer->vocab().size()) != c.vocab_size ||
        static_cast<int64_t>(ck.tokenizer->chars().size()) != c.char_vocab_size) {
      Fail(ErrorCode::kParse, "checkpoint vocabularies disagree with config");
    }
  }
  return ck;
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  return ParseCheckpoint(corpus::ReadFile(path));
}

}  // namespace acrotag::model
