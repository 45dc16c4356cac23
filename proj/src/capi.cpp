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

#include "acrotag/acrotag.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "acrotag/augment.hpp"
#include "acrotag/corpus.hpp"
#include "acrotag/error.hpp"
#include "acrotag/eval.hpp"
#include "acrotag/model.hpp"
#include "acrotag/rules.hpp"
#include "acrotag/tagging.hpp"
#include "acrotag/tokenizer.hpp"
#include "acrotag/training.hpp"
#include "acrotag/unicode.hpp"

struct acrotag_dataset {
  acrotag::Dataset dataset;
  std::vector<std::string> warnings;
};

struct acrotag_tokenizer {
  acrotag::tok::Tokenizer tokenizer;
};

struct acrotag_bundle {
  acrotag::model::Model model;
  acrotag::tok::Tokenizer tokenizer;
};

struct acrotag_embeddings {
  acrotag::augment::WordEmbeddings embeddings;
};

namespace {

using namespace acrotag;

thread_local std::string g_last_error;

acrotag_status FromCode(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return ACROTAG_ERR_INVALID_ARGUMENT;
    case ErrorCode::kIo: return ACROTAG_ERR_IO;
    case ErrorCode::kParse: return ACROTAG_ERR_PARSE;
    case ErrorCode::kValidation: return ACROTAG_ERR_VALIDATION;
    case ErrorCode::kNumeric: return ACROTAG_ERR_NUMERIC;
  }
  return ACROTAG_ERR_INTERNAL;
}

template <typename F>
acrotag_status Guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return ACROTAG_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return FromCode(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ACROTAG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ACROTAG_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return ACROTAG_ERR_INTERNAL;
  }
}

void Require(bool ok, const char* what) {
  if (!ok) Fail(ErrorCode::kInvalidArgument, what);
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

corpus::LoadOptions ToLoad(const acrotag_load_options* o) {
  corpus::LoadOptions lo;
  if (o != nullptr) {
    lo.strict = o->lenient == 0;
    lo.inclusive_ends = o->inclusive_ends != 0;
    if (o->id_field != nullptr) lo.fields.id = o->id_field;
    if (o->text_field != nullptr) lo.fields.text = o->text_field;
    if (o->acronyms_field != nullptr) lo.fields.acronyms = o->acronyms_field;
    if (o->long_forms_field != nullptr) lo.fields.long_forms = o->long_forms_field;
  }
  return lo;
}

acrotag_dataset* Wrap(corpus::LoadResult r) {
  auto* out = new acrotag_dataset{std::move(r.dataset), std::move(r.messages)};
  return out;
}

acrotag_dataset* Wrap(Dataset ds) { return new acrotag_dataset{std::move(ds), {}}; }

tok::VocabBuildOptions ToVocab(const acrotag_vocab_options* o, size_t* char_len) {
  acrotag_vocab_options d;
  acrotag_vocab_options_default(&d);
  if (o == nullptr) o = &d;
  Require(o->char_len > 0, "char_len must be positive");
  *char_len = o->char_len;
  tok::VocabBuildOptions v;
  v.max_pieces = o->max_pieces;
  v.min_count = o->min_count;
  v.max_piece_chars = o->max_piece_chars;
  return v;
}

std::optional<model::CharVectors> CharVectorsOf(const acrotag_model_config* o) {
  if (o == nullptr || o->char_vectors_path == nullptr || o->char_vectors_path[0] == '\0') {
    return std::nullopt;
  }
  return model::LoadCharVectors(o->char_vectors_path);
}

model::ModelConfig ToModel(const acrotag_model_config* o, const tok::Tokenizer& t,
                           const std::optional<model::CharVectors>& vectors) {
  acrotag_model_config d;
  acrotag_model_config_default(&d);
  if (o == nullptr) o = &d;
  model::ModelConfig c;
  c.d_tok = o->d_tok;
  c.d_char = vectors ? vectors->dim : o->d_char;
  c.n_filters = o->n_filters;
  c.filter_size = o->filter_size;
  c.encoder_layers = o->encoder_layers;
  c.char_len = static_cast<int64_t>(t.char_len());
  c.vocab_size = static_cast<int64_t>(t.vocab().size());
  c.char_vocab_size = static_cast<int64_t>(t.chars().size());
  c.seed = o->seed;
  c.freeze_char_embeddings = vectors && o->freeze_char_embeddings != 0;
  return c;
}

void ApplyVectors(const std::optional<model::CharVectors>& vectors, const acrotag_model_config* o,
                  model::Model& m, const tok::Tokenizer& t) {
  if (!vectors || m.config.n_filters == 0) return;
  model::ApplyCharVectors(m, t.chars(), *vectors);
  m.config.freeze_char_embeddings = o->freeze_char_embeddings != 0;
}

void Fill(acrotag_prf* out, const eval::Prf& p) {
  out->precision = p.precision;
  out->recall = p.recall;
  out->f1 = p.f1;
  out->tp = p.counts.tp;
  out->fp = p.counts.fp;
  out->fn = p.counts.fn;
}

eval::Prf ToPrf(const acrotag_prf& p) {
  eval::Prf out;
  out.precision = p.precision;
  out.recall = p.recall;
  out.f1 = p.f1;
  out.counts = {p.tp, p.fp, p.fn};
  return out;
}

}  // namespace

extern "C" {

const char* acrotag_version(void) { return "1.0.0"; }

const char* acrotag_last_error(void) { return g_last_error.c_str(); }

const char* acrotag_status_name(acrotag_status status) {
  switch (status) {
    case ACROTAG_OK: return "OK";
    case ACROTAG_ERR_INVALID_ARGUMENT: return "INVALID_ARGUMENT";
    case ACROTAG_ERR_IO: return "IO";
    case ACROTAG_ERR_PARSE: return "PARSE";
    case ACROTAG_ERR_VALIDATION: return "VALIDATION";
    case ACROTAG_ERR_NUMERIC: return "NUMERIC";
    case ACROTAG_ERR_INTERNAL: return "INTERNAL";
  }
  return "UNKNOWN";
}

void acrotag_string_free(char* s) { std::free(s); }

void acrotag_load_options_default(acrotag_load_options* out) {
  if (out == nullptr) return;
  out->lenient = 0;
  out->inclusive_ends = 0;
  out->id_field = nullptr;
  out->text_field = nullptr;
  out->acronyms_field = nullptr;
  out->long_forms_field = nullptr;
}

void acrotag_vocab_options_default(acrotag_vocab_options* out) {
  if (out == nullptr) return;
  const tok::VocabBuildOptions v;
  out->max_pieces = v.max_pieces;
  out->min_count = v.min_count;
  out->max_piece_chars = v.max_piece_chars;
  out->char_len = tok::Tokenizer::kDefaultCharLen;
}

void acrotag_model_config_default(acrotag_model_config* out) {
  if (out == nullptr) return;
  const model::ModelConfig c;
  out->d_tok = c.d_tok;
  out->d_char = c.d_char;
  out->n_filters = c.n_filters;
  out->filter_size = c.filter_size;
  out->encoder_layers = c.encoder_layers;
  out->seed = c.seed;
  out->freeze_char_embeddings = 0;
  out->char_vectors_path = nullptr;
}

void acrotag_train_config_default(acrotag_train_config* out) {
  if (out == nullptr) return;
  const training::TrainConfig c;
  out->lambda_max = c.lambda_max;
  out->lambda_mask = c.lambda_mask;
  out->mask_rate = c.mask_rate;
  out->learning_rate = c.learning_rate;
  out->max_grad_norm = c.max_grad_norm;
  out->weight_decay = c.weight_decay;
  out->batch_size = c.batch_size;
  out->epochs = c.epochs;
  out->max_seq_len = c.max_seq_len;
  out->warmup_steps = c.warmup_steps;
  out->seed = c.seed;
  out->no_char = 0;
  out->no_max_loss = 0;
  out->no_mask_loss = 0;
  out->first_occurrence_only = 0;
}

void acrotag_pretrain_config_default(acrotag_pretrain_config* out) {
  if (out == nullptr) return;
  const training::PretrainConfig c;
  out->epochs = c.epochs;
  out->batch_size = c.batch_size;
  out->max_seq_len = c.max_seq_len;
  out->mask_prob = c.mask_prob;
  out->learning_rate = c.learning_rate;
  out->max_grad_norm = c.max_grad_norm;
  out->weight_decay = c.weight_decay;
  out->warmup_steps = c.warmup_steps;
  out->seed = c.seed;
}

acrotag_status acrotag_dataset_load(const char* path, const acrotag_load_options* options,
                                    acrotag_dataset** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = Wrap(corpus::LoadDataset(path, ToLoad(options)));
  });
}

acrotag_status acrotag_dataset_parse(const char* json, size_t length,
                                     const acrotag_load_options* options,
                                     acrotag_dataset** out) {
  return Guard([&] {
    Require(json != nullptr && out != nullptr, "null argument");
    *out = Wrap(corpus::ParseDataset(std::string_view(json, length), ToLoad(options)));
  });
}

acrotag_status acrotag_dataset_from_lines(const char* path, acrotag_dataset** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    Dataset ds;
    ds.name = std::filesystem::path(path).stem().string();
    size_t n = 0;
    for (auto& line : corpus::ReadLines(path)) {
      ds.documents.push_back({"line-" + std::to_string(n++), std::move(line), {}, {}});
    }
    *out = Wrap(std::move(ds));
  });
}

acrotag_status acrotag_dataset_save(const acrotag_dataset* dataset, const char* path,
                                    int inclusive_ends) {
  return Guard([&] {
    Require(dataset != nullptr && path != nullptr, "null argument");
    corpus::WriteOptions wo;
    wo.inclusive_ends = inclusive_ends != 0;
    corpus::WriteDataset(dataset->dataset, path, wo);
  });
}

acrotag_status acrotag_dataset_serialize(const acrotag_dataset* dataset, int inclusive_ends,
                                         char** out) {
  return Guard([&] {
    Require(dataset != nullptr && out != nullptr, "null argument");
    corpus::WriteOptions wo;
    wo.inclusive_ends = inclusive_ends != 0;
    *out = Dup(corpus::SerializeDataset(dataset->dataset, wo));
  });
}

acrotag_status acrotag_dataset_concat(const acrotag_dataset* const* parts, size_t count,
                                      acrotag_dataset** out) {
  return Guard([&] {
    Require(out != nullptr && (parts != nullptr || count == 0), "null argument");
    std::vector<Dataset> all;
    std::string name;
    for (size_t i = 0; i < count; ++i) {
      Require(parts[i] != nullptr, "null dataset in concatenation");
      all.push_back(parts[i]->dataset);
      if (!name.empty()) name += "+";
      name += parts[i]->dataset.name;
    }
    *out = Wrap(corpus::Concatenate(all, name));
  });
}

size_t acrotag_dataset_size(const acrotag_dataset* dataset) {
  return dataset == nullptr ? 0 : dataset->dataset.documents.size();
}

size_t acrotag_dataset_warning_count(const acrotag_dataset* dataset) {
  return dataset == nullptr ? 0 : dataset->warnings.size();
}

const char* acrotag_dataset_warning(const acrotag_dataset* dataset, size_t index) {
  if (dataset == nullptr || index >= dataset->warnings.size()) return nullptr;
  return dataset->warnings[index].c_str();
}

void acrotag_dataset_free(acrotag_dataset* dataset) { delete dataset; }

acrotag_status acrotag_dataset_stats(const acrotag_dataset* dataset, acrotag_stats* out) {
  return Guard([&] {
    Require(dataset != nullptr && out != nullptr, "null argument");
    const auto s = corpus::ComputeStats(dataset->dataset);
    out->n_docs = s.n_docs;
    out->avg_word_length = s.avg_word_length;
    out->avg_acronyms = s.avg_acronyms;
    out->avg_long_forms = s.avg_long_forms;
    out->n_both = s.n_both;
    out->n_only_acr = s.n_only_acr;
    out->n_only_lf = s.n_only_lf;
    out->n_neither = s.n_neither;
  });
}

acrotag_status acrotag_tokenizer_build(const acrotag_dataset* corpus,
                                       const acrotag_vocab_options* options,
                                       acrotag_tokenizer** out) {
  return Guard([&] {
    Require(corpus != nullptr && out != nullptr, "null argument");
    size_t char_len = 0;
    const auto v = ToVocab(options, &char_len);
    *out = new acrotag_tokenizer{tok::BuildTokenizer(tok::Texts(corpus->dataset), v, char_len)};
  });
}

acrotag_status acrotag_tokenizer_load(const char* vocab_path, const char* chars_path,
                                      size_t char_len, acrotag_tokenizer** out) {
  return Guard([&] {
    Require(vocab_path != nullptr && chars_path != nullptr && out != nullptr, "null argument");
    Require(char_len > 0, "char_len must be positive");
    *out = new acrotag_tokenizer{tok::Tokenizer(tok::SubwordVocab::Load(vocab_path),
                                                tok::CharVocab::Load(chars_path), char_len)};
  });
}

acrotag_status acrotag_tokenizer_save(const acrotag_tokenizer* tokenizer,
                                      const char* vocab_path, const char* chars_path) {
  return Guard([&] {
    Require(tokenizer != nullptr && vocab_path != nullptr && chars_path != nullptr,
            "null argument");
    tokenizer->tokenizer.vocab().Save(vocab_path);
    tokenizer->tokenizer.chars().Save(chars_path);
  });
}

acrotag_status acrotag_tokenizer_from_bundle(const acrotag_bundle* bundle,
                                             acrotag_tokenizer** out) {
  return Guard([&] {
    Require(bundle != nullptr && out != nullptr, "null argument");
    *out = new acrotag_tokenizer{bundle->tokenizer};
  });
}

void acrotag_tokenizer_free(acrotag_tokenizer* tokenizer) { delete tokenizer; }

acrotag_status acrotag_tokenize(const acrotag_tokenizer* tokenizer, const char* text,
                                char** tsv) {
  return Guard([&] {
    Require(tokenizer != nullptr && text != nullptr && tsv != nullptr, "null argument");
    const auto ts = tokenizer->tokenizer.Tokenize(unicode::Decode(text));
    std::ostringstream o;
    for (size_t i = 0; i < ts.size(); ++i) {
      o << ts.tokens[i] << '\t' << ts.ids[i] << '\t' << ts.offsets[i].start << '\t'
        << ts.offsets[i].end << '\n';
    }
    *tsv = Dup(o.str());
  });
}

acrotag_status acrotag_convert(const acrotag_tokenizer* tokenizer,
                               const acrotag_dataset* dataset, int first_occurrence_only,
                               char** tsv) {
  return Guard([&] {
    Require(tokenizer != nullptr && dataset != nullptr && tsv != nullptr, "null argument");
    tagging::BioOptions bio;
    bio.first_occurrence_only = first_occurrence_only != 0;
    std::ostringstream o;
    for (const Document& d : dataset->dataset.documents) {
      const auto ts = tokenizer->tokenizer.Tokenize(d.text);
      const auto labels = tagging::SpansToBio(d, ts, tokenizer->tokenizer, bio);
      for (size_t i = 0; i < ts.size(); ++i) {
        o << ts.tokens[i] << '\t' << labels[i] << '\t' << ts.offsets[i].start << '\t'
          << ts.offsets[i].end << '\n';
      }
      o << '\n';
    }
    *tsv = Dup(o.str());
  });
}

acrotag_status acrotag_rule_extract(const acrotag_dataset* dataset, double threshold,
                                    acrotag_dataset** out) {
  return Guard([&] {
    Require(dataset != nullptr && out != nullptr, "null argument");
    Require(threshold >= 0.0 && threshold <= 1.0, "threshold must lie in [0, 1]");
    const auto preds = rules::ExtractRuleBased(dataset->dataset, threshold);
    *out = Wrap(corpus::ApplyPredictions(dataset->dataset, preds));
  });
}

acrotag_status acrotag_filter_sentences(const char* const* sentences, size_t count,
                                        double threshold, int* keep) {
  return Guard([&] {
    Require((sentences != nullptr && keep != nullptr) || count == 0, "null argument");
    Require(threshold >= 0.0 && threshold <= 1.0, "threshold must lie in [0, 1]");
    for (size_t i = 0; i < count; ++i) {
      Require(sentences[i] != nullptr, "null sentence");
      keep[i] = rules::IsProbableAcronymSentence(unicode::Decode(sentences[i]), threshold) ? 1 : 0;
    }
  });
}

acrotag_status acrotag_pretrain(const acrotag_dataset* corpus,
                                const acrotag_vocab_options* vocab,
                                const acrotag_model_config* model,
                                const acrotag_pretrain_config* config,
                                acrotag_bundle** out, acrotag_pretrain_report* report) {
  return Guard([&] {
    Require(corpus != nullptr && out != nullptr, "null argument");
    acrotag_pretrain_config d;
    acrotag_pretrain_config_default(&d);
    if (config == nullptr) config = &d;
    size_t char_len = 0;
    const auto v = ToVocab(vocab, &char_len);
    const auto texts = tok::Texts(corpus->dataset);
    auto b = std::make_unique<acrotag_bundle>();
    b->tokenizer = tok::BuildTokenizer(texts, v, char_len);
    const auto vectors = CharVectorsOf(model);
    b->model = model::InitModel(ToModel(model, b->tokenizer, vectors));
    ApplyVectors(vectors, model, b->model, b->tokenizer);
    training::PretrainConfig pc;
    pc.epochs = config->epochs;
    pc.batch_size = config->batch_size;
    pc.max_seq_len = config->max_seq_len;
    pc.mask_prob = config->mask_prob;
    pc.learning_rate = config->learning_rate;
    pc.max_grad_norm = config->max_grad_norm;
    pc.weight_decay = config->weight_decay;
    pc.warmup_steps = config->warmup_steps;
    pc.seed = config->seed;
    const auto r = training::Pretrain(b->model, b->tokenizer, texts, pc);
    if (report != nullptr) {
      report->initial_loss = r.initial_loss;
      report->final_loss = r.final_loss;
      report->vocab_size = b->tokenizer.vocab().size();
    }
    *out = b.release();
  });
}

acrotag_status acrotag_train(const acrotag_dataset* train, const acrotag_dataset* dev,
                             const acrotag_bundle* init, const acrotag_vocab_options* vocab,
                             const acrotag_model_config* model,
                             const acrotag_train_config* config, acrotag_bundle** out,
                             char** history, acrotag_train_report* report) {
  return Guard([&] {
    Require(train != nullptr && out != nullptr, "null argument");
    acrotag_train_config d;
    acrotag_train_config_default(&d);
    if (config == nullptr) config = &d;
    auto b = std::make_unique<acrotag_bundle>();
    const auto vectors = CharVectorsOf(model);
    if (init != nullptr) {
      b->tokenizer = init->tokenizer;
      b->model = init->model;
    } else {
      size_t char_len = 0;
      const auto v = ToVocab(vocab, &char_len);
      b->tokenizer = tok::BuildTokenizer(tok::Texts(train->dataset), v, char_len);
      b->model = model::InitModel(ToModel(model, b->tokenizer, vectors));
    }
    ApplyVectors(vectors, model, b->model, b->tokenizer);

    training::TrainConfig tc;
    tc.lambda_max = config->lambda_max;
    tc.lambda_mask = config->lambda_mask;
    tc.mask_rate = config->mask_rate;
    tc.learning_rate = config->learning_rate;
    tc.max_grad_norm = config->max_grad_norm;
    tc.weight_decay = config->weight_decay;
    tc.batch_size = config->batch_size;
    tc.epochs = config->epochs;
    tc.max_seq_len = config->max_seq_len;
    tc.warmup_steps = config->warmup_steps;
    tc.seed = config->seed;
    tc.bio.first_occurrence_only = config->first_occurrence_only != 0;
    training::Ablations ab;
    ab.no_char = config->no_char != 0;
    ab.no_max_loss = config->no_max_loss != 0;
    ab.no_mask_loss = config->no_mask_loss != 0;

    const Dataset empty;
    const auto r = training::Train(b->model, b->tokenizer, train->dataset,
                                   dev != nullptr ? dev->dataset : empty, tc, ab);
    if (report != nullptr) {
      report->best_epoch = r.best_epoch;
      report->steps = r.steps;
      report->truncated = r.truncated;
      const auto& best = r.history.at(r.best_epoch);
      report->best_dev_f1 = best.dev ? best.dev->metrics.combined.f1 : -1.0;
    }
    std::string h = history != nullptr ? training::FormatHistory(r.history) : std::string();
    if (history != nullptr) *history = Dup(h);
    *out = b.release();
  });
}

acrotag_status acrotag_bundle_load(const char* path, acrotag_bundle** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    auto c = model::LoadCheckpoint(path);
    if (!c.tokenizer) Fail(ErrorCode::kValidation, std::string(path) + " has no tokenizer");
    *out = new acrotag_bundle{std::move(c.model), std::move(*c.tokenizer)};
  });
}

acrotag_status acrotag_bundle_save(const acrotag_bundle* bundle, const char* path) {
  return Guard([&] {
    Require(bundle != nullptr && path != nullptr, "null argument");
    model::SaveCheckpoint(path, bundle->model, &bundle->tokenizer);
  });
}

void acrotag_bundle_free(acrotag_bundle* bundle) { delete bundle; }

acrotag_status acrotag_predict(const acrotag_bundle* bundle, const acrotag_dataset* dataset,
                               acrotag_dataset** out) {
  return Guard([&] {
    Require(bundle != nullptr && dataset != nullptr && out != nullptr, "null argument");
    const auto preds = training::PredictDataset(bundle->model, bundle->tokenizer, dataset->dataset);
    *out = Wrap(corpus::ApplyPredictions(dataset->dataset, preds));
  });
}

acrotag_status acrotag_score(const acrotag_dataset* predicted, const acrotag_dataset* gold,
                             acrotag_metrics* out) {
  return Guard([&] {
    Require(predicted != nullptr && gold != nullptr && out != nullptr, "null argument");
    const auto m = eval::Score(corpus::GoldAsPredictions(predicted->dataset), gold->dataset);
    Fill(&out->acronym, m.acronym);
    Fill(&out->long_form, m.long_form);
    Fill(&out->combined, m.combined);
  });
}

acrotag_status acrotag_report(const acrotag_metrics* metrics, int fine_grained, char** out) {
  return Guard([&] {
    Require(metrics != nullptr && out != nullptr, "null argument");
    eval::Metrics m;
    m.acronym = ToPrf(metrics->acronym);
    m.long_form = ToPrf(metrics->long_form);
    m.combined = ToPrf(metrics->combined);
    *out = Dup(eval::Report(m, fine_grained != 0 ? eval::ReportStyle::kFineGrained
                                                 : eval::ReportStyle::kCombined));
  });
}

acrotag_status acrotag_pseudo_label(const acrotag_bundle* bundle,
                                    const acrotag_dataset* sentences, double tau,
                                    acrotag_dataset** out) {
  return Guard([&] {
    Require(bundle != nullptr && sentences != nullptr && out != nullptr, "null argument");
    *out = Wrap(augment::PseudoLabel(bundle->model, bundle->tokenizer,
                                     tok::Texts(sentences->dataset), tau));
  });
}

acrotag_status acrotag_embeddings_load(const char* path, acrotag_embeddings** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = new acrotag_embeddings{augment::WordEmbeddings::Load(path)};
  });
}

void acrotag_embeddings_free(acrotag_embeddings* embeddings) { delete embeddings; }

acrotag_status acrotag_augment(const acrotag_dataset* dataset,
                               const acrotag_embeddings* embeddings, double min_similarity,
                               double replace_fraction, uint64_t seed, acrotag_dataset** out) {
  return Guard([&] {
    Require(dataset != nullptr && embeddings != nullptr && out != nullptr, "null argument");
    Require(min_similarity >= -1.0 && min_similarity <= 1.0,
            "minimum similarity must lie in [-1, 1]");
    *out = Wrap(augment::AugmentDataset(dataset->dataset, embeddings->embeddings,
                                        min_similarity, replace_fraction, seed));
  });
}

}  // extern "C"
