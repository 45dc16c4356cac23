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

/* C interface to the acronym / long-form extraction toolkit.
 *
 * Every function returns an acrotag_status. On failure the message of the
 * most recent error on the calling thread is available from
 * acrotag_last_error(). Objects are opaque handles released with their
 * matching *_free function; strings returned through char** are released
 * with acrotag_string_free(). Text is UTF-8; span offsets count Unicode
 * code points and are half-open. */
#ifndef ACROTAG_ACROTAG_H_
#define ACROTAG_ACROTAG_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ACROTAG_API __declspec(dllexport)
#else
#define ACROTAG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum acrotag_status {
  ACROTAG_OK = 0,
  ACROTAG_ERR_INVALID_ARGUMENT = 1,
  ACROTAG_ERR_IO = 2,
  ACROTAG_ERR_PARSE = 3,
  ACROTAG_ERR_VALIDATION = 4,
  ACROTAG_ERR_NUMERIC = 5,
  ACROTAG_ERR_INTERNAL = 6
} acrotag_status;

typedef struct acrotag_dataset acrotag_dataset;
typedef struct acrotag_tokenizer acrotag_tokenizer;
/* A tagging model together with the tokenizer it was trained with. */
typedef struct acrotag_bundle acrotag_bundle;
typedef struct acrotag_embeddings acrotag_embeddings;

ACROTAG_API const char* acrotag_version(void);
/* Message of the last failed call on this thread; "" after a success. */
ACROTAG_API const char* acrotag_last_error(void);
/* Upper-case name such as "INVALID_ARGUMENT". */
ACROTAG_API const char* acrotag_status_name(acrotag_status status);
ACROTAG_API void acrotag_string_free(char* s);

/* ---- configuration ----------------------------------------------------- */

typedef struct acrotag_load_options {
  int lenient;        /* drop invalid spans / duplicate ids with a warning */
  int inclusive_ends; /* file stores inclusive end indices */
  /* Record field names; NULL keeps "id", "text", "acronyms", "long-forms". */
  const char* id_field;
  const char* text_field;
  const char* acronyms_field;
  const char* long_forms_field;
} acrotag_load_options;

typedef struct acrotag_vocab_options {
  size_t max_pieces;
  size_t min_count;
  size_t max_piece_chars;
  size_t char_len;
} acrotag_vocab_options;

typedef struct acrotag_model_config {
  int64_t d_tok;
  int64_t d_char;
  int64_t n_filters; /* 0 disables the character pathway */
  int64_t filter_size;
  int64_t encoder_layers;
  uint64_t seed;
  int freeze_char_embeddings;
  /* Optional "char d1 .. dD" file, or NULL. Its width overrides d_char. */
  const char* char_vectors_path;
} acrotag_model_config;

typedef struct acrotag_train_config {
  double lambda_max;
  double lambda_mask;
  double mask_rate;
  double learning_rate;
  double max_grad_norm;
  double weight_decay;
  size_t batch_size;
  size_t epochs;
  size_t max_seq_len;
  int64_t warmup_steps; /* negative: 10% of all optimizer steps */
  uint64_t seed;
  int no_char;
  int no_max_loss;
  int no_mask_loss;
  int first_occurrence_only;
} acrotag_train_config;

typedef struct acrotag_pretrain_config {
  size_t epochs;
  size_t batch_size;
  size_t max_seq_len;
  double mask_prob;
  double learning_rate;
  double max_grad_norm;
  double weight_decay;
  int64_t warmup_steps;
  uint64_t seed;
} acrotag_pretrain_config;

ACROTAG_API void acrotag_load_options_default(acrotag_load_options* out);
ACROTAG_API void acrotag_vocab_options_default(acrotag_vocab_options* out);
ACROTAG_API void acrotag_model_config_default(acrotag_model_config* out);
ACROTAG_API void acrotag_train_config_default(acrotag_train_config* out);
ACROTAG_API void acrotag_pretrain_config_default(acrotag_pretrain_config* out);

/* ---- datasets ------------------------------------------------------------ */

ACROTAG_API acrotag_status acrotag_dataset_load(const char* path,
                                                const acrotag_load_options* options,
                                                acrotag_dataset** out);
ACROTAG_API acrotag_status acrotag_dataset_parse(const char* json, size_t length,
                                                 const acrotag_load_options* options,
                                                 acrotag_dataset** out);
/* Documents from a text file, one non-empty line each, ids "line-<n>". */
ACROTAG_API acrotag_status acrotag_dataset_from_lines(const char* path,
                                                      acrotag_dataset** out);
ACROTAG_API acrotag_status acrotag_dataset_save(const acrotag_dataset* dataset,
                                                const char* path, int inclusive_ends);
ACROTAG_API acrotag_status acrotag_dataset_serialize(const acrotag_dataset* dataset,
                                                     int inclusive_ends, char** out);
ACROTAG_API acrotag_status acrotag_dataset_concat(const acrotag_dataset* const* parts,
                                                  size_t count, acrotag_dataset** out);
ACROTAG_API size_t acrotag_dataset_size(const acrotag_dataset* dataset);
/* Lenient loading only: messages for dropped spans or records. */
ACROTAG_API size_t acrotag_dataset_warning_count(const acrotag_dataset* dataset);
ACROTAG_API const char* acrotag_dataset_warning(const acrotag_dataset* dataset,
                                                size_t index);
ACROTAG_API void acrotag_dataset_free(acrotag_dataset* dataset);

typedef struct acrotag_stats {
  size_t n_docs;
  double avg_word_length;
  double avg_acronyms;
  double avg_long_forms;
  size_t n_both;
  size_t n_only_acr;
  size_t n_only_lf;
  size_t n_neither;
} acrotag_stats;

ACROTAG_API acrotag_status acrotag_dataset_stats(const acrotag_dataset* dataset,
                                                 acrotag_stats* out);

/* ---- tokenization ---------------------------------------------------------- */

ACROTAG_API acrotag_status acrotag_tokenizer_build(const acrotag_dataset* corpus,
                                                   const acrotag_vocab_options* options,
                                                   acrotag_tokenizer** out);
/* Vocabulary file (one piece per line) and char table ("char<TAB>id"). */
ACROTAG_API acrotag_status acrotag_tokenizer_load(const char* vocab_path,
                                                  const char* chars_path,
                                                  size_t char_len,
                                                  acrotag_tokenizer** out);
ACROTAG_API acrotag_status acrotag_tokenizer_save(const acrotag_tokenizer* tokenizer,
                                                  const char* vocab_path,
                                                  const char* chars_path);
ACROTAG_API acrotag_status acrotag_tokenizer_from_bundle(const acrotag_bundle* bundle,
                                                         acrotag_tokenizer** out);
ACROTAG_API void acrotag_tokenizer_free(acrotag_tokenizer* tokenizer);

/* One line per token: piece, id, start, end (tab separated). */
ACROTAG_API acrotag_status acrotag_tokenize(const acrotag_tokenizer* tokenizer,
                                            const char* text, char** tsv);
/* One line per token: piece, label id, start, end; a blank line after each
 * document. */
ACROTAG_API acrotag_status acrotag_convert(const acrotag_tokenizer* tokenizer,
                                           const acrotag_dataset* dataset,
                                           int first_occurrence_only, char** tsv);

/* ---- rule-based extraction and sentence filtering --------------------------- */

/* Copy of `dataset` with rule-based spans in place of the annotations. */
ACROTAG_API acrotag_status acrotag_rule_extract(const acrotag_dataset* dataset,
                                                double threshold,
                                                acrotag_dataset** out);
/* keep[i] is set to 1 when sentence i likely contains an acronym. */
ACROTAG_API acrotag_status acrotag_filter_sentences(const char* const* sentences,
                                                    size_t count, double threshold,
                                                    int* keep);

/* ---- models ---------------------------------------------------------------- */

typedef struct acrotag_pretrain_report {
  double initial_loss;
  double final_loss;
  size_t vocab_size;
} acrotag_pretrain_report;

/* Builds the tokenizer from the corpus texts, initializes a model and runs
 * masked-language-model pretraining. */
ACROTAG_API acrotag_status acrotag_pretrain(const acrotag_dataset* corpus,
                                            const acrotag_vocab_options* vocab,
                                            const acrotag_model_config* model,
                                            const acrotag_pretrain_config* config,
                                            acrotag_bundle** out,
                                            acrotag_pretrain_report* report);

typedef struct acrotag_train_report {
  size_t best_epoch;
  size_t steps;
  size_t truncated; /* documents cut to max_seq_len */
  double best_dev_f1; /* combined F1 at best_epoch, -1 without dev set */
} acrotag_train_report;

/* Trains a tagger. With `init` (a pretrained bundle) its tokenizer and
 * weights are the starting point and `model` is ignored apart from the
 * character vectors; otherwise a tokenizer is built from the training texts
 * and a model initialized from `model`. `dev` may be NULL. `history`
 * (optional) receives the per-epoch metric table. */
ACROTAG_API acrotag_status acrotag_train(const acrotag_dataset* train,
                                         const acrotag_dataset* dev,
                                         const acrotag_bundle* init,
                                         const acrotag_vocab_options* vocab,
                                         const acrotag_model_config* model,
                                         const acrotag_train_config* config,
                                         acrotag_bundle** out, char** history,
                                         acrotag_train_report* report);

ACROTAG_API acrotag_status acrotag_bundle_load(const char* path, acrotag_bundle** out);
ACROTAG_API acrotag_status acrotag_bundle_save(const acrotag_bundle* bundle,
                                               const char* path);
ACROTAG_API void acrotag_bundle_free(acrotag_bundle* bundle);

/* Copy of `dataset` with predicted spans in place of the annotations. */
ACROTAG_API acrotag_status acrotag_predict(const acrotag_bundle* bundle,
                                           const acrotag_dataset* dataset,
                                           acrotag_dataset** out);

/* ---- evaluation ----------------------------------------------------------- */

typedef struct acrotag_prf {
  double precision;
  double recall;
  double f1;
  size_t tp;
  size_t fp;
  size_t fn;
} acrotag_prf;

typedef struct acrotag_metrics {
  acrotag_prf acronym;
  acrotag_prf long_form;
  acrotag_prf combined;
} acrotag_metrics;

/* Exact-match scoring of the spans in `predicted` against `gold`, matched by
 * document id. */
ACROTAG_API acrotag_status acrotag_score(const acrotag_dataset* predicted,
                                         const acrotag_dataset* gold,
                                         acrotag_metrics* out);
ACROTAG_API acrotag_status acrotag_report(const acrotag_metrics* metrics,
                                          int fine_grained, char** out);

/* ---- data augmentation ------------------------------------------------------ */

/* Sentences whose predictions are confident (see documentation) become
 * documents "pseudo-<i>" annotated with the predicted spans. */
ACROTAG_API acrotag_status acrotag_pseudo_label(const acrotag_bundle* bundle,
                                                const acrotag_dataset* sentences,
                                                double tau, acrotag_dataset** out);

/* "V D" header, then V lines of "word d1 .. dD". */
ACROTAG_API acrotag_status acrotag_embeddings_load(const char* path,
                                                   acrotag_embeddings** out);
ACROTAG_API void acrotag_embeddings_free(acrotag_embeddings* embeddings);

/* Augmented copies (ids suffixed "-adv") of documents in which at least one
 * word outside the annotations was swapped for an embedding neighbour. */
ACROTAG_API acrotag_status acrotag_augment(const acrotag_dataset* dataset,
                                           const acrotag_embeddings* embeddings,
                                           double min_similarity,
                                           double replace_fraction, uint64_t seed,
                                           acrotag_dataset** out);

#ifdef __cplusplus
}
#endif

#endif /* ACROTAG_ACROTAG_H_ */
