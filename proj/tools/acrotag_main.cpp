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

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "acrotag/acrotag.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"stats", "Dataset statistics"},
    {"tokenize", "Subword tokenization with offsets"},
    {"convert", "Token / BIO label TSV of a dataset"},
    {"rule-extract", "Rule-based acronym and long-form extraction"},
    {"filter", "Keep sentences that likely contain acronyms"},
    {"pretrain", "Masked-language-model pretraining"},
    {"train", "Train the tagger"},
    {"predict", "Tag a dataset or a text file"},
    {"score", "Exact-match precision, recall and F1"},
    {"zeroshot", "Train on concatenated datasets, score on another"},
    {"pseudo-label", "Confident predictions as new training data"},
    {"augment", "Embedding-neighbour word swaps"},
};

struct Failure : std::runtime_error {
  Failure(acrotag_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  acrotag_status status;
};

void Check(acrotag_status s) {
  if (s != ACROTAG_OK) throw Failure(s, acrotag_last_error());
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

int ReportError(const std::string& code, const std::string& message, int exit_code) {
  std::cerr << "error: code=" << code << " message=\"" << Escape(message) << "\"\n";
  return exit_code;
}

std::string Usage() {
  std::string s = "usage: acrotag <command> [options]\n\ncommands:\n";
  for (const auto& [name, desc] : kCommands) {
    s += "  " + name + std::string(14 - name.size(), ' ') + desc + "\n";
  }
  s += "\nRun 'acrotag <command> --help' for the options of a command.\n";
  return s;
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using DatasetPtr = std::unique_ptr<acrotag_dataset, Deleter<acrotag_dataset, acrotag_dataset_free>>;
using TokenizerPtr =
    std::unique_ptr<acrotag_tokenizer, Deleter<acrotag_tokenizer, acrotag_tokenizer_free>>;
using BundlePtr = std::unique_ptr<acrotag_bundle, Deleter<acrotag_bundle, acrotag_bundle_free>>;
using EmbeddingsPtr =
    std::unique_ptr<acrotag_embeddings, Deleter<acrotag_embeddings, acrotag_embeddings_free>>;
using StringPtr = std::unique_ptr<char, Deleter<char, acrotag_string_free>>;

std::string FormatNumber(double v) {
  std::ostringstream o;
  o << v;
  std::string s = o.str();
  if (std::isfinite(v) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

template <typename T>
CLI::Option* Add(CLI::App* app, const std::string& name, T& value, const std::string& desc) {
  auto* opt = app->add_option(name, value, desc);
  if constexpr (std::is_floating_point_v<T>) {
    opt->default_str(FormatNumber(static_cast<double>(value)));
  } else if constexpr (std::is_arithmetic_v<T>) {
    opt->default_str(std::to_string(value));
  } else {
    if (!value.empty()) opt->default_str(value);
  }
  return opt;
}

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure(ACROTAG_ERR_IO, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw Failure(ACROTAG_ERR_IO, "write to " + path + " failed");
}

bool EndsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Settings shared by the commands.
struct Common {
  uint64_t seed = 0;
  std::string config;
  bool lenient = false;
  bool inclusive_ends = false;
  std::string id_field = "id";
  std::string text_field = "text";
  std::string acronyms_field = "acronyms";
  std::string long_forms_field = "long-forms";
};

struct Settings {
  Common common;
  acrotag_vocab_options vocab{};
  acrotag_model_config model{};
  acrotag_train_config train{};
  acrotag_pretrain_config pretrain{};
  std::string char_vectors;
  bool freeze_char_vectors = false;
  bool no_char = false;
  bool no_max_loss = false;
  bool no_mask_loss = false;
  bool first_occurrence_only = false;
  bool fine_grained = false;
  bool score_input = false;
  double rule_threshold = 0.6;
  double filter_threshold = 0.5;
  double tau = 0.95;
  double min_sim = 0.8;
  double replace_frac = 0.2;
  std::string input, output, model_path, vocab_path, chars_path, text;
  std::string train_path, dev_path, test_path, history, save_vocab, init_from, pred, gold, embeddings;
  std::vector<std::string> train_paths;
  size_t pretrain_epochs = 0;
  size_t pretrain_batch = 0;
  double pretrain_lr = 0.0;
  bool with_pretrain = false;

  Settings() {
    acrotag_vocab_options_default(&vocab);
    acrotag_model_config_default(&model);
    acrotag_train_config_default(&train);
    acrotag_pretrain_config_default(&pretrain);
    pretrain_epochs = pretrain.epochs;
    pretrain_batch = pretrain.batch_size;
    pretrain_lr = pretrain.learning_rate;
  }

  acrotag_load_options Load() const {
    acrotag_load_options o;
    acrotag_load_options_default(&o);
    o.lenient = common.lenient ? 1 : 0;
    o.inclusive_ends = common.inclusive_ends ? 1 : 0;
    o.id_field = common.id_field.c_str();
    o.text_field = common.text_field.c_str();
    o.acronyms_field = common.acronyms_field.c_str();
    o.long_forms_field = common.long_forms_field.c_str();
    return o;
  }

  // Applies the single seed and the boolean switches to the library structs.
  void Finalize() {
    model.seed = common.seed;
    train.seed = common.seed;
    pretrain.seed = common.seed;
    model.char_vectors_path = char_vectors.empty() ? nullptr : char_vectors.c_str();
    model.freeze_char_embeddings = freeze_char_vectors ? 1 : 0;
    train.no_char = no_char ? 1 : 0;
    train.no_max_loss = no_max_loss ? 1 : 0;
    train.no_mask_loss = no_mask_loss ? 1 : 0;
    train.first_occurrence_only = first_occurrence_only ? 1 : 0;
    pretrain.epochs = pretrain_epochs;
    pretrain.batch_size = pretrain_batch;
    pretrain.learning_rate = pretrain_lr;
  }
};

void AddCommon(CLI::App* app, Settings& s) {
  Add(app, "--seed", s.common.seed, "Seed for every random draw");
  app->add_option("--config", s.common.config,
                  "File of 'key = value' lines mirroring the flags; flags override it");
}

void AddLoad(CLI::App* app, Settings& s) {
  app->add_flag("--lenient", s.common.lenient,
                "Drop invalid spans and duplicate records with a warning instead of failing");
  app->add_flag("--inclusive-ends", s.common.inclusive_ends,
                "Input span ends are inclusive (shifted by +1 on load)");
  Add(app, "--id-field", s.common.id_field, "Record field holding the document id");
  Add(app, "--text-field", s.common.text_field, "Record field holding the text");
  Add(app, "--acronyms-field", s.common.acronyms_field, "Record field holding acronym spans");
  Add(app, "--long-forms-field", s.common.long_forms_field,
      "Record field holding long-form spans");
}

void AddVocab(CLI::App* app, Settings& s) {
  Add(app, "--char-len", s.vocab.char_len, "Token character length (char CNN input)");
  Add(app, "--max-pieces", s.vocab.max_pieces, "Multi-character subword pieces kept");
  Add(app, "--min-count", s.vocab.min_count, "Minimum frequency of a multi-character piece");
}

void AddModel(CLI::App* app, Settings& s) {
  Add(app, "--d-tok", s.model.d_tok, "Token embedding / encoder width");
  Add(app, "--d-char", s.model.d_char, "Character embedding width");
  Add(app, "--filters", s.model.n_filters, "Number of CNN filters");
  Add(app, "--filter-size", s.model.filter_size, "CNN filter size");
  Add(app, "--layers", s.model.encoder_layers, "Context encoder layers");
  app->add_option("--char-vectors", s.char_vectors,
                  "Pretrained character vectors ('char d1 .. dD' lines)");
  app->add_flag("--freeze-char-vectors", s.freeze_char_vectors,
                "Keep loaded character vectors fixed during training");
}

void AddTrain(CLI::App* app, Settings& s) {
  Add(app, "--lambda-max", s.train.lambda_max, "Weight of the max-loss term (lambda_max)");
  Add(app, "--lambda-mask", s.train.lambda_mask, "Weight of the mask-loss term (lambda_mask)");
  Add(app, "--mask-rate", s.train.mask_rate, "Mask rate of positive-label tokens");
  Add(app, "--lr", s.train.learning_rate, "Peak learning rate");
  Add(app, "--epochs", s.train.epochs, "Training epochs");
  Add(app, "--batch-size", s.train.batch_size, "Batch size");
  Add(app, "--warmup", s.train.warmup_steps, "Warmup steps (negative: 10% of all steps)");
  Add(app, "--weight-decay", s.train.weight_decay, "Decoupled weight decay");
  Add(app, "--max-grad-norm", s.train.max_grad_norm, "Gradient clipping norm");
  Add(app, "--max-seq-len", s.train.max_seq_len, "Tokens kept per document");
  app->add_flag("--no-char", s.no_char, "Ablation: disable the character pathway");
  app->add_flag("--no-max-loss", s.no_max_loss, "Ablation: drop the max-loss term");
  app->add_flag("--no-mask-loss", s.no_mask_loss, "Ablation: drop the mask-loss term");
  app->add_flag("--first-occurrence-only", s.first_occurrence_only,
                "Label only the first occurrence of each annotated string");
  app->add_option("--history", s.history, "Write the per-epoch metric history here");
}

void AddPretrain(CLI::App* app, Settings& s, const std::string& prefix) {
  Add(app, "--" + prefix + "epochs", s.pretrain_epochs, "MLM pretraining epochs");
  Add(app, "--" + prefix + "batch-size", s.pretrain_batch, "MLM batch size");
  Add(app, "--" + prefix + "lr", s.pretrain_lr, "MLM peak learning rate");
  Add(app, "--mask-prob", s.pretrain.mask_prob, "MLM token selection probability");
}

DatasetPtr LoadDataset(const std::string& path, const Settings& s) {
  acrotag_dataset* ds = nullptr;
  const acrotag_load_options o = s.Load();
  Check(acrotag_dataset_load(path.c_str(), &o, &ds));
  DatasetPtr out(ds);
  for (size_t i = 0; i < acrotag_dataset_warning_count(ds); ++i) {
    std::cerr << "warning: " << acrotag_dataset_warning(ds, i) << "\n";
  }
  return out;
}

// JSON datasets are loaded as such; anything else is one sentence per line.
DatasetPtr LoadTextOrDataset(const std::string& path, const Settings& s) {
  if (EndsWith(path, ".json")) return LoadDataset(path, s);
  acrotag_dataset* ds = nullptr;
  Check(acrotag_dataset_from_lines(path.c_str(), &ds));
  return DatasetPtr(ds);
}

std::string Take(char* s) {
  StringPtr p(s);
  return p ? std::string(p.get()) : std::string();
}

void WriteDataset(const acrotag_dataset* ds, const std::string& path) {
  char* json = nullptr;
  Check(acrotag_dataset_serialize(ds, 0, &json));
  WriteText(path, Take(json));
}

BundlePtr LoadBundle(const std::string& path) {
  acrotag_bundle* b = nullptr;
  Check(acrotag_bundle_load(path.c_str(), &b));
  return BundlePtr(b);
}

std::string FormatReport(const acrotag_metrics& m, bool fine_grained) {
  char* r = nullptr;
  Check(acrotag_report(&m, fine_grained ? 1 : 0, &r));
  return Take(r);
}

int RunStats(Settings& s) {
  auto ds = LoadDataset(s.input, s);
  acrotag_stats st;
  Check(acrotag_dataset_stats(ds.get(), &st));
  char buf[512];
  std::snprintf(buf, sizeof buf,
                "documents\t%zu\navg_words\t%.2f\navg_acronyms\t%.2f\navg_long_forms\t%.2f\n"
                "both\t%zu\nonly_acronym\t%zu\nonly_long_form\t%zu\nneither\t%zu\n",
                st.n_docs, st.avg_word_length, st.avg_acronyms, st.avg_long_forms, st.n_both,
                st.n_only_acr, st.n_only_lf, st.n_neither);
  WriteText(s.output, buf);
  return 0;
}

TokenizerPtr ResolveTokenizer(Settings& s, const acrotag_dataset* corpus) {
  acrotag_tokenizer* t = nullptr;
  if (!s.model_path.empty()) {
    auto b = LoadBundle(s.model_path);
    Check(acrotag_tokenizer_from_bundle(b.get(), &t));
  } else if (!s.vocab_path.empty() || !s.chars_path.empty()) {
    if (s.vocab_path.empty() || s.chars_path.empty()) {
      throw Failure(ACROTAG_ERR_INVALID_ARGUMENT, "--vocab and --chars go together");
    }
    Check(acrotag_tokenizer_load(s.vocab_path.c_str(), s.chars_path.c_str(), s.vocab.char_len, &t));
  } else if (corpus != nullptr) {
    Check(acrotag_tokenizer_build(corpus, &s.vocab, &t));
  } else {
    throw Failure(ACROTAG_ERR_INVALID_ARGUMENT, "need --model, --vocab/--chars or --corpus");
  }
  return TokenizerPtr(t);
}

int RunTokenize(Settings& s) {
  DatasetPtr corpus;
  if (!s.train_path.empty()) corpus = LoadTextOrDataset(s.train_path, s);
  auto t = ResolveTokenizer(s, corpus.get());
  std::vector<std::string> texts;
  if (!s.text.empty()) texts.push_back(s.text);
  if (!s.input.empty()) {
    std::ifstream in(s.input, std::ios::binary);
    if (!in) throw Failure(ACROTAG_ERR_IO, "cannot open " + s.input);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      texts.push_back(line);
    }
  }
  if (texts.empty()) throw Failure(ACROTAG_ERR_INVALID_ARGUMENT, "need --text or --input");
  std::string out;
  for (size_t i = 0; i < texts.size(); ++i) {
    char* tsv = nullptr;
    Check(acrotag_tokenize(t.get(), texts[i].c_str(), &tsv));
    out += Take(tsv);
    if (texts.size() > 1) out += "\n";
  }
  WriteText(s.output, out);
  if (!s.save_vocab.empty()) {
    Check(acrotag_tokenizer_save(t.get(), s.save_vocab.c_str(), (s.save_vocab + ".chars").c_str()));
  }
  return 0;
}

int RunConvert(Settings& s) {
  auto ds = LoadDataset(s.input, s);
  DatasetPtr corpus;
  if (!s.train_path.empty()) corpus = LoadTextOrDataset(s.train_path, s);
  auto t = ResolveTokenizer(s, corpus ? corpus.get() : ds.get());
  char* tsv = nullptr;
  Check(acrotag_convert(t.get(), ds.get(), s.first_occurrence_only ? 1 : 0, &tsv));
  WriteText(s.output, Take(tsv));
  return 0;
}

int RunRuleExtract(Settings& s) {
  auto ds = LoadDataset(s.input, s);
  acrotag_dataset* out = nullptr;
  Check(acrotag_rule_extract(ds.get(), s.rule_threshold, &out));
  DatasetPtr pred(out);
  WriteDataset(pred.get(), s.output);
  if (s.score_input) {
    acrotag_metrics m;
    Check(acrotag_score(pred.get(), ds.get(), &m));
    std::cerr << FormatReport(m, s.fine_grained);
  }
  return 0;
}

int RunFilter(Settings& s) {
  std::ifstream in(s.input, std::ios::binary);
  if (!in) throw Failure(ACROTAG_ERR_IO, "cannot open " + s.input);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(line);
  }
  std::vector<const char*> ptrs;
  for (const auto& l : lines) ptrs.push_back(l.c_str());
  std::vector<int> keep(lines.size(), 0);
  Check(acrotag_filter_sentences(ptrs.data(), ptrs.size(), s.filter_threshold, keep.data()));
  std::string out;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (keep[i]) out += lines[i] + "\n";
  }
  WriteText(s.output, out);
  return 0;
}

int RunPretrain(Settings& s) {
  auto ds = LoadTextOrDataset(s.input, s);
  acrotag_bundle* b = nullptr;
  acrotag_pretrain_report r;
  Check(acrotag_pretrain(ds.get(), &s.vocab, &s.model, &s.pretrain, &b, &r));
  BundlePtr bundle(b);
  Check(acrotag_bundle_save(bundle.get(), s.output.c_str()));
  std::printf("vocab_size\t%zu\ninitial_mlm_loss\t%.6f\nfinal_mlm_loss\t%.6f\n", r.vocab_size,
              r.initial_loss, r.final_loss);
  return 0;
}

// Trains on `train`, starting from --init-from or, with --pretrain, from MLM
// pretraining on the training texts.
BundlePtr TrainModel(Settings& s, const acrotag_dataset* train, const acrotag_dataset* dev) {
  BundlePtr init;
  if (!s.init_from.empty()) {
    init = LoadBundle(s.init_from);
  } else if (s.with_pretrain) {
    acrotag_bundle* b = nullptr;
    acrotag_pretrain_report r;
    Check(acrotag_pretrain(train, &s.vocab, &s.model, &s.pretrain, &b, &r));
    init.reset(b);
  }
  acrotag_bundle* out = nullptr;
  char* history = nullptr;
  acrotag_train_report report;
  Check(acrotag_train(train, dev, init.get(), &s.vocab, &s.model, &s.train, &out, &history,
                      &report));
  BundlePtr bundle(out);
  const std::string h = Take(history);
  if (!s.history.empty()) WriteText(s.history, h);
  std::fprintf(stderr, "best_epoch %zu steps %zu truncated %zu\n", report.best_epoch, report.steps,
               report.truncated);
  return bundle;
}

int RunTrain(Settings& s) {
  auto train = LoadDataset(s.train_path, s);
  DatasetPtr dev;
  if (!s.dev_path.empty()) dev = LoadDataset(s.dev_path, s);
  auto bundle = TrainModel(s, train.get(), dev.get());
  if (!s.output.empty()) Check(acrotag_bundle_save(bundle.get(), s.output.c_str()));
  if (dev) {
    acrotag_dataset* out = nullptr;
    Check(acrotag_predict(bundle.get(), dev.get(), &out));
    DatasetPtr pred(out);
    acrotag_metrics m;
    Check(acrotag_score(pred.get(), dev.get(), &m));
    std::cout << FormatReport(m, s.fine_grained);
  }
  return 0;
}

int RunPredict(Settings& s) {
  auto bundle = LoadBundle(s.model_path);
  auto ds = LoadTextOrDataset(s.input, s);
  acrotag_dataset* out = nullptr;
  Check(acrotag_predict(bundle.get(), ds.get(), &out));
  DatasetPtr pred(out);
  WriteDataset(pred.get(), s.output);
  return 0;
}

int RunScore(Settings& s) {
  auto pred = LoadDataset(s.pred, s);
  auto gold = LoadDataset(s.gold, s);
  acrotag_metrics m;
  Check(acrotag_score(pred.get(), gold.get(), &m));
  WriteText(s.output, FormatReport(m, s.fine_grained));
  return 0;
}

int RunZeroshot(Settings& s) {
  std::vector<DatasetPtr> parts;
  std::vector<const acrotag_dataset*> raw;
  for (const auto& p : s.train_paths) {
    parts.push_back(LoadDataset(p, s));
    raw.push_back(parts.back().get());
  }
  acrotag_dataset* joined = nullptr;
  Check(acrotag_dataset_concat(raw.data(), raw.size(), &joined));
  DatasetPtr train(joined);
  DatasetPtr dev;
  if (!s.dev_path.empty()) dev = LoadDataset(s.dev_path, s);
  auto test = LoadDataset(s.test_path, s);
  auto bundle = TrainModel(s, train.get(), dev.get());
  if (!s.model_path.empty()) Check(acrotag_bundle_save(bundle.get(), s.model_path.c_str()));
  acrotag_dataset* out = nullptr;
  Check(acrotag_predict(bundle.get(), test.get(), &out));
  DatasetPtr pred(out);
  if (!s.pred.empty()) WriteDataset(pred.get(), s.pred);
  acrotag_metrics m;
  Check(acrotag_score(pred.get(), test.get(), &m));
  WriteText(s.output, FormatReport(m, s.fine_grained));
  return 0;
}

int RunPseudoLabel(Settings& s) {
  auto bundle = LoadBundle(s.model_path);
  auto ds = LoadTextOrDataset(s.input, s);
  acrotag_dataset* out = nullptr;
  Check(acrotag_pseudo_label(bundle.get(), ds.get(), s.tau, &out));
  DatasetPtr labelled(out);
  WriteDataset(labelled.get(), s.output);
  std::fprintf(stderr, "accepted %zu of %zu\n", acrotag_dataset_size(labelled.get()),
               acrotag_dataset_size(ds.get()));
  return 0;
}

int RunAugment(Settings& s) {
  auto ds = LoadDataset(s.input, s);
  acrotag_embeddings* e = nullptr;
  Check(acrotag_embeddings_load(s.embeddings.c_str(), &e));
  EmbeddingsPtr emb(e);
  acrotag_dataset* out = nullptr;
  Check(acrotag_augment(ds.get(), emb.get(), s.min_sim, s.replace_frac, s.common.seed, &out));
  DatasetPtr augmented(out);
  WriteDataset(augmented.get(), s.output);
  std::fprintf(stderr, "augmented %zu of %zu\n", acrotag_dataset_size(augmented.get()),
               acrotag_dataset_size(ds.get()));
  return 0;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// "key = value" lines become "--key=value" arguments.
std::vector<std::string> ConfigArguments(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(ACROTAG_ERR_IO, "cannot open config " + path);
  std::vector<std::string> args;
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Failure(ACROTAG_ERR_PARSE, path + ":" + std::to_string(n) + ": expected 'key = value'");
    }
    std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    for (char& c : key) {
      if (c == '_') c = '-';
    }
    if (key.empty() || key == "config") {
      throw Failure(ACROTAG_ERR_PARSE, path + ":" + std::to_string(n) + ": invalid key");
    }
    args.push_back("--" + key + "=" + value);
  }
  return args;
}

std::string ConfigPath(const std::vector<std::string>& args) {
  std::string path;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  return path;
}

struct Command {
  CLI::App* app;
  int (*run)(Settings&);
};

int Main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.empty()) {
    std::cerr << Usage();
    return kExitUsage;
  }
  const std::string& first = args[0];
  if (first == "-h" || first == "--help") {
    std::cout << Usage();
    return 0;
  }
  if (first == "--version") {
    std::cout << acrotag_version() << "\n";
    return 0;
  }
  bool known = false;
  for (const auto& c : kCommands) known = known || c.first == first;
  if (!known) {
    std::cerr << Usage();
    return ReportError("USAGE", "unknown command '" + first + "'", kExitUsage);
  }

  const std::string config = ConfigPath(args);
  if (!config.empty()) {
    auto extra = ConfigArguments(config);
    args.insert(args.begin() + 1, extra.begin(), extra.end());
  }

  Settings s;
  CLI::App app("Acronym and long-form extraction toolkit", "acrotag");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::vector<Command> commands;
  auto sub = [&](const std::string& name, int (*run)(Settings&)) {
    std::string desc;
    for (const auto& c : kCommands) {
      if (c.first == name) desc = c.second;
    }
    CLI::App* c = app.add_subcommand(name, desc);
    AddCommon(c, s);
    commands.push_back({c, run});
    return c;
  };

  auto* stats = sub("stats", RunStats);
  stats->add_option("--input,-i", s.input, "Dataset file")->required();
  stats->add_option("--output,-o", s.output, "Output file (default stdout)");
  AddLoad(stats, s);

  auto* tokenize = sub("tokenize", RunTokenize);
  tokenize->add_option("--text", s.text, "Text to tokenize");
  tokenize->add_option("--input,-i", s.input, "File of lines to tokenize");
  tokenize->add_option("--model,-m", s.model_path, "Take the tokenizer from a model file");
  tokenize->add_option("--vocab", s.vocab_path, "Vocabulary file (one piece per line)");
  tokenize->add_option("--chars", s.chars_path, "Character table file");
  tokenize->add_option("--corpus", s.train_path, "Build the tokenizer from this corpus");
  tokenize->add_option("--save-vocab", s.save_vocab,
                       "Write the vocabulary here and the character table to <path>.chars");
  tokenize->add_option("--output,-o", s.output, "Output file (default stdout)");
  AddVocab(tokenize, s);
  AddLoad(tokenize, s);

  auto* convert = sub("convert", RunConvert);
  convert->add_option("--input,-i", s.input, "Dataset file")->required();
  convert->add_option("--output,-o", s.output, "Output file (default stdout)");
  convert->add_option("--model,-m", s.model_path, "Take the tokenizer from a model file");
  convert->add_option("--vocab", s.vocab_path, "Vocabulary file");
  convert->add_option("--chars", s.chars_path, "Character table file");
  convert->add_option("--corpus", s.train_path,
                      "Build the tokenizer from this corpus (default: the input)");
  convert->add_flag("--first-occurrence-only", s.first_occurrence_only,
                    "Label only the first occurrence of each annotated string");
  AddVocab(convert, s);
  AddLoad(convert, s);

  auto* rule = sub("rule-extract", RunRuleExtract);
  rule->add_option("--input,-i", s.input, "Dataset file")->required();
  rule->add_option("--output,-o", s.output, "Predictions file (default stdout)");
  Add(rule, "--threshold", s.rule_threshold, "Uppercase share above which a word is an acronym");
  rule->add_flag("--score", s.score_input,
                 "Also score the predictions against the input annotations (on stderr)");
  rule->add_flag("--fine-grained", s.fine_grained, "Per-type scores");
  AddLoad(rule, s);

  auto* filter = sub("filter", RunFilter);
  filter->add_option("--input,-i", s.input, "Text file, one sentence per line")->required();
  filter->add_option("--output,-o", s.output, "Output file (default stdout)");
  Add(filter, "--threshold", s.filter_threshold, "Uppercase share of the sentence letters");

  auto* pretrain = sub("pretrain", RunPretrain);
  pretrain->add_option("--input,-i", s.input, "Dataset (.json) or text file of sentences")
      ->required();
  pretrain->add_option("--output,-o", s.output, "Model file")->required();
  AddPretrain(pretrain, s, "");
  AddModel(pretrain, s);
  AddVocab(pretrain, s);
  AddLoad(pretrain, s);

  auto* train = sub("train", RunTrain);
  train->add_option("--train,-t", s.train_path, "Training dataset")->required();
  train->add_option("--dev,-d", s.dev_path, "Dev dataset (best epoch by combined F1)");
  train->add_option("--output,-o", s.output, "Model file");
  train->add_option("--init-from", s.init_from, "Start from a pretrained model file");
  train->add_flag("--pretrain", s.with_pretrain,
                  "Run MLM pretraining on the training texts first");
  train->add_flag("--fine-grained", s.fine_grained, "Per-type dev scores");
  AddTrain(train, s);
  AddPretrain(train, s, "pretrain-");
  AddModel(train, s);
  AddVocab(train, s);
  AddLoad(train, s);

  auto* predict = sub("predict", RunPredict);
  predict->add_option("--model,-m", s.model_path, "Model file")->required();
  predict->add_option("--input,-i", s.input, "Dataset (.json) or text file")->required();
  predict->add_option("--output,-o", s.output, "Predictions file (default stdout)");
  AddLoad(predict, s);

  auto* score = sub("score", RunScore);
  score->add_option("--pred,-p", s.pred, "Predictions file")->required();
  score->add_option("--gold,-g", s.gold, "Gold file")->required();
  score->add_option("--output,-o", s.output, "Output file (default stdout)");
  score->add_flag("--fine-grained", s.fine_grained, "Per-type scores");
  AddLoad(score, s);

  auto* zeroshot = sub("zeroshot", RunZeroshot);
  zeroshot->add_option("--train,-t", s.train_paths, "Training datasets")
      ->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->expected(1, -1);
  zeroshot->add_option("--dev,-d", s.dev_path, "Dev dataset");
  zeroshot->add_option("--test", s.test_path, "Evaluation dataset")->required();
  zeroshot->add_option("--model,-m", s.model_path, "Also save the model here");
  zeroshot->add_option("--pred,-p", s.pred, "Also write test predictions here");
  zeroshot->add_option("--output,-o", s.output, "Score report (default stdout)");
  zeroshot->add_option("--init-from", s.init_from, "Start from a pretrained model file");
  zeroshot->add_flag("--pretrain", s.with_pretrain,
                     "Run MLM pretraining on the training texts first");
  zeroshot->add_flag("--fine-grained", s.fine_grained, "Per-type scores");
  AddTrain(zeroshot, s);
  AddPretrain(zeroshot, s, "pretrain-");
  AddModel(zeroshot, s);
  AddVocab(zeroshot, s);
  AddLoad(zeroshot, s);

  auto* pseudo = sub("pseudo-label", RunPseudoLabel);
  pseudo->add_option("--model,-m", s.model_path, "Model file")->required();
  pseudo->add_option("--input,-i", s.input, "Dataset (.json) or text file")->required();
  pseudo->add_option("--output,-o", s.output, "Dataset file (default stdout)");
  Add(pseudo, "--tau", s.tau, "Minimum probability of every predicted positive token");
  AddLoad(pseudo, s);

  auto* augment = sub("augment", RunAugment);
  augment->add_option("--input,-i", s.input, "Dataset file")->required();
  augment->add_option("--embeddings,-e", s.embeddings, "Word vectors ('V D' header)")->required();
  augment->add_option("--output,-o", s.output, "Dataset file (default stdout)");
  Add(augment, "--min-sim", s.min_sim, "Minimum cosine similarity of a replacement");
  Add(augment, "--replace-frac", s.replace_frac, "Fraction of eligible words replaced");
  AddLoad(augment, s);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return ReportError("USAGE", e.what(), kExitUsage);
  }
  s.Finalize();
  for (const Command& c : commands) {
    if (c.app->parsed()) return c.run(s);
  }
  std::cerr << Usage();
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Main(argc, argv);
  } catch (const Failure& f) {
    return ReportError(acrotag_status_name(f.status), f.what(), kExitFailure);
  } catch (const std::exception& e) {
    return ReportError("INTERNAL", e.what(), kExitFailure);
  }
}
