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
#include <cstring>
#include <fstream>
#include <string>

#include "acrotag/acrotag.h"
#include "support/json_corpus.hpp"
#include "support/tempdir.hpp"

namespace {

std::string Take(char* s) {
  std::string out = s != nullptr ? s : "";
  acrotag_string_free(s);
  return out;
}

acrotag_dataset* Parse(const std::string& json) {
  acrotag_dataset* ds = nullptr;
  REQUIRE(acrotag_dataset_parse(json.data(), json.size(), nullptr, &ds) == ACROTAG_OK);
  return ds;
}

size_t CountLines(const std::string& s, const std::string& line) {
  size_t n = 0;
  size_t pos = 0;
  while ((pos = s.find(line, pos)) != std::string::npos) {
    ++n;
    pos += line.size();
  }
  return n;
}

struct Small {
  acrotag_vocab_options vocab;
  acrotag_model_config model;
  acrotag_train_config train;
  Small() {
    acrotag_vocab_options_default(&vocab);
    acrotag_model_config_default(&model);
    acrotag_train_config_default(&train);
    model.d_tok = 16;
    model.d_char = 8;
    model.n_filters = 8;
    train.epochs = 2;
    train.seed = 5;
    model.seed = 5;
  }
};

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("status names and version") {
    CHECK(std::strcmp(acrotag_status_name(ACROTAG_OK), "OK") == 0);
    CHECK(std::strcmp(acrotag_status_name(ACROTAG_ERR_PARSE), "PARSE") == 0);
    CHECK(std::strcmp(acrotag_status_name(ACROTAG_ERR_INVALID_ARGUMENT), "INVALID_ARGUMENT") == 0);
    CHECK(std::strlen(acrotag_version()) > 0);
  }

  TEST_CASE("dataset parse, serialize and errors") {
    const std::string json = acrotag::testing::JsonCorpus(8);
    acrotag_dataset* ds = Parse(json);
    CHECK(acrotag_dataset_size(ds) == 8);
    char* out = nullptr;
    REQUIRE(acrotag_dataset_serialize(ds, 0, &out) == ACROTAG_OK);
    const std::string once = Take(out);
    acrotag_dataset* again = Parse(once);
    REQUIRE(acrotag_dataset_serialize(again, 0, &out) == ACROTAG_OK);
    CHECK(Take(out) == once);
    acrotag_dataset_free(again);

    acrotag_stats st;
    REQUIRE(acrotag_dataset_stats(ds, &st) == ACROTAG_OK);
    CHECK(st.n_docs == 8);
    CHECK(st.n_both + st.n_only_acr + st.n_only_lf + st.n_neither == 8);
    CHECK(st.n_both == 4);
    CHECK(st.n_neither == 2);
    acrotag_dataset_free(ds);

    acrotag_dataset* bad = nullptr;
    const std::string broken = "[{\"id\":";
    CHECK(acrotag_dataset_parse(broken.data(), broken.size(), nullptr, &bad) == ACROTAG_ERR_PARSE);
    CHECK(std::strlen(acrotag_last_error()) > 0);
    CHECK(bad == nullptr);

    const std::string oob = R"([{"id":"a","text":"abc","acronyms":[[0,9]],"long-forms":[]}])";
    CHECK(acrotag_dataset_parse(oob.data(), oob.size(), nullptr, &bad) == ACROTAG_ERR_VALIDATION);
    acrotag_load_options lenient;
    acrotag_load_options_default(&lenient);
    lenient.lenient = 1;
    REQUIRE(acrotag_dataset_parse(oob.data(), oob.size(), &lenient, &bad) == ACROTAG_OK);
    CHECK(acrotag_dataset_warning_count(bad) == 1);
    CHECK(acrotag_dataset_warning(bad, 0) != nullptr);
    CHECK(acrotag_dataset_warning(bad, 1) == nullptr);
    CHECK(std::strlen(acrotag_last_error()) == 0);
    acrotag_dataset_free(bad);

    CHECK(acrotag_dataset_load("/nonexistent/file.json", nullptr, &bad) == ACROTAG_ERR_IO);
    CHECK(acrotag_dataset_parse(nullptr, 0, nullptr, &bad) == ACROTAG_ERR_INVALID_ARGUMENT);
  }

  TEST_CASE("field-name mapping") {
    const std::string json =
        R"([{"ID":"x","sentence":"The LNS test","acr":[[4,7]],"lf":[]}])";
    acrotag_load_options o;
    acrotag_load_options_default(&o);
    acrotag_dataset* ds = nullptr;
    CHECK(acrotag_dataset_parse(json.data(), json.size(), &o, &ds) == ACROTAG_ERR_PARSE);
    o.id_field = "ID";
    o.text_field = "sentence";
    o.acronyms_field = "acr";
    o.long_forms_field = "lf";
    REQUIRE(acrotag_dataset_parse(json.data(), json.size(), &o, &ds) == ACROTAG_OK);
    acrotag_stats st;
    REQUIRE(acrotag_dataset_stats(ds, &st) == ACROTAG_OK);
    CHECK(st.n_only_acr == 1);
    acrotag_dataset_free(ds);
  }

  TEST_CASE("concatenation rejects clashing ids") {
    acrotag_dataset* a = Parse(acrotag::testing::JsonCorpus(3, "a"));
    acrotag_dataset* b = Parse(acrotag::testing::JsonCorpus(4, "b"));
    const acrotag_dataset* parts[] = {a, b};
    acrotag_dataset* joined = nullptr;
    REQUIRE(acrotag_dataset_concat(parts, 2, &joined) == ACROTAG_OK);
    CHECK(acrotag_dataset_size(joined) == 7);
    acrotag_dataset_free(joined);
    const acrotag_dataset* twice[] = {a, a};
    CHECK(acrotag_dataset_concat(twice, 2, &joined) == ACROTAG_ERR_VALIDATION);
    acrotag_dataset_free(a);
    acrotag_dataset_free(b);
  }

  TEST_CASE("tokenize and convert") {
    acrotag_dataset* ds = Parse(acrotag::testing::JsonCorpus(12));
    acrotag_tokenizer* t = nullptr;
    REQUIRE(acrotag_tokenizer_build(ds, nullptr, &t) == ACROTAG_OK);
    char* tsv = nullptr;
    REQUIRE(acrotag_tokenize(t, "We propose", &tsv) == ACROTAG_OK);
    const std::string tokens = Take(tsv);
    CHECK(tokens.rfind("We\t", 0) == 0);
    CHECK(tokens.find("\t0\t2\n") != std::string::npos);

    REQUIRE(acrotag_convert(t, ds, 0, &tsv) == ACROTAG_OK);
    const std::string conv = Take(tsv);
    CHECK(CountLines(conv, "\n\n") == 12);
    CHECK(conv.find("\t1\t") != std::string::npos);
    CHECK(conv.find("\t3\t11\t") != std::string::npos);

    acrotag::testing::TempDir dir("capi-tok");
    const std::string vocab = (dir / "vocab.txt").string();
    const std::string chars = (dir / "chars.tsv").string();
    REQUIRE(acrotag_tokenizer_save(t, vocab.c_str(), chars.c_str()) == ACROTAG_OK);
    acrotag_tokenizer* loaded = nullptr;
    REQUIRE(acrotag_tokenizer_load(vocab.c_str(), chars.c_str(), 16, &loaded) == ACROTAG_OK);
    REQUIRE(acrotag_convert(loaded, ds, 0, &tsv) == ACROTAG_OK);
    CHECK(Take(tsv) == conv);
    acrotag_tokenizer_free(loaded);
    acrotag_tokenizer_free(t);
    acrotag_dataset_free(ds);
  }

  TEST_CASE("rules and sentence filter") {
    const std::string json =
        R"([{"id":"f","text":"We use the Language Neural System (LNS) here.","acronyms":[[35,38]],"long-forms":[[11,33]]}])";
    acrotag_dataset* ds = Parse(json);
    acrotag_dataset* pred = nullptr;
    REQUIRE(acrotag_rule_extract(ds, 0.6, &pred) == ACROTAG_OK);
    acrotag_metrics m;
    REQUIRE(acrotag_score(pred, ds, &m) == ACROTAG_OK);
    CHECK(m.combined.f1 == 1.0);
    CHECK(m.acronym.tp == 1);
    CHECK(m.long_form.tp == 1);
    CHECK(acrotag_rule_extract(ds, 1.5, &pred) == ACROTAG_ERR_INVALID_ARGUMENT);
    acrotag_dataset_free(pred);
    acrotag_dataset_free(ds);

    const char* sentences[] = {"NASA AND ESA", "a quiet sentence", "McDonald opened"};
    int keep[3] = {-1, -1, -1};
    REQUIRE(acrotag_filter_sentences(sentences, 3, 0.5, keep) == ACROTAG_OK);
    CHECK(keep[0] == 1);
    CHECK(keep[1] == 0);
    CHECK(keep[2] == 0);
  }

  TEST_CASE("score and report") {
    acrotag_dataset* gold = Parse(acrotag::testing::JsonCorpus(6));
    acrotag_metrics m;
    REQUIRE(acrotag_score(gold, gold, &m) == ACROTAG_OK);
    CHECK(m.combined.f1 == 1.0);
    CHECK(m.combined.fp == 0);
    char* r = nullptr;
    REQUIRE(acrotag_report(&m, 0, &r) == ACROTAG_OK);
    CHECK(Take(r).find("Combined    1.0000 1.0000 1.0000") != std::string::npos);
    REQUIRE(acrotag_report(&m, 1, &r) == ACROTAG_OK);
    CHECK(Take(r).find("Acronyms    1.0000 1.0000 1.0000") != std::string::npos);
    acrotag_dataset* other = Parse(acrotag::testing::JsonCorpus(6, "zz"));
    CHECK(acrotag_score(other, gold, &m) != ACROTAG_OK);
    acrotag_dataset_free(other);
    acrotag_dataset_free(gold);
  }

  TEST_CASE("train, save, load and predict") {
    acrotag_dataset* train = Parse(acrotag::testing::JsonCorpus(40));
    acrotag_dataset* dev = Parse(acrotag::testing::JsonCorpus(10, "dev"));
    Small cfg;
    acrotag_bundle* b1 = nullptr;
    acrotag_bundle* b2 = nullptr;
    char* h1 = nullptr;
    char* h2 = nullptr;
    acrotag_train_report rep;
    REQUIRE(acrotag_train(train, dev, nullptr, &cfg.vocab, &cfg.model, &cfg.train, &b1, &h1,
                          &rep) == ACROTAG_OK);
    CHECK(rep.steps == 10);
    CHECK(rep.best_dev_f1 >= 0.0);
    REQUIRE(acrotag_train(train, dev, nullptr, &cfg.vocab, &cfg.model, &cfg.train, &b2, &h2,
                          nullptr) == ACROTAG_OK);
    const std::string history = Take(h1);
    CHECK(history == Take(h2));
    CHECK(history.rfind("epoch\tsplit\tloss", 0) == 0);
    CHECK(CountLines(history, "\n") == 1 + 2 * 3);

    acrotag::testing::TempDir dir("capi-bundle");
    const std::string p1 = (dir / "m1.bin").string();
    const std::string p2 = (dir / "m2.bin").string();
    REQUIRE(acrotag_bundle_save(b1, p1.c_str()) == ACROTAG_OK);
    REQUIRE(acrotag_bundle_save(b2, p2.c_str()) == ACROTAG_OK);
    std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
    const std::string bytes1((std::istreambuf_iterator<char>(f1)), {});
    const std::string bytes2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(bytes1 == bytes2);

    acrotag_bundle* loaded = nullptr;
    REQUIRE(acrotag_bundle_load(p1.c_str(), &loaded) == ACROTAG_OK);
    acrotag_dataset* pa = nullptr;
    acrotag_dataset* pb = nullptr;
    REQUIRE(acrotag_predict(b1, dev, &pa) == ACROTAG_OK);
    REQUIRE(acrotag_predict(loaded, dev, &pb) == ACROTAG_OK);
    char* sa = nullptr;
    char* sb = nullptr;
    REQUIRE(acrotag_dataset_serialize(pa, 0, &sa) == ACROTAG_OK);
    REQUIRE(acrotag_dataset_serialize(pb, 0, &sb) == ACROTAG_OK);
    CHECK(Take(sa) == Take(sb));
    CHECK(acrotag_dataset_size(pa) == 10);

    acrotag_dataset* pseudo = nullptr;
    CHECK(acrotag_pseudo_label(loaded, dev, 0.0, &pseudo) == ACROTAG_ERR_INVALID_ARGUMENT);
    REQUIRE(acrotag_pseudo_label(loaded, dev, 1.0, &pseudo) == ACROTAG_OK);
    CHECK(acrotag_dataset_size(pseudo) <= 10);
    acrotag_dataset_free(pseudo);

    CHECK(acrotag_bundle_load((dir / "missing.bin").string().c_str(), &loaded) != ACROTAG_OK);

    cfg.train.mask_rate = 3.0;
    acrotag_bundle* bad = nullptr;
    CHECK(acrotag_train(train, dev, nullptr, &cfg.vocab, &cfg.model, &cfg.train, &bad, nullptr,
                        nullptr) == ACROTAG_ERR_INVALID_ARGUMENT);
    CHECK(bad == nullptr);

    acrotag_dataset_free(pa);
    acrotag_dataset_free(pb);
    acrotag_bundle_free(loaded);
    acrotag_bundle_free(b1);
    acrotag_bundle_free(b2);
    acrotag_dataset_free(dev);
    acrotag_dataset_free(train);
  }

  TEST_CASE("pretrain then fine-tune") {
    acrotag_dataset* train = Parse(acrotag::testing::JsonCorpus(30));
    Small cfg;
    acrotag_pretrain_config pc;
    acrotag_pretrain_config_default(&pc);
    pc.epochs = 2;
    acrotag_bundle* pre = nullptr;
    acrotag_pretrain_report rep;
    REQUIRE(acrotag_pretrain(train, &cfg.vocab, &cfg.model, &pc, &pre, &rep) == ACROTAG_OK);
    CHECK(std::abs(rep.initial_loss - std::log(static_cast<double>(rep.vocab_size))) <
          0.1 * std::log(static_cast<double>(rep.vocab_size)));
    CHECK(rep.final_loss < rep.initial_loss);
    acrotag_bundle* tuned = nullptr;
    REQUIRE(acrotag_train(train, nullptr, pre, nullptr, nullptr, &cfg.train, &tuned, nullptr,
                          nullptr) == ACROTAG_OK);
    acrotag_tokenizer* t = nullptr;
    REQUIRE(acrotag_tokenizer_from_bundle(tuned, &t) == ACROTAG_OK);
    acrotag_tokenizer_free(t);
    acrotag_bundle_free(tuned);
    acrotag_bundle_free(pre);
    acrotag_dataset_free(train);
  }

  TEST_CASE("embeddings and augmentation") {
    acrotag::testing::TempDir dir("capi-emb");
    const std::string path = (dir / "emb.txt").string();
    {
      std::ofstream out(path);
      out << "3 2\nWe 1 0\nOur 0.9 0.1\nfor 0 1\n";
    }
    acrotag_embeddings* e = nullptr;
    REQUIRE(acrotag_embeddings_load(path.c_str(), &e) == ACROTAG_OK);
    acrotag_dataset* ds = Parse(acrotag::testing::JsonCorpus(8));
    acrotag_dataset* out = nullptr;
    REQUIRE(acrotag_augment(ds, e, 0.8, 1.0, 3, &out) == ACROTAG_OK);
    char* s = nullptr;
    REQUIRE(acrotag_dataset_serialize(out, 0, &s) == ACROTAG_OK);
    const std::string text = Take(s);
    CHECK(text.find("\"id\":\"doc-0-adv\"") != std::string::npos);
    CHECK(text.find("Our propose") != std::string::npos);
    CHECK(text.find("We propose") == std::string::npos);
    CHECK(acrotag_augment(ds, e, 0.8, 1.5, 3, &out) == ACROTAG_ERR_INVALID_ARGUMENT);
    acrotag_dataset_free(out);
    acrotag_dataset_free(ds);
    acrotag_embeddings_free(e);

    {
      std::ofstream bad(path);
      bad << "2 2\nx 1\n";
    }
    CHECK(acrotag_embeddings_load(path.c_str(), &e) == ACROTAG_ERR_PARSE);
  }
}
