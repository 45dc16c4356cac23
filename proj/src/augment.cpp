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

#include "acrotag/augment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "acrotag/error.hpp"
#include "acrotag/training.hpp"
#include "acrotag/unicode.hpp"

namespace acrotag::augment {

Dataset PseudoLabel(const model::Model& model, const tok::Tokenizer& tokenizer,
                    const std::vector<std::u32string>& sentences, double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "tau must lie in (0, 1]");
  }
  Dataset out;
  out.name = "pseudo";
  for (size_t i = 0; i < sentences.size(); ++i) {
    training::DocumentPrediction p =
        training::PredictText(model, tokenizer, sentences[i]);
    if (p.spans.acronyms.empty() && p.spans.long_forms.empty()) continue;
    double confidence = 1.0;
    for (size_t t = 0; t < p.labels.size(); ++t) {
      if (p.labels[t] == tagging::kOutside) continue;
      confidence = std::min(
          confidence, p.trace.probs(p.labels[t], static_cast<Eigen::Index>(t)));
    }
    if (confidence < tau) continue;
    out.documents.push_back({"pseudo-" + std::to_string(i), sentences[i],
                             std::move(p.spans.acronyms),
                             std::move(p.spans.long_forms)});
  }
  return out;
}

WordEmbeddings WordEmbeddings::FromVectors(
    std::vector<std::u32string> words,
    const std::vector<std::vector<double>>& vectors) {
  if (words.size() != vectors.size()) {
    Fail(ErrorCode::kInvalidArgument, "word and vector counts differ");
  }
  WordEmbeddings e;
  const Eigen::Index dim =
      vectors.empty() ? 0 : static_cast<Eigen::Index>(vectors.front().size());
  e.unit_.resize(dim, static_cast<Eigen::Index>(words.size()));
  for (size_t i = 0; i < words.size(); ++i) {
    if (static_cast<Eigen::Index>(vectors[i].size()) != dim) {
      Fail(ErrorCode::kParse, "embedding vectors differ in width");
    }
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(vectors[i].data(), dim);
    const double norm = v.norm();
    if (norm > 0) v /= norm;
    const auto col = static_cast<Eigen::Index>(i);
    e.unit_.col(col) = v;
    if (!e.index_.emplace(words[i], col).second) {
      Fail(ErrorCode::kParse, "duplicate embedding word " + unicode::Encode(words[i]));
    }
  }
  e.words_ = std::move(words);
  return e;
}

WordEmbeddings WordEmbeddings::Parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string header;
  if (!std::getline(in, header)) Fail(ErrorCode::kParse, "empty embedding file");
  std::istringstream hs(header);
  size_t count = 0, dim = 0;
  if (!(hs >> count >> dim) || dim == 0) {
    Fail(ErrorCode::kParse, "embedding header must be \"V D\"");
  }
  std::vector<std::u32string> words;
  std::vector<std::vector<double>> vectors;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string word;
    fields >> word;
    std::vector<double> v;
    double x = 0.0;
    while (fields >> x) v.push_back(x);
    if (!fields.eof() || v.size() != dim) {
      Fail(ErrorCode::kParse, "malformed embedding line for '" + word + "'");
    }
    words.push_back(unicode::Decode(word));
    vectors.push_back(std::move(v));
  }
  if (words.size() != count) {
    Fail(ErrorCode::kParse, "embedding header promises " + std::to_string(count) +
                                " words, file has " + std::to_string(words.size()));
  }
  return FromVectors(std::move(words), vectors);
}

WordEmbeddings WordEmbeddings::Load(const std::filesystem::path& path) {
  return Parse(corpus::ReadFile(path));
}

double WordEmbeddings::Cosine(const std::u32string& a, const std::u32string& b) const {
  auto ia = index_.find(a);
  auto ib = index_.find(b);
  if (ia == index_.end() || ib == index_.end()) {
    Fail(ErrorCode::kInvalidArgument, "word without embedding");
  }
  return unit_.col(ia->second).dot(unit_.col(ib->second));
}

std::optional<WordEmbeddings::Neighbor> WordEmbeddings::Nearest(
    const std::u32string& word, double min_similarity) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  const Eigen::VectorXd sims = unit_.transpose() * unit_.col(it->second);
  std::optional<Neighbor> best;
  for (Eigen::Index j = 0; j < sims.size(); ++j) {
    if (j == it->second || sims(j) < min_similarity) continue;
    const std::u32string& w = words_[static_cast<size_t>(j)];
    if (!best || sims(j) > best->cosine ||
        (sims(j) == best->cosine && w < best->word)) {
      best = Neighbor{w, sims(j)};
    }
  }
  return best;
}

AugmentedDocument AdversarialAugment(const Document& doc,
                                     const WordEmbeddings& embeddings,
                                     double min_similarity,
                                     double replace_fraction, Rng& rng) {
  if (replace_fraction < 0.0 || replace_fraction > 1.0) {
    Fail(ErrorCode::kInvalidArgument, "replace fraction must be in [0, 1]");
  }
  const std::u32string& text = doc.text;
  auto in_gold = [&](const Span& s) {
    for (const auto* list : {&doc.acronyms, &doc.long_forms}) {
      for (const Span& g : *list) {
        if (g.Overlaps(s)) return true;
      }
    }
    return false;
  };

  // Cores (punctuation-trimmed words) eligible for replacement.
  std::vector<Span> candidates;
  const auto n = static_cast<int64_t>(text.size());
  for (int64_t i = 0; i < n;) {
    if (unicode::IsSpace(text[i])) {
      ++i;
      continue;
    }
    int64_t j = i;
    while (j < n && !unicode::IsSpace(text[j])) ++j;
    const Span word{i, j};
    const auto t = unicode::TrimPunct(std::u32string_view(text).substr(i, j - i));
    const Span core{i + static_cast<int64_t>(t.begin), i + static_cast<int64_t>(t.end)};
    if (core.length() > 0 && !in_gold(word) &&
        embeddings.Contains(text.substr(core.start, core.length()))) {
      candidates.push_back(core);
    }
    i = j;
  }

  const auto k = static_cast<size_t>(
      std::floor(replace_fraction * static_cast<double>(candidates.size()) + 0.5));
  std::vector<size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), size_t{0});
  rng.Shuffle(order);
  order.resize(std::min(k, order.size()));
  std::sort(order.begin(), order.end());

  struct Edit {
    Span span;
    std::u32string replacement;
  };
  std::vector<Edit> edits;
  AugmentedDocument out;
  for (size_t idx : order) {
    const Span& core = candidates[idx];
    const std::u32string original = text.substr(core.start, core.length());
    auto neighbor = embeddings.Nearest(original, min_similarity);
    if (!neighbor) continue;
    edits.push_back({core, neighbor->word});
    out.replacements.push_back({original, neighbor->word, neighbor->cosine});
  }

  std::u32string new_text;
  std::vector<std::pair<int64_t, int64_t>> shifts;  // (old position, delta so far)
  int64_t pos = 0, delta = 0;
  for (const Edit& e : edits) {
    new_text.append(text, pos, e.span.start - pos);
    new_text += e.replacement;
    delta += static_cast<int64_t>(e.replacement.size()) - e.span.length();
    shifts.emplace_back(e.span.end, delta);
    pos = e.span.end;
  }
  new_text.append(text, pos);

  auto shift = [&](const Span& s) {
    int64_t d = 0;
    for (const auto& [at, cumulative] : shifts) {
      if (at <= s.start) d = cumulative;
    }
    return Span{s.start + d, s.end + d};
  };
  out.document.id = doc.id;
  out.document.text = std::move(new_text);
  for (const Span& s : doc.acronyms) out.document.acronyms.push_back(shift(s));
  for (const Span& s : doc.long_forms) out.document.long_forms.push_back(shift(s));
  return out;
}

Dataset AugmentDataset(const Dataset& dataset, const WordEmbeddings& embeddings,
                       double min_similarity, double replace_fraction,
                       uint64_t seed) {
  Rng rng(seed);
  Dataset out;
  out.name = dataset.name + "-adv";
  for (const Document& d : dataset.documents) {
    AugmentedDocument a =
        AdversarialAugment(d, embeddings, min_similarity, replace_fraction, rng);
    if (a.replacements.empty()) continue;
    a.document.id += "-adv";
    out.documents.push_back(std::move(a.document));
  }
  return out;
}

}  // namespace acrotag::augment
