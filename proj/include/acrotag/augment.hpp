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

#ifndef ACROTAG_AUGMENT_HPP_
#define ACROTAG_AUGMENT_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "acrotag/corpus.hpp"
#include "acrotag/model.hpp"
#include "acrotag/random.hpp"
#include "acrotag/tokenizer.hpp"

namespace acrotag::augment {

inline constexpr double kDefaultTau = 0.95;
inline constexpr double kDefaultMinSimilarity = 0.8;
inline constexpr double kDefaultReplaceFraction = 0.2;

// Runs the tagger over each sentence and keeps those with at least one
// predicted span whose least confident positive token still has
// probability >= tau. Accepted sentence i becomes document "pseudo-<i>".
Dataset PseudoLabel(const model::Model& model, const tok::Tokenizer& tokenizer,
                    const std::vector<std::u32string>& sentences, double tau);

class WordEmbeddings {
 public:
  // First line "V D", then V lines of "word d1 ... dD".
  static WordEmbeddings Load(const std::filesystem::path& path);
  static WordEmbeddings Parse(std::string_view text);
  static WordEmbeddings FromVectors(std::vector<std::u32string> words,
                                    const std::vector<std::vector<double>>& vectors);

  bool Contains(const std::u32string& word) const { return index_.count(word) > 0; }
  double Cosine(const std::u32string& a, const std::u32string& b) const;

  struct Neighbor {
    std::u32string word;
    double cosine = 0.0;
  };
  // Most similar other word with cosine >= min_similarity; ties go to the
  // lexicographically smallest word.
  std::optional<Neighbor> Nearest(const std::u32string& word,
                                  double min_similarity) const;

  size_t size() const { return words_.size(); }

 private:
  std::vector<std::u32string> words_;
  Eigen::MatrixXd unit_;  // D x V, unit-length columns (zero stays zero)
  std::unordered_map<std::u32string, Eigen::Index> index_;
};

struct Replacement {
  std::u32string original;
  std::u32string replacement;
  double cosine = 0.0;
};

struct AugmentedDocument {
  Document document;
  std::vector<Replacement> replacements;
};

// Swaps a `replace_fraction` sample of the words that lie outside every gold
// span and have embeddings for their nearest neighbours, then re-offsets the
// gold spans. Surrounding punctuation of a word is kept.
AugmentedDocument AdversarialAugment(const Document& doc,
                                     const WordEmbeddings& embeddings,
                                     double min_similarity,
                                     double replace_fraction, Rng& rng);

// Augmented copies (id suffixed "-adv") of the documents that changed.
Dataset AugmentDataset(const Dataset& dataset, const WordEmbeddings& embeddings,
                       double min_similarity, double replace_fraction,
                       uint64_t seed);

}  // namespace acrotag::augment

#endif  // ACROTAG_AUGMENT_HPP_
