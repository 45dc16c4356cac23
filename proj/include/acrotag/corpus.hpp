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

#ifndef ACROTAG_CORPUS_HPP_
#define ACROTAG_CORPUS_HPP_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace acrotag {

// Half-open character range [start, end) counted in Unicode scalar values.
struct Span {
  int64_t start = 0;
  int64_t end = 0;

  int64_t length() const { return end - start; }
  bool Overlaps(const Span& o) const { return start < o.end && o.start < end; }

  friend auto operator<=>(const Span&, const Span&) = default;
};

struct Document {
  std::string id;
  std::u32string text;
  std::vector<Span> acronyms;
  std::vector<Span> long_forms;

  friend bool operator==(const Document&, const Document&) = default;
};

struct Dataset {
  std::string name;
  std::vector<Document> documents;
};

// Predicted spans for one document, keyed by document id.
struct Prediction {
  std::string id;
  std::vector<Span> acronyms;
  std::vector<Span> long_forms;
};

namespace corpus {

// Record field names; the defaults match the files this tool writes. The
// official shared-task files use "ID" for the identifier.
struct FieldNames {
  std::string id = "id";
  std::string text = "text";
  std::string acronyms = "acronyms";
  std::string long_forms = "long-forms";
};

struct LoadOptions {
  bool strict = true;
  // Source files store inclusive end indices; shift ends by +1 on load.
  bool inclusive_ends = false;
  FieldNames fields;
};

struct LoadResult {
  Dataset dataset;
  // Lenient mode only: number of spans or records dropped.
  size_t warnings = 0;
  std::vector<std::string> messages;
};

LoadResult ParseDataset(std::string_view json, const LoadOptions& options,
                        std::string name = {});
LoadResult LoadDataset(const std::filesystem::path& path,
                       const LoadOptions& options = {});

struct StatsReport {
  size_t n_docs = 0;
  double avg_word_length = 0.0;
  double avg_acronyms = 0.0;
  double avg_long_forms = 0.0;
  size_t n_both = 0;
  size_t n_only_acr = 0;
  size_t n_only_lf = 0;
  size_t n_neither = 0;
};

StatsReport ComputeStats(const Dataset& dataset);

struct WriteOptions {
  bool inclusive_ends = false;
  FieldNames fields;
};

std::string SerializeDataset(const Dataset& dataset,
                             const WriteOptions& options = {});
void WriteDataset(const Dataset& dataset, const std::filesystem::path& path,
                  const WriteOptions& options = {});

// Copies of the documents with gold spans replaced by predictions. Every
// document needs exactly one prediction; unknown ids are rejected too.
Dataset ApplyPredictions(const Dataset& dataset,
                         const std::vector<Prediction>& predictions);
void WritePredictions(const Dataset& dataset,
                      const std::vector<Prediction>& predictions,
                      const std::filesystem::path& path,
                      const WriteOptions& options = {});

std::vector<Prediction> GoldAsPredictions(const Dataset& dataset);

Dataset Concatenate(const std::vector<Dataset>& parts, std::string name);

// Non-empty lines of a UTF-8 text file, one sentence per line.
std::vector<std::u32string> ReadLines(const std::filesystem::path& path);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace corpus
}  // namespace acrotag

#endif  // ACROTAG_CORPUS_HPP_
