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

#include "acrotag/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "acrotag/error.hpp"
#include "acrotag/unicode.hpp"
#include "json.hpp"

namespace acrotag::corpus {
namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string SpanText(const Span& s) {
  return "[" + std::to_string(s.start) + ", " + std::to_string(s.end) + "]";
}

std::vector<Span> ReadSpans(const json& record, const std::string& field,
                            const std::string& doc_id) {
  std::vector<Span> spans;
  auto it = record.find(field);
  if (it == record.end() || it->is_null()) return spans;
  if (!it->is_array()) {
    Fail(ErrorCode::kParse,
         "document " + doc_id + ": field '" + field + "' is not an array");
  }
  for (const json& pair : *it) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
        !pair[1].is_number_integer()) {
      Fail(ErrorCode::kParse, "document " + doc_id + ": field '" + field +
                                  "' holds a malformed span " + pair.dump());
    }
    spans.push_back({pair[0].get<int64_t>(), pair[1].get<int64_t>()});
  }
  return spans;
}

// Drops (lenient) or rejects (strict) invalid spans; sorts the survivors.
std::vector<Span> ValidateSpans(std::vector<Span> spans, int64_t text_length,
                                const std::string& doc_id,
                                const std::string& kind,
                                const LoadOptions& options,
                                LoadResult& result) {
  auto problem = [&](const Span& s, const std::string& why) {
    const std::string msg =
        "document " + doc_id + ": " + kind + " span " + SpanText(s) + " " + why;
    if (options.strict) Fail(ErrorCode::kValidation, msg);
    ++result.warnings;
    result.messages.push_back(msg);
  };

  std::vector<Span> valid;
  valid.reserve(spans.size());
  for (Span s : spans) {
    if (options.inclusive_ends) ++s.end;
    if (s.start < 0 || s.end <= s.start) {
      problem(s, "is empty or reversed");
    } else if (s.end > text_length) {
      problem(s, "is out of bounds (text length " +
                     std::to_string(text_length) + ")");
    } else {
      valid.push_back(s);
    }
  }
  std::stable_sort(valid.begin(), valid.end());

  std::vector<Span> kept;
  kept.reserve(valid.size());
  for (const Span& s : valid) {
    if (!kept.empty() && kept.back().Overlaps(s)) {
      problem(s, "overlaps " + SpanText(kept.back()));
      continue;
    }
    kept.push_back(s);
  }
  return kept;
}

std::string IdOf(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<int64_t>());
  Fail(ErrorCode::kParse, "record id must be a string or integer, got " +
                              value.dump());
}

ordered_json SpansToJson(const std::vector<Span>& spans, bool inclusive) {
  ordered_json arr = ordered_json::array();
  for (const Span& s : spans) {
    arr.push_back({s.start, inclusive ? s.end - 1 : s.end});
  }
  return arr;
}

size_t CountWords(std::u32string_view text) {
  size_t words = 0;
  bool in_word = false;
  for (char32_t c : text) {
    const bool space = unicode::IsSpace(c);
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return words;
}

}  // namespace

LoadResult ParseDataset(std::string_view text, const LoadOptions& options,
                        std::string name) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kParse, std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_array()) {
    Fail(ErrorCode::kParse, "dataset file must hold a top-level array");
  }

  LoadResult result;
  result.dataset.name = std::move(name);
  std::unordered_set<std::string> seen;
  const FieldNames& f = options.fields;
  for (const json& record : root) {
    if (!record.is_object()) {
      Fail(ErrorCode::kParse, "dataset records must be JSON objects");
    }
    auto id_it = record.find(f.id);
    auto text_it = record.find(f.text);
    if (id_it == record.end() || text_it == record.end() ||
        !text_it->is_string()) {
      Fail(ErrorCode::kParse, "record lacks '" + f.id + "' or string '" +
                                  f.text + "': " + record.dump().substr(0, 80));
    }
    Document doc;
    doc.id = IdOf(*id_it);
    if (!seen.insert(doc.id).second) {
      const std::string msg = "duplicate document id " + doc.id;
      if (options.strict) Fail(ErrorCode::kValidation, msg);
      ++result.warnings;
      result.messages.push_back(msg + " (record dropped)");
      continue;
    }
    doc.text = unicode::Decode(text_it->get<std::string>());
    const auto length = static_cast<int64_t>(doc.text.size());
    doc.acronyms = ValidateSpans(ReadSpans(record, f.acronyms, doc.id), length,
                                 doc.id, "acronym", options, result);
    doc.long_forms = ValidateSpans(ReadSpans(record, f.long_forms, doc.id),
                                   length, doc.id, "long-form", options, result);
    result.dataset.documents.push_back(std::move(doc));
  }
  return result;
}

LoadResult LoadDataset(const std::filesystem::path& path,
                       const LoadOptions& options) {
  return ParseDataset(ReadFile(path), options, path.stem().string());
}

StatsReport ComputeStats(const Dataset& dataset) {
  StatsReport r;
  r.n_docs = dataset.documents.size();
  if (r.n_docs == 0) return r;
  size_t words = 0, acronyms = 0, long_forms = 0;
  for (const Document& d : dataset.documents) {
    words += CountWords(d.text);
    acronyms += d.acronyms.size();
    long_forms += d.long_forms.size();
    const bool a = !d.acronyms.empty();
    const bool l = !d.long_forms.empty();
    if (a && l) {
      ++r.n_both;
    } else if (a) {
      ++r.n_only_acr;
    } else if (l) {
      ++r.n_only_lf;
    } else {
      ++r.n_neither;
    }
  }
  const auto n = static_cast<double>(r.n_docs);
  r.avg_word_length = static_cast<double>(words) / n;
  r.avg_acronyms = static_cast<double>(acronyms) / n;
  r.avg_long_forms = static_cast<double>(long_forms) / n;
  return r;
}

std::string SerializeDataset(const Dataset& dataset,
                             const WriteOptions& options) {
  if (dataset.documents.empty()) return "[]\n";
  const FieldNames& f = options.fields;
  std::string out = "[\n";
  for (size_t i = 0; i < dataset.documents.size(); ++i) {
    const Document& d = dataset.documents[i];
    ordered_json record;
    record[f.id] = d.id;
    record[f.text] = unicode::Encode(d.text);
    record[f.acronyms] = SpansToJson(d.acronyms, options.inclusive_ends);
    record[f.long_forms] = SpansToJson(d.long_forms, options.inclusive_ends);
    out += record.dump();
    out += i + 1 < dataset.documents.size() ? ",\n" : "\n";
  }
  out += "]\n";
  return out;
}

void WriteDataset(const Dataset& dataset, const std::filesystem::path& path,
                  const WriteOptions& options) {
  WriteFile(path, SerializeDataset(dataset, options));
}

Dataset ApplyPredictions(const Dataset& dataset,
                         const std::vector<Prediction>& predictions) {
  std::unordered_map<std::string, const Prediction*> by_id;
  for (const Prediction& p : predictions) {
    if (!by_id.emplace(p.id, &p).second) {
      Fail(ErrorCode::kInvalidArgument, "duplicate prediction for id " + p.id);
    }
  }
  Dataset out;
  out.name = dataset.name;
  out.documents.reserve(dataset.documents.size());
  for (const Document& d : dataset.documents) {
    auto it = by_id.find(d.id);
    if (it == by_id.end()) {
      Fail(ErrorCode::kInvalidArgument, "no prediction for document id " + d.id);
    }
    Document copy{d.id, d.text, it->second->acronyms, it->second->long_forms};
    std::sort(copy.acronyms.begin(), copy.acronyms.end());
    std::sort(copy.long_forms.begin(), copy.long_forms.end());
    out.documents.push_back(std::move(copy));
    by_id.erase(it);
  }
  if (!by_id.empty()) {
    std::vector<std::string> extra;
    for (const auto& [id, p] : by_id) extra.push_back(id);
    std::sort(extra.begin(), extra.end());
    Fail(ErrorCode::kInvalidArgument,
         "prediction for unknown document id " + extra.front());
  }
  return out;
}

void WritePredictions(const Dataset& dataset,
                      const std::vector<Prediction>& predictions,
                      const std::filesystem::path& path,
                      const WriteOptions& options) {
  WriteDataset(ApplyPredictions(dataset, predictions), path, options);
}

std::vector<Prediction> GoldAsPredictions(const Dataset& dataset) {
  std::vector<Prediction> out;
  out.reserve(dataset.documents.size());
  for (const Document& d : dataset.documents) {
    out.push_back({d.id, d.acronyms, d.long_forms});
  }
  return out;
}

Dataset Concatenate(const std::vector<Dataset>& parts, std::string name) {
  Dataset out;
  out.name = std::move(name);
  std::unordered_set<std::string> seen;
  for (const Dataset& part : parts) {
    for (const Document& d : part.documents) {
      if (!seen.insert(d.id).second) {
        Fail(ErrorCode::kValidation,
             "duplicate document id " + d.id + " across concatenated datasets");
      }
      out.documents.push_back(d);
    }
  }
  return out;
}

std::vector<std::u32string> ReadLines(const std::filesystem::path& path) {
  std::istringstream in(ReadFile(path));
  std::vector<std::u32string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(unicode::Decode(line));
  }
  return lines;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) Fail(ErrorCode::kIo, "write failed for " + path.string());
}

}  // namespace acrotag::corpus
