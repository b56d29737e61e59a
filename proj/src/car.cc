// Copyright 2026 The swcoref Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swcoref/car.h"

#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "swcoref/errors.h"
#include "swcoref/kernels.h"
#include "swcoref/lexical.h"
#include "swcoref/unicode.h"

namespace swcoref {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

EmbeddingTable::EmbeddingTable(size_t dim, std::string model)
    : dim_(dim), model_(std::move(model)) {
  if (dim == 0) throw DataError("embedding dimension must be positive");
}

void EmbeddingTable::Insert(const std::string &key, Vector v) {
  if (v.size() != dim_) {
    throw DataError("embedding \"" + key + "\" has dimension " +
                    std::to_string(v.size()) + ", expected " +
                    std::to_string(dim_));
  }
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw DataError("embedding \"" + key + "\" has a non-finite component");
    }
  }
  entries_[key] = std::move(v);
}

bool EmbeddingTable::Contains(const std::string &key) const {
  return entries_.count(key) != 0;
}

const Vector &EmbeddingTable::at(const std::string &key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw DataError("missing embedding: " + key);
  return it->second;
}

std::string DocumentKey(const std::string &doc_id) { return "doc:" + doc_id; }

EmbeddingTable ReadEmbeddings(std::istream &in) {
  std::string line;
  size_t line_no = 0;
  std::optional<EmbeddingTable> table;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "embeddings line " + std::to_string(line_no);
    json record;
    try {
      record = json::parse(line);
      const std::string kind = record.at("kind").get<std::string>();
      if (!table) {
        if (kind != "header") throw DataError(where + ": expected header");
        auto dim = record.at("dim").get<int64_t>();
        if (dim <= 0) throw DataError(where + ": dim must be positive");
        table.emplace(static_cast<size_t>(dim), record.value("model", ""));
        continue;
      }
      if (kind != "vector") {
        throw DataError(where + ": unexpected record kind \"" + kind + "\"");
      }
      const std::string key = record.at("key").get<std::string>();
      if (table->Contains(key)) {
        throw DataError(where + ": duplicate key \"" + key + "\"");
      }
      table->Insert(key, record.at("vector").get<Vector>());
    } catch (const json::exception &e) {
      throw DataError(where + ": " + e.what());
    } catch (const DataError &e) {
      if (std::string(e.what()).rfind("embeddings line", 0) == 0) throw;
      throw DataError(where + ": " + e.what());
    }
  }
  if (!table) throw DataError("embeddings: missing header record");
  return std::move(*table);
}

EmbeddingTable ReadEmbeddingsFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return ReadEmbeddings(in);
}

void WriteEmbeddings(const EmbeddingTable &table, std::ostream &out) {
  ordered_json header;
  header["kind"] = "header";
  header["dim"] = table.dim();
  header["model"] = table.model();
  out << header.dump() << '\n';
  for (const auto &[key, v] : table.entries()) {
    ordered_json record;
    record["kind"] = "vector";
    record["key"] = key;
    record["vector"] = v;
    out << record.dump() << '\n';
  }
}

std::map<std::string, std::string> BuildDocContexts(const Corpus &corpus,
                                                    size_t max) {
  std::unordered_set<std::string> bearing;  // doc_id NUL sent_id
  for (const Mention &m : corpus.mentions) {
    bearing.insert(m.doc_id + '\0' + m.sent_id);
  }
  std::map<std::string, std::vector<const std::string *>> chosen;
  for (const SentenceRecord &s : corpus.sentences) {
    if (!bearing.count(s.doc_id + '\0' + s.sent_id)) continue;
    auto &texts = chosen[s.doc_id];
    if (texts.size() >= max) continue;
    bool seen = false;
    for (const std::string *t : texts) seen = seen || *t == s.text;
    if (!seen) texts.push_back(&s.text);
  }
  std::map<std::string, std::string> contexts;
  for (const Mention &m : corpus.mentions) contexts[m.doc_id];
  for (const auto &[doc, texts] : chosen) {
    std::string joined;
    for (const std::string *t : texts) {
      if (!joined.empty()) joined.push_back(' ');
      joined += *t;
    }
    contexts[doc] = std::move(joined);
  }
  return contexts;
}

std::string BuildDocContext(const Corpus &corpus, const std::string &doc_id,
                            size_t max) {
  bool known = false;
  for (const SentenceRecord &s : corpus.sentences) known = known || s.doc_id == doc_id;
  for (const Mention &m : corpus.mentions) known = known || m.doc_id == doc_id;
  if (!known) throw DataError("unknown document: " + doc_id);
  auto contexts = BuildDocContexts(corpus, max);
  auto it = contexts.find(doc_id);
  return it == contexts.end() ? std::string() : it->second;
}

std::vector<std::string> RequiredEmbeddingKeys(const Corpus &corpus) {
  std::set<std::string> keys;
  for (const Mention &m : corpus.mentions) {
    keys.insert(NormalizeForm(m.text));
    keys.insert(DocumentKey(m.doc_id));
  }
  return {keys.begin(), keys.end()};
}

Vector UnitNormalize(std::span<const double> v) {
  const double norm = std::sqrt(kernels::Dot(v, v));
  Vector out(v.begin(), v.end());
  if (norm > 0.0) kernels::Divide(out, v, norm);
  return out;
}

Vector Combine(std::span<const double> mention, std::span<const double> doc,
               double alpha) {
  if (mention.size() != doc.size()) {
    throw std::invalid_argument("Combine: dimension mismatch (" +
                                std::to_string(mention.size()) + " vs " +
                                std::to_string(doc.size()) + ")");
  }
  Vector out(mention.size());
  kernels::WeightedSum(out, alpha, mention, 1.0 - alpha, doc);
  return out;
}

namespace {

std::atomic<bool> zero_norm_reported{false};

void ReportZeroNorm() {
  if (!zero_norm_reported.exchange(true)) {
    std::cerr << "warning: zero-norm vector in cosine distance; "
                 "using distance 1\n";
  }
}

double DistanceFromParts(double dot, double norm_sq_u, double norm_sq_v) {
  if (norm_sq_u == 0.0 || norm_sq_v == 0.0) {
    ReportZeroNorm();
    return 1.0;
  }
  const double d = 1.0 - dot / std::sqrt(norm_sq_u * norm_sq_v);
  return std::clamp(d, 0.0, 2.0);
}

}  // namespace

double CosineDistance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("CosineDistance: dimension mismatch");
  }
  return DistanceFromParts(kernels::Dot(u, v), kernels::Dot(u, u),
                           kernels::Dot(v, v));
}

DistanceMatrix CosineDistanceMatrix(std::span<const Vector> vectors,
                                    WorkCounters *counters) {
  const size_t n = vectors.size();
  DistanceMatrix distances(n);
  if (n == 0) return distances;
  const size_t dim = vectors[0].size();
  std::vector<double> norm_sq(n);
  for (size_t i = 0; i < n; ++i) {
    if (vectors[i].size() != dim) {
      throw std::invalid_argument("CosineDistanceMatrix: dimension mismatch");
    }
    norm_sq[i] = kernels::Dot(vectors[i], vectors[i]);
  }
  const kernels::KernelTable &k = kernels::Active();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const double dot = k.dot(vectors[i].data(), vectors[j].data(), dim);
      distances.set(i, j, DistanceFromParts(dot, norm_sq[i], norm_sq[j]));
    }
  }
  if (counters != nullptr) counters->distance_evaluations += n * (n - 1) / 2;
  return distances;
}

namespace {

bool Admissible(double linkage, double delta) {
  return linkage < delta || linkage == 0.0;
}

}  // namespace

std::vector<size_t> AgglomerativeCluster(const DistanceMatrix &distances,
                                         double delta,
                                         WorkCounters *counters) {
  const size_t n = distances.size();
  DistanceMatrix linkage = distances;
  std::vector<size_t> size(n, 1);
  std::vector<bool> active(n, true);
  std::vector<size_t> label(n);
  for (size_t i = 0; i < n; ++i) label[i] = i;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr size_t kNone = std::numeric_limits<size_t>::max();
  // Nearest active cluster with a larger id, ties to the smaller id.
  std::vector<size_t> nearest(n, kNone);
  std::vector<double> nearest_dist(n, kInf);
  auto refresh = [&](size_t i) {
    nearest[i] = kNone;
    nearest_dist[i] = kInf;
    for (size_t j = i + 1; j < n; ++j) {
      if (active[j] && linkage.at(i, j) < nearest_dist[i]) {
        nearest[i] = j;
        nearest_dist[i] = linkage.at(i, j);
      }
    }
  };
  for (size_t i = 0; i < n; ++i) refresh(i);

  for (size_t remaining = n; remaining > 1; --remaining) {
    size_t a = kNone;
    for (size_t i = 0; i < n; ++i) {
      if (active[i] && nearest[i] != kNone &&
          (a == kNone || nearest_dist[i] < nearest_dist[a])) {
        a = i;
      }
    }
    if (a == kNone || !Admissible(nearest_dist[a], delta)) break;
    const size_t b = nearest[a];

    // Merge b into a; a stays the smaller id.
    const double wa = static_cast<double>(size[a]);
    const double wb = static_cast<double>(size[b]);
    for (size_t k = 0; k < n; ++k) {
      if (!active[k] || k == a || k == b) continue;
      linkage.set(a, k,
                  (wa * linkage.at(a, k) + wb * linkage.at(b, k)) / (wa + wb));
    }
    active[b] = false;
    size[a] += size[b];
    for (size_t k = 0; k < n; ++k) {
      if (label[k] == b) label[k] = a;
    }
    if (counters != nullptr) ++counters->cluster_merges;

    refresh(a);
    for (size_t k = 0; k < a; ++k) {
      if (!active[k]) continue;
      if (nearest[k] == a || nearest[k] == b) {
        refresh(k);
      } else if (linkage.at(k, a) < nearest_dist[k] ||
                 (linkage.at(k, a) == nearest_dist[k] && a < nearest[k])) {
        nearest[k] = a;
        nearest_dist[k] = linkage.at(k, a);
      }
    }
    for (size_t k = a + 1; k < b; ++k) {
      if (active[k] && nearest[k] == b) refresh(k);
    }
  }
  return label;
}

std::vector<size_t> AgglomerativeCluster(std::span<const Vector> vectors,
                                         double delta,
                                         WorkCounters *counters) {
  return AgglomerativeCluster(CosineDistanceMatrix(vectors, counters), delta,
                              counters);
}

Partition ResolveCar(const Corpus &corpus, const EmbeddingTable &table,
                     const CarConfig &config, WorkCounters *counters) {
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  if (!(config.delta >= 0.0)) {
    throw std::invalid_argument("delta must be non-negative");
  }
  std::unordered_map<std::string, Vector> normalized;
  auto lookup = [&](const std::string &key) -> const Vector & {
    auto it = normalized.find(key);
    if (it != normalized.end()) return it->second;
    if (!table.Contains(key)) throw DataError("missing embedding: " + key);
    return normalized.emplace(key, UnitNormalize(table.at(key))).first->second;
  };

  std::vector<Vector> vectors;
  vectors.reserve(corpus.mentions.size());
  for (const Mention &m : corpus.mentions) {
    const Vector &mention = lookup(NormalizeForm(m.text));
    const Vector &doc = lookup(DocumentKey(m.doc_id));
    vectors.push_back(Combine(mention, doc, config.alpha));
    if (counters != nullptr) ++counters->vector_combinations;
  }
  std::vector<size_t> labels =
      AgglomerativeCluster(vectors, config.delta, counters);
  return PartitionFromLabels(corpus.mentions, labels);
}

Vector HashEmbed(const std::string &key, size_t dim) {
  if (dim < 8) throw std::invalid_argument("HashEmbed: dim must be >= 8");
  std::u32string padded = U"\x02" + DecodeUtf8(key) + U"\x03";
  Vector v(dim, 0.0);
  for (size_t i = 0; i + 3 <= padded.size(); ++i) {
    // FNV-1a over the trigram's UTF-8 bytes.
    uint64_t h = 14695981039346656037ull;
    for (unsigned char byte : EncodeUtf8(std::u32string_view(padded).substr(i, 3))) {
      h ^= byte;
      h *= 1099511628211ull;
    }
    const double sign = ((h >> 32) & 1) ? -1.0 : 1.0;
    v[h % dim] += sign;
  }
  return UnitNormalize(v);
}

EmbeddingTable HashEmbeddingTable(const Corpus &corpus, size_t max_context,
                                  size_t dim) {
  EmbeddingTable table(dim, "hash-trigram");
  for (const Mention &m : corpus.mentions) {
    std::string form = NormalizeForm(m.text);
    if (!table.Contains(form)) table.Insert(form, HashEmbed(form, dim));
  }
  for (const auto &[doc, context] : BuildDocContexts(corpus, max_context)) {
    table.Insert(DocumentKey(doc), HashEmbed(context, dim));
  }
  return table;
}

}  // namespace swcoref
