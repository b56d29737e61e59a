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

#ifndef SWCOREF_CAR_H_
#define SWCOREF_CAR_H_

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "swcoref/corpus.h"
#include "swcoref/counters.h"

namespace swcoref {

using Vector = std::vector<double>;

// Key -> vector map with a fixed dimension. Mention vectors are keyed by
// normalized surface form, document vectors by "doc:" + doc_id.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(size_t dim, std::string model = "");

  size_t dim() const { return dim_; }
  const std::string &model() const { return model_; }
  size_t size() const { return entries_.size(); }
  const std::map<std::string, Vector> &entries() const { return entries_; }

  // Throws DataError on a dimension mismatch or non-finite component.
  void Insert(const std::string &key, Vector v);

  bool Contains(const std::string &key) const;
  const Vector &at(const std::string &key) const;

 private:
  size_t dim_;
  std::string model_;
  std::map<std::string, Vector> entries_;
};

std::string DocumentKey(const std::string &doc_id);

// Interchange JSONL: a header record {"kind":"header","dim":D,"model":..}
// followed by {"kind":"vector","key":..,"vector":[..]} records.
EmbeddingTable ReadEmbeddings(std::istream &in);
EmbeddingTable ReadEmbeddingsFile(const std::string &path);
void WriteEmbeddings(const EmbeddingTable &table, std::ostream &out);

struct CarConfig {
  double alpha = 0.6;  // weight on the mention vector
  double delta = 0.4;  // merge while average cosine distance < delta
  size_t max_context_sentences = 10;
};

// Up to `max` distinct mention-bearing sentence texts of the document, in
// corpus order, joined by single spaces. Throws DataError for an unknown
// document.
std::string BuildDocContext(const Corpus &corpus, const std::string &doc_id,
                            size_t max);

// Context strings for every document that has at least one mention.
std::map<std::string, std::string> BuildDocContexts(const Corpus &corpus,
                                                    size_t max);

// Keys resolve_car needs: each normalized form and "doc:" + doc_id of every
// document with mentions. Sorted.
std::vector<std::string> RequiredEmbeddingKeys(const Corpus &corpus);

// Zero vectors stay zero.
Vector UnitNormalize(std::span<const double> v);

// alpha * mention + (1 - alpha) * doc, not re-normalized.
Vector Combine(std::span<const double> mention, std::span<const double> doc,
               double alpha);

// 1 - cos(u, v), clamped to [0, 2]. A zero-norm input yields 1.
double CosineDistance(std::span<const double> u, std::span<const double> v);

// Dense symmetric distance matrix, row-major n x n.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(size_t n) : n_(n), d_(n * n, 0.0) {}

  size_t size() const { return n_; }
  double at(size_t i, size_t j) const { return d_[i * n_ + j]; }
  void set(size_t i, size_t j, double v) {
    d_[i * n_ + j] = v;
    d_[j * n_ + i] = v;
  }

 private:
  size_t n_;
  std::vector<double> d_;
};

DistanceMatrix CosineDistanceMatrix(std::span<const Vector> vectors,
                                    WorkCounters *counters = nullptr);

// Average-linkage (UPGMA) agglomerative clustering from singletons. At each
// step the cluster pair with the smallest linkage merges, ties going to the
// smallest (i, j) pair of cluster ids (a cluster's id is its smallest
// member). A merge is admissible while the linkage is < delta; a linkage of
// exactly 0 is always admissible. Returns the smallest member index as each
// point's label.
std::vector<size_t> AgglomerativeCluster(const DistanceMatrix &distances,
                                         double delta,
                                         WorkCounters *counters = nullptr);
std::vector<size_t> AgglomerativeCluster(std::span<const Vector> vectors,
                                         double delta,
                                         WorkCounters *counters = nullptr);

// Context-aware resolver: per mention, combine the unit-normalized form and
// document vectors and cluster all mention vectors. Throws DataError naming
// the first missing key.
Partition ResolveCar(const Corpus &corpus, const EmbeddingTable &table,
                     const CarConfig &config, WorkCounters *counters = nullptr);

// Deterministic signed character-trigram hashing embedder, unit-normalized.
// Requires dim >= 8.
Vector HashEmbed(const std::string &key, size_t dim);

inline constexpr size_t kHashEmbedDim = 384;

// Table covering RequiredEmbeddingKeys(corpus) from HashEmbed: forms embed
// their own text, documents embed their context string.
EmbeddingTable HashEmbeddingTable(const Corpus &corpus, size_t max_context,
                                  size_t dim = kHashEmbedDim);

}  // namespace swcoref

#endif  // SWCOREF_CAR_H_
