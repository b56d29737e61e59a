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

#include "swcoref/fuzzy.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "swcoref/lexical.h"
#include "swcoref/unicode.h"

namespace swcoref {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), size_t{0});
  }

  size_t Find(size_t x) {
    size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      size_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  // Keeps the smaller root so every root is its component's minimum.
  void Union(size_t a, size_t b) {
    a = Find(a);
    b = Find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<size_t> parent_;
};

std::vector<std::u32string> DecodeAll(const std::vector<std::string> &forms) {
  std::vector<std::u32string> decoded;
  decoded.reserve(forms.size());
  for (const std::string &f : forms) decoded.push_back(DecodeUtf8(f));
  return decoded;
}

}  // namespace

std::vector<std::string> UniqueForms(const Corpus &corpus) {
  std::vector<std::string> forms;
  forms.reserve(corpus.mentions.size());
  for (const Mention &m : corpus.mentions) forms.push_back(NormalizeForm(m.text));
  std::sort(forms.begin(), forms.end());
  forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
  return forms;
}

std::vector<Edge> LinkPairs(const std::vector<std::string> &forms,
                            double theta, WorkCounters *counters) {
  const std::vector<std::u32string> decoded = DecodeAll(forms);
  std::vector<Edge> edges;
  for (size_t i = 0; i < decoded.size(); ++i) {
    for (size_t j = i + 1; j < decoded.size(); ++j) {
      if (SymmetricSimilarity(decoded[i], decoded[j]) >= theta) {
        edges.emplace_back(i, j);
      }
    }
  }
  if (counters != nullptr) {
    counters->similarity_evaluations +=
        decoded.size() * (decoded.size() - (decoded.empty() ? 0 : 1)) / 2;
  }
  return edges;
}

std::vector<size_t> ConnectedComponents(size_t n,
                                        const std::vector<Edge> &edges) {
  DisjointSets sets(n);
  for (const auto &[a, b] : edges) {
    if (a >= n || b >= n) {
      throw std::out_of_range("ConnectedComponents: edge index out of range");
    }
    sets.Union(a, b);
  }
  std::vector<size_t> labels(n);
  for (size_t i = 0; i < n; ++i) labels[i] = sets.Find(i);
  return labels;
}

FormSimilarities::FormSimilarities(std::vector<std::string> forms,
                                   WorkCounters *counters)
    : forms_(std::move(forms)) {
  const std::vector<std::u32string> decoded = DecodeAll(forms_);
  const size_t n = decoded.size();
  upper_.reserve(n < 2 ? 0 : n * (n - 1) / 2);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      upper_.push_back(SymmetricSimilarity(decoded[i], decoded[j]));
    }
  }
  if (counters != nullptr) counters->similarity_evaluations += upper_.size();
}

size_t FormSimilarities::Offset(size_t i, size_t j) const {
  const size_t n = forms_.size();
  // Rows 0..i-1 hold (n-1) + (n-2) + ... + (n-i) entries.
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

double FormSimilarities::at(size_t i, size_t j) const {
  return upper_[Offset(i, j)];
}

std::vector<Edge> FormSimilarities::Edges(double theta) const {
  std::vector<Edge> edges;
  const size_t n = forms_.size();
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j, ++k) {
      if (upper_[k] >= theta) edges.emplace_back(i, j);
    }
  }
  return edges;
}

Partition PartitionFromFormComponents(const Corpus &corpus,
                                      const std::vector<std::string> &forms,
                                      const std::vector<size_t> &components) {
  std::unordered_map<std::string, size_t> form_index;
  for (size_t i = 0; i < forms.size(); ++i) form_index.emplace(forms[i], i);
  std::vector<size_t> labels;
  labels.reserve(corpus.mentions.size());
  for (const Mention &m : corpus.mentions) {
    auto it = form_index.find(NormalizeForm(m.text));
    if (it == form_index.end()) {
      throw std::invalid_argument("form inventory does not cover mention " +
                                  m.mention_id);
    }
    labels.push_back(components[it->second]);
  }
  return PartitionFromLabels(corpus.mentions, labels);
}

Partition ResolveFuzzy(const Corpus &corpus, const FuzzyConfig &config,
                       WorkCounters *counters) {
  if (!(config.theta >= 0.0 && config.theta <= 1.0)) {
    throw std::invalid_argument("theta must lie in [0, 1]");
  }
  std::vector<std::string> forms = UniqueForms(corpus);
  std::vector<Edge> edges = LinkPairs(forms, config.theta, counters);
  std::vector<size_t> components = ConnectedComponents(forms.size(), edges);
  return PartitionFromFormComponents(corpus, forms, components);
}

}  // namespace swcoref
