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

#ifndef SWCOREF_FUZZY_H_
#define SWCOREF_FUZZY_H_

#include <string>
#include <utility>
#include <vector>

#include "swcoref/corpus.h"
#include "swcoref/counters.h"

namespace swcoref {

// Threshold on Ratcliff/Obershelp similarity above which two surface forms
// are linked. 0.83 was selected on gold mentions, 0.84 on predicted ones.
struct FuzzyConfig {
  double theta = 0.83;
};

using Edge = std::pair<size_t, size_t>;

// Sorted, deduplicated normalized surface forms of all mentions.
std::vector<std::string> UniqueForms(const Corpus &corpus);

// Edges (i, j), i < j, with similarity(forms[i], forms[j]) >= theta, scored
// with the lexicographically smaller form first. Sorted by (i, j).
std::vector<Edge> LinkPairs(const std::vector<std::string> &forms,
                            double theta, WorkCounters *counters = nullptr);

// Labels each vertex with the smallest index in its connected component.
std::vector<size_t> ConnectedComponents(size_t n,
                                        const std::vector<Edge> &edges);

// All pairwise similarities of the sorted form list, row-major upper
// triangle without the diagonal. Shared by the tuner so a grid of
// thresholds scores each pair once.
class FormSimilarities {
 public:
  explicit FormSimilarities(std::vector<std::string> forms,
                            WorkCounters *counters = nullptr);

  const std::vector<std::string> &forms() const { return forms_; }
  double at(size_t i, size_t j) const;  // requires i < j

  std::vector<Edge> Edges(double theta) const;

 private:
  size_t Offset(size_t i, size_t j) const;

  std::vector<std::string> forms_;
  std::vector<double> upper_;
};

// Broadcasts form-level component labels onto mention instances.
Partition PartitionFromFormComponents(const Corpus &corpus,
                                      const std::vector<std::string> &forms,
                                      const std::vector<size_t> &components);

// Fuzzy-matching resolver: link unique normalized forms at theta, take the
// transitive closure, expand back to mentions. Ignores document structure.
Partition ResolveFuzzy(const Corpus &corpus, const FuzzyConfig &config,
                       WorkCounters *counters = nullptr);

}  // namespace swcoref

#endif  // SWCOREF_FUZZY_H_
