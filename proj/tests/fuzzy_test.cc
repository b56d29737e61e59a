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


#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "oracles.h"
#include "swcoref/analysis.h"
#include "swcoref/fuzzy.h"
#include "swcoref/lexical.h"
#include "swcoref/unicode.h"

namespace swcoref {
namespace {

using testing::BuildCorpus;

std::vector<size_t> LabelsOf(const Corpus &c, const Partition &p) {
  std::map<std::string, size_t> ids;
  std::vector<size_t> labels;
  for (const Mention &m : c.mentions) {
    labels.push_back(
        ids.try_emplace(p.assignment.at(m.mention_id), ids.size()).first->second);
  }
  return labels;
}

// Links mention instances directly, then closes transitively by BFS.
std::vector<size_t> InstanceLevelOracle(const Corpus &c, double theta) {
  std::vector<std::u32string> forms;
  for (const Mention &m : c.mentions) forms.push_back(DecodeUtf8(NormalizeForm(m.text)));
  std::vector<std::pair<size_t, size_t>> edges;
  for (size_t i = 0; i < forms.size(); ++i) {
    for (size_t j = i + 1; j < forms.size(); ++j) {
      const auto &lo = std::min(forms[i], forms[j]);
      const auto &hi = std::max(forms[i], forms[j]);
      if (oracle::Similarity(lo, hi) >= theta) edges.emplace_back(i, j);
    }
  }
  return oracle::BfsComponents(forms.size(), edges);
}

TEST(UniqueFormsTest, Examples) {
  Corpus c = BuildCorpus({{"m1", "D", "MATLAB"}, {"m2", "D", "matlab"},
                          {"m3", "D", "SPSS"}});
  EXPECT_EQ(UniqueForms(c), (std::vector<std::string>{"matlab", "spss"}));
  EXPECT_TRUE(UniqueForms(Corpus{}).empty());
}

TEST(LinkPairsTest, Examples) {
  EXPECT_EQ(LinkPairs({"graphpad prism", "graphpad prism 8"}, 0.83),
            (std::vector<Edge>{{0, 1}}));
  EXPECT_TRUE(LinkPairs({"matlab", "spss"}, 0.83).empty());
  std::vector<std::string> forms = {"a", "bb", "ccc", "dddd"};
  EXPECT_EQ(LinkPairs(forms, 0.0).size(), 6u);
}

TEST(LinkPairsTest, CountsEveryPair) {
  WorkCounters counters;
  LinkPairs({"a", "b", "c", "d", "e"}, 0.5, &counters);
  EXPECT_EQ(counters.similarity_evaluations, 10u);
}

TEST(ConnectedComponentsTest, Examples) {
  EXPECT_EQ(ConnectedComponents(3, {}), (std::vector<size_t>{0, 1, 2}));
  EXPECT_EQ(ConnectedComponents(3, {{0, 1}, {1, 2}}),
            (std::vector<size_t>{0, 0, 0}));
  EXPECT_EQ(ConnectedComponents(4, {{2, 3}, {1, 3}}),
            (std::vector<size_t>{0, 1, 1, 1}));
  EXPECT_THROW(ConnectedComponents(2, {{0, 5}}), std::out_of_range);
}

TEST(ConnectedComponentsTest, MatchesBfsOracle) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    size_t n = std::uniform_int_distribution<size_t>(1, 200)(gen);
    size_t m = std::uniform_int_distribution<size_t>(0, n)(gen);
    std::uniform_int_distribution<size_t> node(0, n - 1);
    std::vector<Edge> edges;
    for (size_t k = 0; k < m; ++k) {
      size_t a = node(gen), b = node(gen);
      if (a == b) continue;
      edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    EXPECT_EQ(ConnectedComponents(n, edges), oracle::BfsComponents(n, edges));
  }
}

TEST(ResolveFuzzyTest, GraphPadTripleClosesTransitively) {
  Corpus c = BuildCorpus({{"m1", "D1", "GraphPad Prism"},
                          {"m2", "D2", "GraphPad Prism 8"},
                          {"m3", "D3", "GraphPad Prism 8.0.2"}});
  Partition p = ResolveFuzzy(c, FuzzyConfig{0.83});
  EXPECT_EQ(p.Clusters().size(), 1u);
  EXPECT_LT(RatcliffObershelp("graphpad prism", "graphpad prism 8.0.2"), 0.83);
}

TEST(ResolveFuzzyTest, ThresholdExtremes) {
  Corpus c = BuildCorpus({{"m1", "D", "abc"}, {"m2", "D", "xyz"},
                          {"m3", "D", "abd"}});
  EXPECT_EQ(ResolveFuzzy(c, FuzzyConfig{1.0}).Clusters().size(), 3u);
  EXPECT_EQ(ResolveFuzzy(c, FuzzyConfig{0.0}).Clusters().size(), 1u);
  EXPECT_THROW(ResolveFuzzy(c, FuzzyConfig{1.5}), std::invalid_argument);
  EXPECT_TRUE(ResolveFuzzy(Corpus{}, FuzzyConfig{}).assignment.empty());
}

TEST(ResolveFuzzyTest, MatchesInstanceLevelOracle) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 30; ++trial) {
    size_t n = std::uniform_int_distribution<size_t>(1, 200)(gen);
    Corpus c = oracle::RandomCorpus(gen, n);
    for (double theta : {0.5, 0.7, 0.83, 0.95}) {
      std::vector<size_t> got = LabelsOf(c, ResolveFuzzy(c, FuzzyConfig{theta}));
      EXPECT_TRUE(oracle::SamePartition(got, InstanceLevelOracle(c, theta)))
          << "trial " << trial << " theta " << theta;
    }
  }
}

TEST(ResolveFuzzyTest, IdenticalFormsAlwaysCoCluster) {
  Corpus c = BuildCorpus({{"m1", "D1", "Stata"}, {"m2", "D2", "STATA"},
                          {"m3", "D3", "R"}});
  for (double theta : {0.0, 0.5, 1.0}) {
    Partition p = ResolveFuzzy(c, FuzzyConfig{theta});
    EXPECT_EQ(p.assignment.at("m1"), p.assignment.at("m2"));
  }
}

TEST(ResolveFuzzyTest, MonotoneCoarsening) {
  std::mt19937_64 gen(9);
  std::vector<double> grid = ThetaGrid(0.05);
  for (int trial = 0; trial < 10; ++trial) {
    Corpus c = oracle::RandomCorpus(gen, 80);
    for (size_t k = 1; k < grid.size(); ++k) {
      Partition finer = ResolveFuzzy(c, FuzzyConfig{grid[k]});
      Partition coarser = ResolveFuzzy(c, FuzzyConfig{grid[k - 1]});
      EXPECT_TRUE(coarser.Coarsens(finer)) << grid[k];
    }
  }
}

TEST(ResolveFuzzyTest, IgnoresDocumentAssignment) {
  std::mt19937_64 gen(13);
  Corpus c = oracle::RandomCorpus(gen, 60);
  Corpus shuffled = c;
  for (auto &m : shuffled.mentions) m.doc_id = "X" + std::to_string(gen() % 3);
  for (size_t i = 0; i < c.mentions.size(); ++i) {
    shuffled.sentences[i].doc_id = shuffled.mentions[i].doc_id;
  }
  EXPECT_TRUE(ResolveFuzzy(c, FuzzyConfig{})
                  .SameSetPartition(ResolveFuzzy(shuffled, FuzzyConfig{})));
}

TEST(FormSimilaritiesTest, AgreesWithLinkPairs) {
  std::mt19937_64 gen(17);
  Corpus c = oracle::RandomCorpus(gen, 60);
  FormSimilarities sims(UniqueForms(c));
  for (double theta : {0.0, 0.4, 0.83, 1.0}) {
    EXPECT_EQ(sims.Edges(theta), LinkPairs(sims.forms(), theta));
  }
}

}  // namespace
}  // namespace swcoref
