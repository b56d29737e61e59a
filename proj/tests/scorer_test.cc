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


#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "oracles.h"
#include "swcoref/assignment.h"
#include "swcoref/errors.h"
#include "swcoref/scorer.h"

namespace swcoref {
namespace {

using testing::MakePartition;

constexpr double kTol = 1e-6;

Partition Key() { return MakePartition({{"a", "K"}, {"b", "K"}, {"c", "K"}}); }
Partition Response() {
  return MakePartition({{"a", "X"}, {"b", "X"}, {"c", "Y"}});
}
Partition Singletons() {
  return MakePartition({{"a", "1"}, {"b", "2"}, {"c", "3"}});
}

Partition RandomPartition(std::mt19937_64 &gen, size_t n, size_t labels) {
  Partition p;
  for (size_t i = 0; i < n; ++i) {
    p.assignment["m" + std::to_string(i)] = "L" + std::to_string(gen() % labels);
  }
  return p;
}

TEST(MucTest, WorkedFixture) {
  PRF s = Muc(Key(), Response());
  EXPECT_NEAR(s.recall, 0.5, kTol);
  EXPECT_NEAR(s.precision, 1.0, kTol);
  EXPECT_NEAR(s.f1, 2.0 / 3.0, kTol);
}

TEST(MucTest, SingletonResponseScoresZero) {
  PRF s = Muc(Key(), Singletons());
  EXPECT_EQ(s.recall, 0.0);
  EXPECT_EQ(s.precision, 0.0);
  EXPECT_EQ(s.f1, 0.0);
}

TEST(BCubedTest, WorkedFixture) {
  PRF s = BCubed(Key(), Response());
  EXPECT_NEAR(s.recall, 5.0 / 9.0, kTol);
  EXPECT_NEAR(s.precision, 1.0, kTol);
  EXPECT_NEAR(s.f1, 10.0 / 14.0, kTol);
}

TEST(BCubedTest, SingletonResponse) {
  PRF s = BCubed(Key(), Singletons());
  EXPECT_NEAR(s.recall, 1.0 / 3.0, kTol);
  EXPECT_NEAR(s.precision, 1.0, kTol);
  EXPECT_NEAR(s.f1, 0.5, kTol);
}

TEST(CeafETest, WorkedFixture) {
  PRF s = CeafE(Key(), Response());
  EXPECT_NEAR(s.precision, 0.4, kTol);
  EXPECT_NEAR(s.recall, 0.8, kTol);
  EXPECT_NEAR(s.f1, 0.8 / 1.5, kTol);
}

TEST(CeafETest, SingletonResponse) {
  PRF s = CeafE(Key(), Singletons());
  EXPECT_NEAR(s.precision, 0.5 / 3.0, kTol);
  EXPECT_NEAR(s.recall, 0.5, kTol);
  EXPECT_NEAR(s.f1, 0.25, kTol);
}

TEST(ScoreAllTest, WorkedFixture) {
  ScoreReport r = ScoreAll(Key(), Response());
  EXPECT_NEAR(r.conll_f1, (2.0 / 3.0 + 10.0 / 14.0 + 0.8 / 1.5) / 3.0, kTol);
  EXPECT_NEAR(r.conll_f1, 0.6381, 1e-4);
  EXPECT_EQ(r.conll_f1, (r.muc.f1 + r.b3.f1 + r.ceafe.f1) / 3.0);
}

TEST(ScoreAllTest, IdenticalPartitionsScoreExactlyOne) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    Partition p = RandomPartition(gen, 30, 8);
    ScoreReport r = ScoreAll(p, p);
    for (const PRF &s : {r.muc, r.b3, r.ceafe}) {
      EXPECT_EQ(s.precision, 1.0);
      EXPECT_EQ(s.recall, 1.0);
      EXPECT_EQ(s.f1, 1.0);
    }
    EXPECT_EQ(r.conll_f1, 1.0);
  }
}

TEST(ScoreAllTest, EmptyMentionSetIsVacuouslyPerfect) {
  ScoreReport r = ScoreAll(Partition{}, Partition{});
  EXPECT_EQ(r.muc.f1, 1.0);
  EXPECT_EQ(r.b3.f1, 1.0);
  EXPECT_EQ(r.ceafe.f1, 1.0);
  EXPECT_EQ(r.conll_f1, 1.0);
}

TEST(ScoreAllTest, MismatchedMentionSetsAreErrors) {
  Partition other = MakePartition({{"a", "K"}, {"b", "K"}, {"d", "K"}});
  EXPECT_THROW(ScoreAll(Key(), other), DataError);
  EXPECT_THROW(Muc(Key(), MakePartition({{"a", "K"}})), DataError);
}

TEST(ScoreAllTest, SymmetryAndRenamingInvariance) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    Partition k = RandomPartition(gen, 25, 6);
    Partition r = RandomPartition(gen, 25, 9);
    ScoreReport kr = ScoreAll(k, r), rk = ScoreAll(r, k);
    EXPECT_NEAR(kr.muc.precision, rk.muc.recall, 1e-12);
    EXPECT_NEAR(kr.b3.precision, rk.b3.recall, 1e-12);
    EXPECT_NEAR(kr.ceafe.precision, rk.ceafe.recall, 1e-12);

    Partition renamed = r;
    for (auto &[id, label] : renamed.assignment) label = "z" + label + "!";
    ScoreReport again = ScoreAll(k, renamed);
    EXPECT_NEAR(again.conll_f1, kr.conll_f1, 1e-12);
    for (double x : {kr.muc.f1, kr.b3.f1, kr.ceafe.f1, kr.conll_f1}) {
      EXPECT_GE(x, 0.0);
      EXPECT_LE(x, 1.0);
    }
  }
}

TEST(OptimalAssignmentTest, Examples) {
  EXPECT_EQ(OptimalAssignment({{2, 1}, {1, 2}}).total, 4.0);
  EXPECT_EQ(OptimalAssignment({{1, 0}, {0, 1}}).total, 2.0);
  EXPECT_EQ(OptimalAssignment({}).total, 0.0);
  Assignment a = OptimalAssignment({{1, 5, 0}});
  ASSERT_EQ(a.pairs.size(), 1u);
  EXPECT_EQ(a.pairs[0], (std::pair<size_t, size_t>{0, 1}));
  EXPECT_THROW(OptimalAssignment({{1, 2}, {3}}), std::invalid_argument);
}

// Integer-valued entries keep every sum exact, so totals compare with ==.
TEST(OptimalAssignmentTest, MatchesPermutationSearch) {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<size_t> side(1, 7);
  std::uniform_int_distribution<int> value(-20, 40);
  for (int trial = 0; trial < 300; ++trial) {
    size_t rows = side(gen), cols = side(gen);
    std::vector<std::vector<double>> m(rows, std::vector<double>(cols));
    for (auto &row : m) {
      for (double &x : row) x = value(gen) / 4.0;
    }
    Assignment a = OptimalAssignment(m);
    EXPECT_EQ(a.total, oracle::BruteForceAssignment(m));
    EXPECT_EQ(a.pairs.size(), std::min(rows, cols));
    double sum = 0;
    for (auto [r, c] : a.pairs) sum += m[r][c];
    EXPECT_EQ(sum, a.total);
  }
}

TEST(ScoreReportJsonTest, FourDecimalsInSchemaOrder) {
  std::string json = ScoreReportJson(ScoreAll(Key(), Response()));
  EXPECT_EQ(json,
            R"({"muc":{"p":1.0,"r":0.5,"f1":0.6667},"b3":{"p":1.0,"r":0.5556,"f1":0.7143},)"
            R"("ceafe":{"p":0.4,"r":0.8,"f1":0.5333},"conll_f1":0.6381})");
  EXPECT_EQ(RoundDecimals(2.0 / 3.0, 4), 0.6667);
}

}  // namespace
}  // namespace swcoref
