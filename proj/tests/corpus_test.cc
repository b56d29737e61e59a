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


#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fixtures.h"
#include "swcoref/corpus.h"
#include "swcoref/errors.h"

namespace swcoref {
namespace {

using testing::BuildCorpus;
using testing::MakePartition;

Corpus TwoDocFixture() {
  Corpus c;
  c.sentences = {{"D1", "S1", "We used MATLAB for analysis."},
                 {"D2", "S1", "Plots were made in GraphPad Prism 8."}};
  c.mentions = {{"M1", "D1", "S1", "MATLAB", 8, 14, "C1"},
                {"M2", "D2", "S1", "GraphPad Prism 8", 19, 35, "C2"}};
  return c;
}

TEST(ValidateCorpusTest, WellFormedFixtureIsValid) {
  EXPECT_TRUE(ValidateCorpus(TwoDocFixture()).empty());
}

TEST(ValidateCorpusTest, EndBeyondSentenceNamesMention) {
  Corpus c = TwoDocFixture();
  c.mentions[0].end_char = 400;
  ValidationReport report = ValidateCorpus(c);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].subject, "M1");
}

TEST(ValidateCorpusTest, TextMismatchIsSpanMismatch) {
  Corpus c = TwoDocFixture();
  c.mentions[0].text = "Matlab";
  ValidationReport report = ValidateCorpus(c);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].subject, "M1");
  EXPECT_NE(report[0].reason.find("span mismatch"), std::string::npos);
}

TEST(ValidateCorpusTest, OffsetsCountCodePointsNotBytes) {
  Corpus c;
  c.sentences = {{"D1", "S1", "Café uses R."}};
  c.mentions = {{"M1", "D1", "S1", "R", 10, 11, "C1"}};
  EXPECT_TRUE(ValidateCorpus(c).empty());
  c.mentions[0].start_char = 11;
  c.mentions[0].end_char = 12;
  EXPECT_EQ(ValidateCorpus(c).size(), 1u);
}

TEST(ValidateCorpusTest, ReportsStructuralProblems) {
  Corpus c = TwoDocFixture();
  c.mentions.push_back(c.mentions[0]);                        // duplicate id
  c.mentions.push_back({"M3", "D9", "S1", "x", 0, 1, "C1"});  // no sentence
  c.mentions.push_back({"M4", "D1", "S1", "We", 0, 2, std::nullopt});
  EXPECT_EQ(ValidateCorpus(c).size(), 3u);
}

TEST(ValidateCorpusTest, IsIdempotent) {
  Corpus c = TwoDocFixture();
  c.mentions[1].start_char = 20;
  const Corpus before = c;
  ValidationReport first = ValidateCorpus(c);
  ValidationReport second = ValidateCorpus(c);
  EXPECT_EQ(c, before);
  ASSERT_EQ(first.size(), second.size());
  for (size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].subject, second[i].subject);
    EXPECT_EQ(first[i].reason, second[i].reason);
  }
}

TEST(ValidateCorpusTest, EmptyCorpusIsValid) {
  EXPECT_TRUE(ValidateCorpus(Corpus{}).empty());
}

TEST(GoldPartitionTest, RelabelsDirectly) {
  Corpus c = BuildCorpus({{"m1", "D1", "a", "A"},
                          {"m2", "D1", "b", "A"},
                          {"m3", "D1", "c", "B"}});
  Partition p = GoldPartition(c);
  auto clusters = p.Clusters();
  ASSERT_EQ(clusters.size(), 2u);
  EXPECT_EQ(clusters["A"], (std::vector<std::string>{"m1", "m2"}));
  EXPECT_EQ(clusters["B"], (std::vector<std::string>{"m3"}));
}

TEST(GoldPartitionTest, SharedLabelIsOneCluster) {
  Corpus c = BuildCorpus({{"m1", "D1", "a", "Z"},
                          {"m2", "D2", "b", "Z"},
                          {"m3", "D3", "c", "Z"}});
  EXPECT_EQ(GoldPartition(c).Clusters().size(), 1u);
}

TEST(GoldPartitionTest, MissingGoldThrows) {
  Corpus c = BuildCorpus({{"m1", "D1", "a", std::nullopt}});
  EXPECT_THROW(GoldPartition(c), DataError);
}

TEST(GoldPartitionTest, RelabelingBijectionKeepsSetPartition) {
  Corpus c = BuildCorpus({{"m1", "D1", "a", "A"},
                          {"m2", "D1", "b", "B"},
                          {"m3", "D2", "c", "A"},
                          {"m4", "D2", "d", "C"}});
  Corpus renamed = c;
  for (auto &m : renamed.mentions) m.gold_cluster = "x" + *m.gold_cluster + "y";
  EXPECT_TRUE(GoldPartition(c).SameSetPartition(GoldPartition(renamed)));
}

TEST(PartitionStatsTest, Examples) {
  PartitionStats s = ComputePartitionStats(
      MakePartition({{"m1", "A"}, {"m2", "A"}, {"m3", "B"}}));
  EXPECT_EQ(s.cluster_count, 2u);
  EXPECT_EQ(s.size_histogram, (std::map<size_t, size_t>{{1, 1}, {2, 1}}));

  Partition singletons, one;
  for (int i = 0; i < 7; ++i) {
    singletons.assignment["m" + std::to_string(i)] = "c" + std::to_string(i);
    one.assignment["m" + std::to_string(i)] = "all";
  }
  EXPECT_EQ(ComputePartitionStats(singletons).size_histogram,
            (std::map<size_t, size_t>{{1, 7}}));
  EXPECT_EQ(ComputePartitionStats(one).cluster_count, 1u);
  EXPECT_EQ(ComputePartitionStats(one).size_histogram,
            (std::map<size_t, size_t>{{7, 1}}));
}

TEST(PartitionTest, CoarsensAndSameSet) {
  Partition fine = MakePartition({{"a", "1"}, {"b", "2"}, {"c", "3"}});
  Partition coarse = MakePartition({{"a", "x"}, {"b", "x"}, {"c", "y"}});
  EXPECT_TRUE(coarse.Coarsens(fine));
  EXPECT_FALSE(fine.Coarsens(coarse));
  EXPECT_TRUE(coarse.Coarsens(coarse));
  Partition renamed = MakePartition({{"a", "q"}, {"b", "q"}, {"c", "r"}});
  EXPECT_TRUE(coarse.SameSetPartition(renamed));
  EXPECT_FALSE(coarse.SameSetPartition(fine));
}

TEST(PartitionTest, FromLabelsNumbersByFirstOccurrence) {
  Corpus c = BuildCorpus({{"m1", "D", "a"}, {"m2", "D", "b"}, {"m3", "D", "c"}});
  Partition p = PartitionFromLabels(c.mentions, {7, 3, 7});
  EXPECT_EQ(p.assignment.at("m1"), p.assignment.at("m3"));
  EXPECT_NE(p.assignment.at("m1"), p.assignment.at("m2"));
}

TEST(CorpusIoTest, RoundTrip) {
  Corpus c = TwoDocFixture();
  c.mentions.push_back({"M3", "D1", "S1", "analysis", 19, 27, "C3"});
  std::stringstream buffer;
  WriteCorpus(c, buffer);
  Corpus back = ReadCorpus(buffer);
  EXPECT_EQ(back, c);
}

TEST(CorpusIoTest, ParsesSchemaExample) {
  std::istringstream in(
      R"({"kind":"sentence","doc_id":"D1","sent_id":"S1","text":"We used MATLAB for analysis."})"
      "\n"
      R"({"kind":"mention","mention_id":"M1","doc_id":"D1","sent_id":"S1","text":"MATLAB","start_char":8,"end_char":14,"gold_cluster":"C7"})"
      "\n");
  Corpus c = ReadCorpus(in);
  ASSERT_EQ(c.mentions.size(), 1u);
  EXPECT_EQ(c.mentions[0].gold_cluster, "C7");
  EXPECT_TRUE(ValidateCorpus(c).empty());
}

TEST(CorpusIoTest, MalformedLineIsDataError) {
  std::istringstream bad_json("{\"kind\":\"sentence\"\n");
  EXPECT_THROW(ReadCorpus(bad_json), DataError);
  std::istringstream bad_kind("{\"kind\":\"token\"}\n");
  EXPECT_THROW(ReadCorpus(bad_kind), DataError);
}

TEST(PartitionIoTest, RoundTripWithSortedIds) {
  Partition p = MakePartition({{"M4", "b"}, {"M1", "a"}, {"M2", "b"}});
  std::stringstream buffer;
  WritePartition(p, buffer);
  auto json = nlohmann::json::parse(buffer.str());
  EXPECT_EQ(json.at("clusters").at("b"),
            (std::vector<std::string>{"M2", "M4"}));
  Partition back = ReadPartition(buffer);
  EXPECT_TRUE(back.SameSetPartition(p));
}

}  // namespace
}  // namespace swcoref
