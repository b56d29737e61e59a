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


#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.h"
#include "swcoref/corpus.h"

namespace swcoref::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "swcoref");
  std::vector<const char *> argv;
  for (const std::string &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = Dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string Slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("swcoref_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    corpus_ = (dir_ / "in" / "corpus.jsonl").string();
    Result r = RunCli({"synth", "--entities", "40", "--documents", "12", "--seed",
                    "2", "--out", corpus_});
    ASSERT_EQ(r.code, kExitOk) << r.err;
  }
  std::string Path(const std::string &name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::string corpus_;
};

TEST_F(CliTest, ResolveAndScoreRoundTrip) {
  Result fuzzy = RunCli({"resolve", "fuzzy", "--in", corpus_, "--out", Path("fm/p.json")});
  ASSERT_EQ(fuzzy.code, kExitOk) << fuzzy.err;
  Result car = RunCli({"resolve", "car", "--in", corpus_, "--out", Path("car/p.json")});
  ASSERT_EQ(car.code, kExitOk) << car.err;
  EXPECT_NE(car.err.find("hash-trigram"), std::string::npos);

  // Gold partition written through the library for the key side.
  std::ofstream key(Path("key.json"));
  WritePartition(GoldPartition(ReadCorpusFile(corpus_)), key);
  key.close();
  Result score = RunCli({"score", "--key", Path("key.json"), "--response", Path("fm/p.json")});
  ASSERT_EQ(score.code, kExitOk) << score.err;
  auto report = nlohmann::json::parse(score.out);
  EXPECT_GT(report.at("conll_f1").get<double>(), 0.5);
  EXPECT_TRUE(report.at("muc").contains("f1"));

  auto manifest = nlohmann::json::parse(Slurp(dir_ / "fm" / "manifest.json"));
  EXPECT_EQ(manifest.at("tool_version"), "swcoref 0.3.0");
  EXPECT_EQ(manifest.at("input_digests").at(corpus_).get<std::string>().size(), 64u);
  EXPECT_TRUE(manifest.contains("kernel_isa"));
}

TEST_F(CliTest, NoiseIsDeterministicAndRecorded) {
  for (const char *name : {"a/noisy.jsonl", "b/noisy.jsonl"}) {
    Result r = RunCli({"noise", "--in", corpus_, "--kind", "substitution", "--rate",
                    "0.5", "--seed", "7", "--out", Path(name)});
    ASSERT_EQ(r.code, kExitOk) << r.err;
  }
  EXPECT_EQ(Slurp(Path("a/noisy.jsonl")), Slurp(Path("b/noisy.jsonl")));
  auto manifest = nlohmann::json::parse(Slurp(dir_ / "a" / "manifest.json"));
  EXPECT_EQ(manifest.at("noise").at("kind"), "substitution");
  EXPECT_FALSE(manifest.at("noise").at("targets").empty());
}

TEST_F(CliTest, StatsTuneAndBench) {
  Result stats = RunCli({"stats", "--in", corpus_});
  ASSERT_EQ(stats.code, kExitOk) << stats.err;
  EXPECT_EQ(nlohmann::json::parse(stats.out).at("total_clusters"), 40);

  Result tune = RunCli({"tune", "--in", corpus_, "--grid-step", "0.05", "--out",
                     Path("tune/t.json"), "--curve-csv", Path("tune/curve.csv")});
  ASSERT_EQ(tune.code, kExitOk) << tune.err;
  auto t = nlohmann::json::parse(Slurp(Path("tune/t.json")));
  EXPECT_EQ(t.at("curve").size(), 21u);
  EXPECT_EQ(Slurp(Path("tune/curve.csv")).rfind("theta,conll_f1\n", 0), 0u);

  Result bench = RunCli({"bench", "--in", corpus_, "--system", "fuzzy", "--runs", "2"});
  ASSERT_EQ(bench.code, kExitOk) << bench.err;
  EXPECT_EQ(nlohmann::json::parse(bench.out).at("runs"), 2);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(RunCli({}).code, kExitUsage);
  EXPECT_EQ(RunCli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"resolve", "fuzzy"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"resolve", "fuzzy", "--in", corpus_, "--theta", "1.5"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"noise", "--in", corpus_, "--kind", "boundary", "--rate", "0.5",
                 "--out", Path("x.jsonl")}).code,
            kExitUsage);
  EXPECT_EQ(RunCli({"resolve", "fuzzy", "--in", Path("missing.jsonl")}).code, kExitDataError);

  std::ofstream bad(Path("bad.jsonl"));
  bad << R"({"kind":"sentence","doc_id":"D","sent_id":"S","text":"Use R."})" << "\n"
      << R"({"kind":"mention","mention_id":"m","doc_id":"D","sent_id":"S","text":"Q","start_char":4,"end_char":5})"
      << "\n";
  bad.close();
  Result r = RunCli({"resolve", "fuzzy", "--in", Path("bad.jsonl")});
  EXPECT_EQ(r.code, kExitDataError);
  EXPECT_NE(r.err.find("span mismatch"), std::string::npos);

  std::ofstream emb(Path("emb.jsonl"));
  emb << R"({"kind":"header","dim":2,"model":"m"})" << "\n";
  emb.close();
  Result missing = RunCli({"resolve", "car", "--in", corpus_, "--embeddings", Path("emb.jsonl")});
  EXPECT_EQ(missing.code, kExitDataError);
  EXPECT_NE(missing.err.find("missing embedding"), std::string::npos);
}

TEST_F(CliTest, SampleCorpusResolvesToGold) {
  const std::string sample = SWCOREF_TEST_DATA_DIR "/sample_corpus.jsonl";
  Result r = RunCli({"resolve", "fuzzy", "--in", sample, "--out", Path("sample/p.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  Partition p = ReadPartitionFile(Path("sample/p.json"));
  EXPECT_TRUE(p.SameSetPartition(GoldPartition(ReadCorpusFile(sample))));
}

}  // namespace
}  // namespace swcoref::cli
