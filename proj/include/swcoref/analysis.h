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

#ifndef SWCOREF_ANALYSIS_H_
#define SWCOREF_ANALYSIS_H_

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "swcoref/car.h"
#include "swcoref/corpus.h"
#include "swcoref/counters.h"
#include "swcoref/fuzzy.h"
#include "swcoref/scorer.h"

namespace swcoref {

struct CorpusStats {
  size_t documents = 0;
  size_t sentences_with_mentions = 0;
  size_t mention_instances = 0;
  size_t unique_surface_forms = 0;
  size_t total_clusters = 0;
  double avg_chain_length = 0.0;  // mentions / clusters, singletons included
  size_t max_chain_length = 0;
  double singleton_rate = 0.0;
  double crossdoc_rate_all = 0.0;
  double crossdoc_rate_nonsingleton = 0.0;
  double avg_forms_per_cluster = 0.0;
  double avg_intracluster_lexsim = 0.0;
  // Set when a rate had an empty denominator and was reported as 0.
  bool crossdoc_nonsingleton_undefined = false;
  bool lexsim_undefined = false;
};

// Gold-chain statistics. Intra-cluster similarity averages, per cluster with
// >= 2 mentions, the mean pairwise similarity of normalized mention texts;
// with include_singletons, singleton clusters count as similarity 1.
// Throws DataError without gold labels.
CorpusStats ComputeStats(const Corpus &corpus, bool include_singletons = false);

std::string CorpusStatsJson(const CorpusStats &stats);

// Threshold grid 0, step, 2*step, ..., 1 (1 always included). When 1/step
// is an integer K the points are exactly k / K.
std::vector<double> ThetaGrid(double step);

struct TunePoint {
  double theta = 0.0;
  double conll_f1 = 0.0;
  size_t clusters = 0;
};

struct TuneResult {
  double best_theta = 0.0;
  double best_f1 = 0.0;
  std::vector<TunePoint> curve;
};

// Grid search of the fuzzy threshold against gold CoNLL F1; ties go to the
// smallest theta. Each form pair is scored once for the whole grid.
TuneResult TuneTheta(const Corpus &corpus, double grid_step = 0.01);

std::string TuneResultJson(const TuneResult &result);
std::string TuneCurveCsv(const TuneResult &result);

struct TimingReport {
  size_t runs = 0;
  double mean_seconds = 0.0;
  double std_seconds = 0.0;  // sample deviation; 0 for a single run
  double conll_f1 = 0.0;
  double efficiency = 0.0;  // conll_f1 / mean_seconds
  WorkCounters work;        // from one run
};

// CoNLL F1 per second; 0 when no time was measured.
double Efficiency(double conll_f1, double mean_seconds);

using Resolver = std::function<Partition(const Corpus &, WorkCounters *)>;

// Times `runs` sequential end-to-end resolver calls, checks that every run
// returns the same partition (std::logic_error otherwise), and scores the
// output once against `gold`.
TimingReport Bench(const Resolver &resolver, const Corpus &corpus, size_t runs,
                   const Partition &gold);

std::string TimingReportJson(const TimingReport &report);

// Synthetic gold corpus with the chain shape of a software-mention training
// set: about half singletons, a few very long chains, mostly one or two
// surface variants per entity (case changes, version suffixes), and chains
// spread over several documents.
struct SynthConfig {
  size_t entities = 100;
  size_t documents = 40;
  double singleton_fraction = 0.5;
  uint64_t seed = 1;
};

Corpus SyntheticCorpus(const SynthConfig &config);

// Corpus whose mentions use exactly `unique_forms` distinct normalized forms,
// each appearing `mentions_per_form` times.
Corpus ScalingCorpus(size_t unique_forms, size_t mentions_per_form,
                     uint64_t seed);

}  // namespace swcoref

#endif  // SWCOREF_ANALYSIS_H_
