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

#include "swcoref/analysis.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <iterator>
#include <optional>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "swcoref/errors.h"
#include "swcoref/lexical.h"
#include "swcoref/noise.h"
#include "swcoref/unicode.h"

namespace swcoref {

using ordered_json = nlohmann::ordered_json;

CorpusStats ComputeStats(const Corpus &corpus, bool include_singletons) {
  if (!corpus.HasGold()) {
    throw DataError("corpus statistics require gold labels");
  }
  CorpusStats stats;
  stats.documents = corpus.DocumentIds().size();
  stats.mention_instances = corpus.mentions.size();

  std::set<std::pair<std::string, std::string>> bearing;
  std::set<std::string> forms;
  struct Chain {
    size_t size = 0;
    std::set<std::string> docs;
    std::map<std::string, size_t> form_counts;
  };
  std::map<std::string, Chain> chains;
  for (const Mention &m : corpus.mentions) {
    bearing.emplace(m.doc_id, m.sent_id);
    std::string form = NormalizeForm(m.text);
    forms.insert(form);
    Chain &chain = chains[*m.gold_cluster];
    ++chain.size;
    chain.docs.insert(m.doc_id);
    ++chain.form_counts[form];
  }
  stats.sentences_with_mentions = bearing.size();
  stats.unique_surface_forms = forms.size();
  stats.total_clusters = chains.size();
  if (chains.empty()) {
    stats.crossdoc_nonsingleton_undefined = true;
    stats.lexsim_undefined = true;
    return stats;
  }

  size_t singletons = 0, crossdoc = 0, crossdoc_nonsingleton = 0;
  size_t form_total = 0;
  double lexsim_sum = 0.0;
  size_t lexsim_clusters = 0;
  for (const auto &[label, chain] : chains) {
    stats.max_chain_length = std::max(stats.max_chain_length, chain.size);
    form_total += chain.form_counts.size();
    const bool cross = chain.docs.size() >= 2;
    if (cross) ++crossdoc;
    if (chain.size == 1) {
      ++singletons;
      if (include_singletons) {
        lexsim_sum += 1.0;
        ++lexsim_clusters;
      }
      continue;
    }
    if (cross) ++crossdoc_nonsingleton;
    // Instance pairs: identical forms contribute 1 per pair, distinct forms
    // contribute their similarity times the pair multiplicity.
    std::vector<std::pair<std::u32string, size_t>> counted;
    for (const auto &[form, count] : chain.form_counts) {
      counted.emplace_back(DecodeUtf8(form), count);
    }
    double pair_sum = 0.0;
    for (size_t a = 0; a < counted.size(); ++a) {
      const double ca = static_cast<double>(counted[a].second);
      pair_sum += ca * (ca - 1.0) / 2.0;
      for (size_t b = a + 1; b < counted.size(); ++b) {
        const double cb = static_cast<double>(counted[b].second);
        pair_sum +=
            ca * cb * SymmetricSimilarity(counted[a].first, counted[b].first);
      }
    }
    const double n = static_cast<double>(chain.size);
    lexsim_sum += pair_sum / (n * (n - 1.0) / 2.0);
    ++lexsim_clusters;
  }
  const double clusters = static_cast<double>(chains.size());
  stats.avg_chain_length = static_cast<double>(corpus.mentions.size()) / clusters;
  stats.singleton_rate = static_cast<double>(singletons) / clusters;
  stats.crossdoc_rate_all = static_cast<double>(crossdoc) / clusters;
  const size_t nonsingleton = chains.size() - singletons;
  if (nonsingleton > 0) {
    stats.crossdoc_rate_nonsingleton =
        static_cast<double>(crossdoc_nonsingleton) /
        static_cast<double>(nonsingleton);
  } else {
    stats.crossdoc_nonsingleton_undefined = true;
  }
  stats.avg_forms_per_cluster = static_cast<double>(form_total) / clusters;
  if (lexsim_clusters > 0) {
    stats.avg_intracluster_lexsim =
        lexsim_sum / static_cast<double>(lexsim_clusters);
  } else {
    stats.lexsim_undefined = true;
  }
  return stats;
}

std::string CorpusStatsJson(const CorpusStats &s) {
  ordered_json j;
  j["documents"] = s.documents;
  j["sentences_with_mentions"] = s.sentences_with_mentions;
  j["mention_instances"] = s.mention_instances;
  j["unique_surface_forms"] = s.unique_surface_forms;
  j["total_clusters"] = s.total_clusters;
  j["avg_chain_length"] = s.avg_chain_length;
  j["max_chain_length"] = s.max_chain_length;
  j["singleton_rate"] = s.singleton_rate;
  j["crossdoc_rate_all"] = s.crossdoc_rate_all;
  j["crossdoc_rate_nonsingleton"] = s.crossdoc_rate_nonsingleton;
  j["avg_forms_per_cluster"] = s.avg_forms_per_cluster;
  j["avg_intracluster_lexsim"] = s.avg_intracluster_lexsim;
  j["crossdoc_nonsingleton_undefined"] = s.crossdoc_nonsingleton_undefined;
  j["lexsim_undefined"] = s.lexsim_undefined;
  return j.dump(2);
}

std::vector<double> ThetaGrid(double step) {
  if (!(step > 0.0 && step <= 1.0)) {
    throw std::invalid_argument("grid step must lie in (0, 1]");
  }
  std::vector<double> grid;
  const double inverse = 1.0 / step;
  const double k_max = std::round(inverse);
  if (std::fabs(inverse - k_max) < 1e-9) {
    const auto points = static_cast<size_t>(k_max);
    for (size_t k = 0; k <= points; ++k) {
      grid.push_back(static_cast<double>(k) / k_max);
    }
    return grid;
  }
  for (size_t k = 0; static_cast<double>(k) * step < 1.0; ++k) {
    grid.push_back(static_cast<double>(k) * step);
  }
  grid.push_back(1.0);
  return grid;
}

TuneResult TuneTheta(const Corpus &corpus, double grid_step) {
  const Partition gold = GoldPartition(corpus);
  const std::vector<double> grid = ThetaGrid(grid_step);
  const FormSimilarities sims(UniqueForms(corpus));
  TuneResult result;
  for (double theta : grid) {
    std::vector<size_t> components =
        ConnectedComponents(sims.forms().size(), sims.Edges(theta));
    Partition response =
        PartitionFromFormComponents(corpus, sims.forms(), components);
    TunePoint point{theta, ScoreAll(gold, response).conll_f1,
                    ComputePartitionStats(response).cluster_count};
    result.curve.push_back(point);
  }
  for (const TunePoint &p : result.curve) {
    if (&p == &result.curve.front() || p.conll_f1 > result.best_f1) {
      result.best_f1 = p.conll_f1;
      result.best_theta = p.theta;
    }
  }
  return result;
}

std::string TuneResultJson(const TuneResult &result) {
  ordered_json j;
  j["best_theta"] = result.best_theta;
  j["best_f1"] = result.best_f1;
  ordered_json curve = ordered_json::array();
  for (const TunePoint &p : result.curve) {
    curve.push_back({{"theta", p.theta},
                     {"conll_f1", p.conll_f1},
                     {"clusters", p.clusters}});
  }
  j["curve"] = std::move(curve);
  return j.dump(2);
}

std::string TuneCurveCsv(const TuneResult &result) {
  std::ostringstream out;
  out << "theta,conll_f1\n";
  char buf[64];
  for (const TunePoint &p : result.curve) {
    std::snprintf(buf, sizeof buf, "%.4f,%.6f\n", p.theta, p.conll_f1);
    out << buf;
  }
  return out.str();
}

double Efficiency(double conll_f1, double mean_seconds) {
  return mean_seconds > 0.0 ? conll_f1 / mean_seconds : 0.0;
}

TimingReport Bench(const Resolver &resolver, const Corpus &corpus, size_t runs,
                   const Partition &gold) {
  if (runs == 0) throw std::invalid_argument("bench needs at least one run");
  std::vector<double> seconds;
  std::optional<Partition> first;
  TimingReport report;
  for (size_t r = 0; r < runs; ++r) {
    WorkCounters counters;
    const auto start = std::chrono::steady_clock::now();
    Partition output = resolver(corpus, &counters);
    const auto stop = std::chrono::steady_clock::now();
    seconds.push_back(std::chrono::duration<double>(stop - start).count());
    if (!first) {
      first = std::move(output);
      report.work = counters;
    } else if (!(output == *first)) {
      throw std::logic_error("resolver output differs between bench runs");
    }
  }
  report.runs = runs;
  double sum = 0.0;
  for (double s : seconds) sum += s;
  report.mean_seconds = sum / static_cast<double>(runs);
  if (runs > 1) {
    double sq = 0.0;
    for (double s : seconds) sq += (s - report.mean_seconds) * (s - report.mean_seconds);
    report.std_seconds = std::sqrt(sq / static_cast<double>(runs - 1));
  }
  report.conll_f1 = ScoreAll(gold, *first).conll_f1;
  report.efficiency = Efficiency(report.conll_f1, report.mean_seconds);
  return report;
}

std::string TimingReportJson(const TimingReport &r) {
  ordered_json j;
  j["runs"] = r.runs;
  j["mean_seconds"] = r.mean_seconds;
  j["std_seconds"] = r.std_seconds;
  j["conll_f1"] = r.conll_f1;
  j["efficiency"] = r.efficiency;
  j["similarity_evaluations"] = r.work.similarity_evaluations;
  j["vector_combinations"] = r.work.vector_combinations;
  j["distance_evaluations"] = r.work.distance_evaluations;
  j["cluster_merges"] = r.work.cluster_merges;
  return j.dump(2);
}

namespace {

// Pronounceable lowercase word of the given length.
std::string RandomWord(Rng &rng, size_t length) {
  static constexpr char kConsonants[] = "bcdfghjklmnprstvwxz";
  static constexpr char kVowels[] = "aeiouy";
  std::string word;
  for (size_t i = 0; i < length; ++i) {
    word.push_back(i % 2 == 0 ? kConsonants[rng.Below(sizeof kConsonants - 1)]
                              : kVowels[rng.Below(sizeof kVowels - 1)]);
  }
  return word;
}

std::string Capitalize(std::string s, Rng &rng) {
  switch (rng.Below(3)) {
    case 0:
      s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
      break;
    case 1:
      for (char &c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      break;
    default:
      break;
  }
  return s;
}

const char *const kTemplates[] = {
    "We used {} for statistical analysis and visualization.",
    "All data were processed with {} on a workstation.",
    "Images were segmented in {} using default parameters.",
    "Figures were produced with {}.",
    "Simulations relied on {} throughout.",
    "{} was used to fit the models.",
};

struct PendingMention {
  std::string surface;
  std::string cluster;
};

// Writes sentences and mentions for one document. Every fourth sentence
// holds two mentions joined by "and".
void EmitDocument(const std::string &doc_id,
                  const std::vector<PendingMention> &pending, Rng &rng,
                  Corpus &corpus, size_t &next_mention) {
  size_t sent = 0;
  for (size_t i = 0; i < pending.size();) {
    const bool pair = i + 1 < pending.size() && sent % 4 == 3;
    std::string first = pending[i].surface;
    std::string filler = pair ? first + " and " + pending[i + 1].surface : first;
    std::string tmpl = kTemplates[rng.Below(std::size(kTemplates))];
    const size_t slot = tmpl.find("{}");
    std::string text = tmpl.substr(0, slot) + filler + tmpl.substr(slot + 2);
    SentenceRecord record{doc_id, "s" + std::to_string(sent), text};
    const auto prefix = static_cast<int64_t>(Utf8Length(tmpl.substr(0, slot)));

    auto add = [&](const PendingMention &p, int64_t start) {
      char id[32];
      std::snprintf(id, sizeof id, "m%06zu", next_mention++);
      Mention m{id, doc_id, record.sent_id, p.surface, start,
                start + static_cast<int64_t>(Utf8Length(p.surface)), p.cluster};
      corpus.mentions.push_back(std::move(m));
    };
    add(pending[i], prefix);
    if (pair) {
      add(pending[i + 1],
          prefix + static_cast<int64_t>(Utf8Length(first)) + 5);  // " and "
    }
    corpus.sentences.push_back(std::move(record));
    i += pair ? 2 : 1;
    ++sent;
  }
}

}  // namespace

Corpus SyntheticCorpus(const SynthConfig &config) {
  if (config.documents == 0) throw std::invalid_argument("need documents");
  Rng rng(config.seed, 7);
  std::vector<std::vector<PendingMention>> docs(config.documents);
  std::unordered_set<std::string> used_names;
  std::string previous_name;
  for (size_t e = 0; e < config.entities; ++e) {
    std::string name;
    do {
      if (!previous_name.empty() && rng.Below(10) == 0) {
        // A distinct tool whose name extends another one.
        name = previous_name + " " + RandomWord(rng, 3 + rng.Below(3));
      } else {
        name = RandomWord(rng, 4 + rng.Below(6));
        if (rng.Below(4) == 0) name += " " + RandomWord(rng, 3 + rng.Below(4));
      }
    } while (!used_names.insert(name).second);
    previous_name = name;
    // Some tools also go by an unrelated short alias.
    std::string alias;
    if (rng.Below(10) == 0) {
      do {
        alias = RandomWord(rng, 3);
      } while (!used_names.insert(alias).second);
    }
    const std::string cluster = "E" + std::to_string(e);

    size_t size = 1;
    const double u = static_cast<double>(rng.Below(1u << 30)) / (1u << 30);
    if (u >= config.singleton_fraction) {
      // Heavy tail: most chains short, a few very long.
      const size_t roll = rng.Below(100);
      size = roll < 85 ? 2 + rng.Below(4) : roll < 97 ? 6 + rng.Below(15)
                                                      : 30 + rng.Below(60);
    }
    // Most multi-mention chains stay in one document.
    const bool spread = size > 1 && rng.Below(100) < 45;
    const size_t home = rng.Below(config.documents);
    const std::string version = std::to_string(1 + rng.Below(12));
    for (size_t k = 0; k < size; ++k) {
      std::string surface = Capitalize(name, rng);
      if (!alias.empty() && rng.Below(10) < 3) {
        surface = Capitalize(alias, rng);
      } else if (rng.Below(10) == 0) {
        surface += " " + version;
      }
      const size_t doc = spread ? rng.Below(config.documents) : home;
      docs[doc].push_back({surface, cluster});
    }
  }
  Corpus corpus;
  size_t next_mention = 0;
  for (size_t d = 0; d < docs.size(); ++d) {
    char id[32];
    std::snprintf(id, sizeof id, "D%04zu", d);
    if (docs[d].empty()) {
      corpus.sentences.push_back({id, "s0", "No software is mentioned here."});
      continue;
    }
    // Shuffle so chains interleave inside a document.
    for (size_t i = docs[d].size(); i > 1; --i) {
      std::swap(docs[d][i - 1], docs[d][rng.Below(i)]);
    }
    EmitDocument(id, docs[d], rng, corpus, next_mention);
  }
  return corpus;
}

Corpus ScalingCorpus(size_t unique_forms, size_t mentions_per_form,
                     uint64_t seed) {
  Rng rng(seed, 11);
  std::vector<std::string> forms;
  std::unordered_set<std::string> seen;
  while (forms.size() < unique_forms) {
    std::string w = RandomWord(rng, 6 + rng.Below(5));
    if (seen.insert(w).second) forms.push_back(w);
  }
  constexpr size_t kDocs = 50;
  std::vector<std::vector<PendingMention>> docs(kDocs);
  size_t k = 0;
  for (size_t f = 0; f < forms.size(); ++f) {
    for (size_t r = 0; r < mentions_per_form; ++r) {
      docs[k++ % kDocs].push_back({forms[f], "F" + std::to_string(f)});
    }
  }
  Corpus corpus;
  size_t next_mention = 0;
  for (size_t d = 0; d < kDocs; ++d) {
    if (docs[d].empty()) continue;
    char id[32];
    std::snprintf(id, sizeof id, "D%04zu", d);
    EmitDocument(id, docs[d], rng, corpus, next_mention);
  }
  return corpus;
}

}  // namespace swcoref
