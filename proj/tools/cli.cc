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

#include "cli.h"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "swcoref/analysis.h"
#include "swcoref/car.h"
#include "swcoref/corpus.h"
#include "swcoref/errors.h"
#include "swcoref/fuzzy.h"
#include "swcoref/kernels.h"
#include "swcoref/noise.h"
#include "swcoref/scorer.h"

namespace swcoref::cli {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

constexpr const char *kToolVersion = "swcoref 0.3.0";

struct Options {
  std::string in, out, key, response, embeddings, kind = "boundary";
  std::string curve_csv, system = "fuzzy";
  double theta = 0.83, alpha = 0.6, delta = 0.4, rate = 0.0, grid_step = 0.01;
  size_t max_context = 10, runs = 5;
  uint64_t seed = 0;
  bool include_singletons = false;
  bool no_car = false;
  size_t entities = 300, documents = 120;
};

std::string Sha256File(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), buf, static_cast<size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void WriteFile(const std::string &path, const std::string &content) {
  fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << content;
  if (!out) throw DataError("failed writing " + path);
}

// One manifest per output directory, describing the latest run into it.
void WriteManifest(const std::string &output_path,
                   const std::vector<std::string> &argv,
                   const ordered_json &config,
                   const std::vector<std::string> &inputs,
                   const ordered_json &extra = ordered_json()) {
  ordered_json m;
  m["command"] = argv;
  m["config"] = config;
  ordered_json digests = ordered_json::object();
  for (const std::string &path : inputs) {
    if (!path.empty()) digests[path] = Sha256File(path);
  }
  m["input_digests"] = digests;
  m["tool_version"] = kToolVersion;
  m["kernel_isa"] = std::string(kernels::IsaName(kernels::Active().isa));
  m["timestamp"] = UtcTimestamp();
  if (!extra.is_null()) {
    for (const auto &[k, v] : extra.items()) m[k] = v;
  }
  fs::path dir = fs::path(output_path).parent_path();
  WriteFile((dir / "manifest.json").string(), m.dump(2) + "\n");
}

// Writes to `path` when set, otherwise to `out`.
void Emit(const std::string &path, const std::string &content,
          std::ostream &out) {
  if (path.empty()) {
    out << content;
  } else {
    WriteFile(path, content);
  }
}

Corpus LoadValidCorpus(const std::string &path, std::ostream &err) {
  Corpus corpus = ReadCorpusFile(path);
  ValidationReport report = ValidateCorpus(corpus);
  if (!report.empty()) {
    for (const Violation &v : report) {
      err << path << ": " << v.subject << ": " << v.reason << "\n";
    }
    throw DataError(path + ": " + std::to_string(report.size()) +
                    " validation error(s)");
  }
  return corpus;
}

std::string PartitionText(const Partition &p) {
  std::ostringstream s;
  WritePartition(p, s);
  return s.str();
}

CarConfig CarConfigFrom(const Options &o) {
  CarConfig c;
  c.alpha = o.alpha;
  c.delta = o.delta;
  c.max_context_sentences = o.max_context;
  return c;
}

ordered_json CarSnapshot(const Options &o) {
  return {{"alpha", o.alpha},
          {"delta", o.delta},
          {"max_context", o.max_context},
          {"embeddings", o.embeddings.empty() ? "hash-fallback" : o.embeddings}};
}

EmbeddingTable LoadOrHashEmbeddings(const Options &o, const Corpus &corpus,
                                    std::ostream &err) {
  if (!o.embeddings.empty()) return ReadEmbeddingsFile(o.embeddings);
  err << "notice: no --embeddings given; using hash-trigram embeddings\n";
  return HashEmbeddingTable(corpus, o.max_context);
}

std::string SweepCsv(const Corpus &corpus, const Options &o,
                     ordered_json &thetas) {
  static constexpr double kRates[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const Partition gold = GoldPartition(corpus);
  std::ostringstream csv;
  csv << "kind,system,rate_0,rate_25,rate_50,rate_75,rate_100,delta\n";
  char buf[32];
  auto row = [&](const std::string &kind, const std::string &system,
                 const std::vector<double> &f1) {
    csv << kind << ',' << system;
    for (double f : f1) {
      std::snprintf(buf, sizeof buf, ",%.4f", f);
      csv << buf;
    }
    std::snprintf(buf, sizeof buf, ",%.4f\n", f1.front() - f1.back());
    csv << buf;
  };
  for (NoiseKind kind : {NoiseKind::kBoundary, NoiseKind::kSubstitution}) {
    std::vector<double> fuzzy, car;
    ordered_json chosen = ordered_json::array();
    for (double rate : kRates) {
      NoiseResult noisy = ApplyNoise(corpus, {kind, rate, o.seed});
      TuneResult tuned = TuneTheta(noisy.corpus, o.grid_step);
      fuzzy.push_back(tuned.best_f1);
      chosen.push_back(tuned.best_theta);
      if (!o.no_car) {
        EmbeddingTable table =
            HashEmbeddingTable(noisy.corpus, o.max_context);
        Partition response = ResolveCar(noisy.corpus, table, CarConfigFrom(o));
        car.push_back(ScoreAll(gold, response).conll_f1);
      }
    }
    row(NoiseKindName(kind), "fuzzy", fuzzy);
    if (!o.no_car) row(NoiseKindName(kind), "car", car);
    thetas[NoiseKindName(kind)] = chosen;
  }
  return csv.str();
}

}  // namespace

int Dispatch(int argc, const char *const *argv, std::ostream &out,
             std::ostream &err) {
  Options o;
  CLI::App app{"Cross-document software mention coreference toolkit",
               "swcoref"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto *resolve = app.add_subcommand("resolve", "Cluster mentions");
  resolve->require_subcommand(1);
  auto *fuzzy = resolve->add_subcommand("fuzzy", "Fuzzy string matching");
  fuzzy->add_option("--in", o.in, "Corpus JSONL")->required();
  fuzzy->add_option("--theta", o.theta, "Similarity threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  fuzzy->add_option("--out", o.out, "Partition JSON (default: stdout)");

  auto *car = resolve->add_subcommand("car", "Context-aware embeddings");
  car->add_option("--in", o.in, "Corpus JSONL")->required();
  car->add_option("--embeddings", o.embeddings, "Embedding interchange JSONL");
  car->add_option("--alpha", o.alpha, "Mention vector weight")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  car->add_option("--delta", o.delta, "Cosine distance threshold")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  car->add_option("--max-context", o.max_context, "Context sentences per doc")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  car->add_option("--out", o.out, "Partition JSON (default: stdout)");

  auto *score = app.add_subcommand("score", "Score a response against a key");
  score->add_option("--key", o.key, "Gold partition JSON")->required();
  score->add_option("--response", o.response, "System partition JSON")
      ->required();
  score->add_option("--out", o.out, "Report JSON (default: stdout)");

  auto *tune = app.add_subcommand("tune", "Grid-search the fuzzy threshold");
  tune->add_option("--in", o.in, "Gold corpus JSONL")->required();
  tune->add_option("--grid-step", o.grid_step, "Grid step")
      ->check(CLI::Range(1e-6, 1.0))
      ->capture_default_str();
  tune->add_option("--out", o.out, "Result JSON (default: stdout)");
  tune->add_option("--curve-csv", o.curve_csv, "theta,conll_f1 CSV");

  auto *noise = app.add_subcommand("noise", "Inject mention noise");
  noise->add_option("--in", o.in, "Gold corpus JSONL")->required();
  noise->add_option("--kind", o.kind, "boundary | substitution")
      ->check(CLI::IsMember({"boundary", "substitution"}))
      ->required();
  noise->add_option("--rate", o.rate, "Fraction of mentions")
      ->check(CLI::Range(0.0, 1.0))
      ->required();
  noise->add_option("--seed", o.seed, "Generator seed")->required();
  noise->add_option("--out", o.out, "Noisy corpus JSONL")->required();

  auto *stats = app.add_subcommand("stats", "Gold corpus statistics");
  stats->add_option("--in", o.in, "Gold corpus JSONL")->required();
  stats->add_flag("--include-singletons", o.include_singletons,
                  "Count singleton clusters in lexical similarity");
  stats->add_option("--out", o.out, "Stats JSON (default: stdout)");

  auto *bench = app.add_subcommand("bench", "Time a resolver");
  bench->add_option("--in", o.in, "Gold corpus JSONL")->required();
  bench->add_option("--system", o.system, "fuzzy | car")
      ->check(CLI::IsMember({"fuzzy", "car"}))
      ->capture_default_str();
  bench->add_option("--runs", o.runs, "Timed runs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--theta", o.theta, "Fuzzy threshold")
      ->check(CLI::Range(0.0, 1.0));
  bench->add_option("--embeddings", o.embeddings, "Embedding interchange JSONL");
  bench->add_option("--alpha", o.alpha)->check(CLI::Range(0.0, 1.0));
  bench->add_option("--delta", o.delta)->check(CLI::NonNegativeNumber);
  bench->add_option("--max-context", o.max_context)->check(CLI::PositiveNumber);
  bench->add_option("--out", o.out, "Report JSON (default: stdout)");

  auto *sweep = app.add_subcommand(
      "noise-sweep", "Both noise kinds at 0/25/50/75/100% with re-tuning");
  sweep->add_option("--in", o.in, "Gold corpus JSONL")->required();
  sweep->add_option("--seed", o.seed, "Generator seed")->capture_default_str();
  sweep->add_option("--grid-step", o.grid_step, "Tuning grid step")
      ->check(CLI::Range(1e-6, 1.0))
      ->capture_default_str();
  sweep->add_option("--alpha", o.alpha)->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--delta", o.delta)->check(CLI::NonNegativeNumber);
  sweep->add_option("--max-context", o.max_context)->check(CLI::PositiveNumber);
  sweep->add_flag("--no-car", o.no_car, "Skip the embedding resolver");
  sweep->add_option("--out", o.out, "CSV (default: stdout)");

  auto *synth = app.add_subcommand("synth", "Write a synthetic gold corpus");
  synth->add_option("--entities", o.entities)->capture_default_str();
  synth->add_option("--documents", o.documents)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--seed", o.seed)->capture_default_str();
  synth->add_option("--out", o.out, "Corpus JSONL")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion &) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  std::vector<std::string> args(argv, argv + argc);
  try {
    if (fuzzy->parsed()) {
      Corpus corpus = LoadValidCorpus(o.in, err);
      Partition p = ResolveFuzzy(corpus, {o.theta});
      Emit(o.out, PartitionText(p), out);
      if (!o.out.empty()) {
        WriteManifest(o.out, args, {{"system", "fuzzy"}, {"theta", o.theta}},
                      {o.in});
      }
    } else if (car->parsed()) {
      Corpus corpus = LoadValidCorpus(o.in, err);
      EmbeddingTable table = LoadOrHashEmbeddings(o, corpus, err);
      Partition p = ResolveCar(corpus, table, CarConfigFrom(o));
      Emit(o.out, PartitionText(p), out);
      if (!o.out.empty()) {
        ordered_json config = CarSnapshot(o);
        config["system"] = "car";
        WriteManifest(o.out, args, config, {o.in, o.embeddings});
      }
    } else if (score->parsed()) {
      Partition key = ReadPartitionFile(o.key);
      Partition response = ReadPartitionFile(o.response);
      Emit(o.out, ScoreReportJson(ScoreAll(key, response)) + "\n", out);
      if (!o.out.empty()) WriteManifest(o.out, args, {}, {o.key, o.response});
    } else if (tune->parsed()) {
      Corpus corpus = LoadValidCorpus(o.in, err);
      TuneResult result = TuneTheta(corpus, o.grid_step);
      Emit(o.out, TuneResultJson(result) + "\n", out);
      if (!o.curve_csv.empty()) WriteFile(o.curve_csv, TuneCurveCsv(result));
      if (!o.out.empty()) {
        WriteManifest(o.out, args, {{"grid_step", o.grid_step}}, {o.in});
      }
    } else if (noise->parsed()) {
      Corpus corpus = LoadValidCorpus(o.in, err);
      NoiseConfig config{ParseNoiseKind(o.kind), o.rate, o.seed};
      NoiseResult result = ApplyNoise(corpus, config);
      std::ostringstream text;
      WriteCorpus(result.corpus, text);
      WriteFile(o.out, text.str());
      ordered_json extra;
      extra["noise"] = ordered_json::parse(NoiseManifestJson(config, result));
      WriteManifest(o.out, args,
                    {{"kind", o.kind}, {"rate", o.rate}, {"seed", o.seed}},
                    {o.in}, extra);
      err << "perturbed " << result.targets.size() - result.skipped.size()
          << " of " << corpus.mentions.size() << " mentions ("
          << result.skipped.size() << " skipped)\n";
    } else if (stats->parsed()) {
      Corpus corpus = LoadValidCorpus(o.in, err);
      Emit(o.out, CorpusStatsJson(ComputeStats(corpus, o.include_singletons)) + "\n",
           out);
      if (!o.out.empty()) {
        WriteManifest(o.out, args,
                      {{"include_singletons", o.include_singletons}}, {o.in});
      }
    } else if (bench->parsed()) {
      Corpus corpus = LoadValidCorpus(o.in, err);
      Partition gold = GoldPartition(corpus);
      Resolver resolver;
      ordered_json config;
      std::optional<EmbeddingTable> table;
      if (o.system == "fuzzy") {
        const FuzzyConfig fc{o.theta};
        resolver = [fc](const Corpus &c, WorkCounters *w) {
          return ResolveFuzzy(c, fc, w);
        };
        config = {{"system", "fuzzy"}, {"theta", o.theta}};
      } else {
        table.emplace(LoadOrHashEmbeddings(o, corpus, err));
        const CarConfig cc = CarConfigFrom(o);
        const EmbeddingTable *t = &*table;
        resolver = [cc, t](const Corpus &c, WorkCounters *w) {
          return ResolveCar(c, *t, cc, w);
        };
        config = CarSnapshot(o);
        config["system"] = "car";
      }
      config["runs"] = o.runs;
      TimingReport report = Bench(resolver, corpus, o.runs, gold);
      Emit(o.out, TimingReportJson(report) + "\n", out);
      if (!o.out.empty()) WriteManifest(o.out, args, config, {o.in, o.embeddings});
    } else if (sweep->parsed()) {
      Corpus corpus = LoadValidCorpus(o.in, err);
      ordered_json thetas;
      std::string csv = SweepCsv(corpus, o, thetas);
      Emit(o.out, csv, out);
      if (!o.out.empty()) {
        ordered_json config = CarSnapshot(o);
        config["seed"] = o.seed;
        config["grid_step"] = o.grid_step;
        config["car"] = !o.no_car;
        ordered_json extra;
        extra["tuned_theta"] = thetas;
        WriteManifest(o.out, args, config, {o.in}, extra);
      }
    } else if (synth->parsed()) {
      SynthConfig config;
      config.entities = o.entities;
      config.documents = o.documents;
      config.seed = o.seed;
      std::ostringstream text;
      WriteCorpus(SyntheticCorpus(config), text);
      WriteFile(o.out, text.str());
      WriteManifest(o.out, args,
                    {{"entities", o.entities},
                     {"documents", o.documents},
                     {"seed", o.seed}},
                    {});
    }
  } catch (const DataError &e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitOk;
}

}  // namespace swcoref::cli
