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

#ifndef SWCOREF_NOISE_H_
#define SWCOREF_NOISE_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "swcoref/corpus.h"

namespace swcoref {

// xoshiro256** seeded through splitmix64. Streams with the same seed but a
// different `stream` value are independent.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0);

  uint64_t Next();

  // Uniform integer in [0, bound), unbiased by rejection. bound > 0.
  uint64_t Below(uint64_t bound);

 private:
  std::array<uint64_t, 4> s_;
};

enum class NoiseKind { kBoundary, kSubstitution };

std::string NoiseKindName(NoiseKind kind);
// Throws std::invalid_argument for anything but "boundary"/"substitution".
NoiseKind ParseNoiseKind(const std::string &name);

struct NoiseConfig {
  NoiseKind kind = NoiseKind::kBoundary;
  double rate = 0.0;
  uint64_t seed = 0;
};

// round(rate * n) distinct indices drawn without replacement, sorted.
// Rounding is half away from zero.
std::vector<size_t> SelectTargets(size_t n, double rate, uint64_t seed);

enum class BoundaryEdit { kExtendLeft, kExtendRight, kTruncateLeft, kTruncateRight };

// Applies one boundary edit if admissible on this sentence: extensions take
// the adjacent whitespace-delimited token, truncations drop the first or
// last token of a multi-token mention.
std::optional<Mention> ApplyBoundaryEdit(const Mention &mention,
                                         const SentenceRecord &sentence,
                                         BoundaryEdit edit);

struct BoundaryOutcome {
  Mention mention;
  std::optional<BoundaryEdit> edit;  // empty when skipped
};

// Picks uniformly among the admissible edits; unchanged when none applies.
BoundaryOutcome PerturbBoundary(const Mention &mention,
                                const SentenceRecord &sentence, Rng &rng);

// Normalized surface forms of a corpus with a display string for each (the
// first original mention text seen with that form).
struct FormInventory {
  std::vector<std::string> forms;  // sorted
  std::map<std::string, std::string> surface;

  static FormInventory FromCorpus(const Corpus &corpus);
};

struct SubstituteOutcome {
  Mention mention;
  std::string sentence_text;
  bool skipped = false;
};

// Replaces the mention with a form drawn uniformly from the inventory,
// excluding its own normalized form and `excluded` (forms of its gold
// cluster). The sentence text is rewritten so the span stays consistent;
// the gold label is kept.
SubstituteOutcome PerturbSubstitute(const Mention &mention,
                                    const SentenceRecord &sentence,
                                    const FormInventory &inventory,
                                    const std::set<std::string> &excluded,
                                    Rng &rng);

struct NoiseResult {
  Corpus corpus;
  std::vector<std::string> targets;  // mention ids selected for perturbation
  std::vector<std::string> skipped;  // targets left unchanged
};

// Perturbs exactly round(rate * N) mentions (minus skips) in mention order.
// Substitution requires gold labels (DataError otherwise).
NoiseResult ApplyNoise(const Corpus &corpus, const NoiseConfig &config);

// {"kind":..,"rate":..,"seed":..,"targets":[..],"skipped":[..]}
std::string NoiseManifestJson(const NoiseConfig &config,
                              const NoiseResult &result);

}  // namespace swcoref

#endif  // SWCOREF_NOISE_H_
