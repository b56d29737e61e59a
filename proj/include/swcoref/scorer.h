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

#ifndef SWCOREF_SCORER_H_
#define SWCOREF_SCORER_H_

#include <iosfwd>
#include <string>

#include "swcoref/corpus.h"

namespace swcoref {

struct PRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// f1 = 2PR / (P + R), or 0 when P + R = 0.
PRF MakePRF(double precision, double recall);

struct ScoreReport {
  PRF muc;
  PRF b3;
  PRF ceafe;
  double conll_f1 = 0.0;  // mean of the three F1 values
};

// All metrics require key and response over the identical mention set and
// throw DataError otherwise. A 0/0 precision or recall is 0, except that an
// empty mention set scores 1 everywhere.

// Link-based MUC. Singleton chains add nothing to their own side's counts.
PRF Muc(const Partition &key, const Partition &response);

// Mention-averaged B-cubed; singletons count.
PRF BCubed(const Partition &key, const Partition &response);

// Entity-based CEAF with phi4(K, S) = 2|K n S| / (|K| + |S|) and an optimal
// one-to-one cluster alignment.
PRF CeafE(const Partition &key, const Partition &response);

ScoreReport ScoreAll(const Partition &key, const Partition &response);

// {"muc":{"p":..,"r":..,"f1":..},"b3":{..},"ceafe":{..},"conll_f1":..}
// with values rounded to 4 decimals.
std::string ScoreReportJson(const ScoreReport &report);

// Rounds to `places` decimals, half-to-even on the decimal representation of
// the binary value.
double RoundDecimals(double x, int places);

}  // namespace swcoref

#endif  // SWCOREF_SCORER_H_
