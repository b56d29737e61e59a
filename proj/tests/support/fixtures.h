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

// Small corpus builders shared by the unit tests.

#ifndef SWCOREF_TESTS_FIXTURES_H_
#define SWCOREF_TESTS_FIXTURES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swcoref/corpus.h"
#include "swcoref/unicode.h"

namespace swcoref::testing {

struct Spec {
  Spec(std::string id, std::string doc, std::string text,
       std::optional<std::string> gold = std::nullopt)
      : id(std::move(id)), doc(std::move(doc)), text(std::move(text)),
        gold(std::move(gold)) {}

  std::string id;
  std::string doc;
  std::string text;
  std::optional<std::string> gold;
};

// One sentence per mention: "We used <text> here." with consistent offsets.
inline Corpus BuildCorpus(const std::vector<Spec> &specs) {
  Corpus c;
  for (size_t i = 0; i < specs.size(); ++i) {
    const Spec &s = specs[i];
    std::string sid = "S" + std::to_string(i);
    c.sentences.push_back({s.doc, sid, "We used " + s.text + " here."});
    const int64_t start = 8;
    c.mentions.push_back({s.id, s.doc, sid, s.text, start,
                          start + static_cast<int64_t>(Utf8Length(s.text)),
                          s.gold});
  }
  return c;
}

inline Partition MakePartition(
    const std::vector<std::pair<std::string, std::string>> &pairs) {
  Partition p;
  for (const auto &[id, label] : pairs) p.assignment[id] = label;
  return p;
}

}  // namespace swcoref::testing

#endif  // SWCOREF_TESTS_FIXTURES_H_
