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

#ifndef SWCOREF_LEXICAL_H_
#define SWCOREF_LEXICAL_H_

#include <string>
#include <string_view>

namespace swcoref {

// Case-folds, trims, and collapses internal whitespace runs to one space.
std::string NormalizeForm(std::string_view text);
std::u32string NormalizeForm(std::u32string_view text);

// Ratcliff/Obershelp (gestalt pattern matching) similarity:
//
//   2 * M / (|a| + |b|)
//
// where M counts characters matched by taking the longest common substring,
// then recursing on the unmatched regions to its left and right. Ties on the
// longest block go to the earliest start in `a`, then in `b`. Two empty
// strings score 1. Not symmetric in general; callers that need symmetry
// order the arguments themselves.
double RatcliffObershelp(std::u32string_view a, std::u32string_view b);

// UTF-8 convenience overload; compares scalar values.
double RatcliffObershelp(std::string_view a, std::string_view b);

// Total matched characters M for the pair.
size_t MatchedCharacters(std::u32string_view a, std::u32string_view b);

// Calls RatcliffObershelp with the lexicographically smaller argument first.
double SymmetricSimilarity(std::u32string_view a, std::u32string_view b);

}  // namespace swcoref

#endif  // SWCOREF_LEXICAL_H_
