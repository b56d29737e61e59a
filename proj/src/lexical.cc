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

#include "swcoref/lexical.h"

#include <vector>

#include "swcoref/unicode.h"

namespace swcoref {

std::u32string NormalizeForm(std::u32string_view text) {
  std::u32string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char32_t c : text) {
    if (IsUnicodeSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(U' ');
      pending_space = false;
    }
    out.push_back(FoldCase(c));
  }
  return out;
}

std::string NormalizeForm(std::string_view text) {
  return EncodeUtf8(NormalizeForm(DecodeUtf8(text)));
}

namespace {

struct Block {
  size_t a = 0;
  size_t b = 0;
  size_t size = 0;
};

// Longest common substring of a[alo,ahi) and b[blo,bhi) by dynamic
// programming over match-run lengths ending at each (i, j).
Block LongestMatch(std::u32string_view a, std::u32string_view b, size_t alo,
                   size_t ahi, size_t blo, size_t bhi,
                   std::vector<size_t> &prev, std::vector<size_t> &cur) {
  Block best{alo, blo, 0};
  const size_t width = bhi - blo;
  prev.assign(width + 1, 0);
  cur.assign(width + 1, 0);
  for (size_t i = alo; i < ahi; ++i) {
    cur[0] = 0;
    for (size_t j = blo; j < bhi; ++j) {
      const size_t col = j - blo + 1;
      if (a[i] != b[j]) {
        cur[col] = 0;
        continue;
      }
      const size_t run = prev[col - 1] + 1;
      cur[col] = run;
      const size_t sa = i + 1 - run;
      const size_t sb = j + 1 - run;
      if (run > best.size ||
          (run == best.size && (sa < best.a || (sa == best.a && sb < best.b)))) {
        best = {sa, sb, run};
      }
    }
    std::swap(prev, cur);
  }
  return best;
}

}  // namespace

size_t MatchedCharacters(std::u32string_view a, std::u32string_view b) {
  struct Region {
    size_t alo, ahi, blo, bhi;
  };
  std::vector<Region> stack{{0, a.size(), 0, b.size()}};
  std::vector<size_t> prev, cur;
  size_t matched = 0;
  while (!stack.empty()) {
    Region r = stack.back();
    stack.pop_back();
    if (r.alo >= r.ahi || r.blo >= r.bhi) continue;
    Block m = LongestMatch(a, b, r.alo, r.ahi, r.blo, r.bhi, prev, cur);
    if (m.size == 0) continue;
    matched += m.size;
    stack.push_back({r.alo, m.a, r.blo, m.b});
    stack.push_back({m.a + m.size, r.ahi, m.b + m.size, r.bhi});
  }
  return matched;
}

double RatcliffObershelp(std::u32string_view a, std::u32string_view b) {
  const size_t total = a.size() + b.size();
  if (total == 0) return 1.0;
  return 2.0 * static_cast<double>(MatchedCharacters(a, b)) /
         static_cast<double>(total);
}

double RatcliffObershelp(std::string_view a, std::string_view b) {
  return RatcliffObershelp(DecodeUtf8(a), DecodeUtf8(b));
}

double SymmetricSimilarity(std::u32string_view a, std::u32string_view b) {
  return b < a ? RatcliffObershelp(b, a) : RatcliffObershelp(a, b);
}

}  // namespace swcoref
