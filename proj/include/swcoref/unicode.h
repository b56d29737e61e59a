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

#ifndef SWCOREF_UNICODE_H_
#define SWCOREF_UNICODE_H_

#include <string>
#include <string_view>

namespace swcoref {

// Decodes UTF-8 into Unicode scalar values. Throws DataError on malformed
// input (overlong forms, surrogates, truncated sequences).
std::u32string DecodeUtf8(std::string_view text);

std::string EncodeUtf8(std::u32string_view text);

// Number of scalar values in a UTF-8 string.
size_t Utf8Length(std::string_view text);

// Returns the scalar-value range [begin, end) of `text` re-encoded as UTF-8.
std::string Utf8Slice(std::string_view text, size_t begin, size_t end);

bool IsUnicodeSpace(char32_t c);

// Simple case folding. Covers Basic Latin, Latin-1, Latin Extended-A,
// Greek and Cyrillic capitals; other scripts pass through unchanged.
char32_t FoldCase(char32_t c);

}  // namespace swcoref

#endif  // SWCOREF_UNICODE_H_
