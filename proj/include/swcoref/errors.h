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

#ifndef SWCOREF_ERRORS_H_
#define SWCOREF_ERRORS_H_

#include <stdexcept>
#include <string>

namespace swcoref {

// Raised for malformed or inconsistent input data: bad files, missing gold
// labels, mismatched mention sets, absent embeddings. The CLI maps it to
// exit status 1.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace swcoref

#endif  // SWCOREF_ERRORS_H_
