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

#ifndef SWCOREF_KERNELS_H_
#define SWCOREF_KERNELS_H_

#include <span>
#include <string_view>

namespace swcoref::kernels {

// Dense double-precision vector kernels used by the embedding resolver.
//
// Every variant accumulates dot products in four interleaved lanes
// (element i goes to lane i % 4 for the 4-aligned prefix), reduces them as
// (l0 + l1) + (l2 + l3), then adds the tail elements in order. Products and
// sums are separate roundings (no fused multiply-add). The scalar reference
// follows the same schedule, so all variants return identical bits.

enum class Isa { kScalar, kAvx2, kNeon };

std::string_view IsaName(Isa isa);

struct KernelTable {
  Isa isa;
  double (*dot)(const double *a, const double *b, size_t n);
  // out[i] = wa * a[i] + wb * b[i]
  void (*weighted_sum)(double *out, double wa, const double *a, double wb,
                       const double *b, size_t n);
  // out[i] = in[i] / divisor
  void (*divide)(double *out, const double *in, double divisor, size_t n);
};

// True when the variant is compiled in and the running CPU supports it.
bool IsaAvailable(Isa isa);

// Table for a specific variant; throws std::invalid_argument when the
// variant is unavailable.
const KernelTable &Table(Isa isa);

// Best available variant, picked once at first use.
const KernelTable &Active();

double Dot(std::span<const double> a, std::span<const double> b);
void WeightedSum(std::span<double> out, double wa, std::span<const double> a,
                 double wb, std::span<const double> b);
void Divide(std::span<double> out, std::span<const double> in, double divisor);

namespace detail {
extern const KernelTable kScalarTable;
#if defined(SWCOREF_HAVE_AVX2)
extern const KernelTable kAvx2Table;
#endif
#if defined(SWCOREF_HAVE_NEON)
extern const KernelTable kNeonTable;
#endif
}  // namespace detail

}  // namespace swcoref::kernels

#endif  // SWCOREF_KERNELS_H_
