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

#include "swcoref/kernels.h"

#include <stdexcept>

namespace swcoref::kernels {

namespace detail {

namespace {

double DotScalar(const double *a, const double *b, size_t n) {
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const size_t blocked = n & ~size_t{3};
  for (size_t i = 0; i < blocked; i += 4) {
    for (size_t k = 0; k < 4; ++k) {
      const double product = a[i + k] * b[i + k];
      lane[k] = lane[k] + product;
    }
  }
  double sum = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (size_t i = blocked; i < n; ++i) {
    const double product = a[i] * b[i];
    sum = sum + product;
  }
  return sum;
}

void WeightedSumScalar(double *out, double wa, const double *a, double wb,
                       const double *b, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    const double left = wa * a[i];
    const double right = wb * b[i];
    out[i] = left + right;
  }
}

void DivideScalar(double *out, const double *in, double divisor, size_t n) {
  for (size_t i = 0; i < n; ++i) out[i] = in[i] / divisor;
}

}  // namespace

const KernelTable kScalarTable = {Isa::kScalar, DotScalar, WeightedSumScalar,
                                  DivideScalar};

}  // namespace detail

std::string_view IsaName(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
    case Isa::kNeon:
      return "neon";
  }
  return "unknown";
}

bool IsaAvailable(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(SWCOREF_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(SWCOREF_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable &Table(Isa isa) {
  if (!IsaAvailable(isa)) {
    throw std::invalid_argument("kernel variant not available: " +
                                std::string(IsaName(isa)));
  }
  switch (isa) {
#if defined(SWCOREF_HAVE_AVX2)
    case Isa::kAvx2:
      return detail::kAvx2Table;
#endif
#if defined(SWCOREF_HAVE_NEON)
    case Isa::kNeon:
      return detail::kNeonTable;
#endif
    default:
      return detail::kScalarTable;
  }
}

const KernelTable &Active() {
  static const KernelTable &table = []() -> const KernelTable & {
    if (IsaAvailable(Isa::kAvx2)) return Table(Isa::kAvx2);
    if (IsaAvailable(Isa::kNeon)) return Table(Isa::kNeon);
    return Table(Isa::kScalar);
  }();
  return table;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("Dot: size mismatch");
  return Active().dot(a.data(), b.data(), a.size());
}

void WeightedSum(std::span<double> out, double wa, std::span<const double> a,
                 double wb, std::span<const double> b) {
  if (a.size() != b.size() || out.size() != a.size()) {
    throw std::invalid_argument("WeightedSum: size mismatch");
  }
  Active().weighted_sum(out.data(), wa, a.data(), wb, b.data(), a.size());
}

void Divide(std::span<double> out, std::span<const double> in,
            double divisor) {
  if (out.size() != in.size()) {
    throw std::invalid_argument("Divide: size mismatch");
  }
  Active().divide(out.data(), in.data(), divisor, in.size());
}

}  // namespace swcoref::kernels
