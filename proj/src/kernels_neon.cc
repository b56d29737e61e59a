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

#include <arm_neon.h>

#include "swcoref/kernels.h"

namespace swcoref::kernels::detail {

namespace {

// Two 2-lane registers stand in for the four reference lanes.
double DotNeon(const double *a, const double *b, size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  const size_t blocked = n & ~size_t{3};
  for (size_t i = 0; i < blocked; i += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    acc23 = vaddq_f64(acc23,
                      vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double sum = vaddvq_f64(acc01) + vaddvq_f64(acc23);
  for (size_t i = blocked; i < n; ++i) {
    const double product = a[i] * b[i];
    sum = sum + product;
  }
  return sum;
}

void WeightedSumNeon(double *out, double wa, const double *a, double wb,
                     const double *b, size_t n) {
  const size_t blocked = n & ~size_t{1};
  for (size_t i = 0; i < blocked; i += 2) {
    const float64x2_t left = vmulq_n_f64(vld1q_f64(a + i), wa);
    const float64x2_t right = vmulq_n_f64(vld1q_f64(b + i), wb);
    vst1q_f64(out + i, vaddq_f64(left, right));
  }
  for (size_t i = blocked; i < n; ++i) {
    const double left = wa * a[i];
    const double right = wb * b[i];
    out[i] = left + right;
  }
}

void DivideNeon(double *out, const double *in, double divisor, size_t n) {
  const float64x2_t d = vdupq_n_f64(divisor);
  const size_t blocked = n & ~size_t{1};
  for (size_t i = 0; i < blocked; i += 2) {
    vst1q_f64(out + i, vdivq_f64(vld1q_f64(in + i), d));
  }
  for (size_t i = blocked; i < n; ++i) out[i] = in[i] / divisor;
}

}  // namespace

const KernelTable kNeonTable = {Isa::kNeon, DotNeon, WeightedSumNeon,
                                DivideNeon};

}  // namespace swcoref::kernels::detail
