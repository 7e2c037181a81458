/*
 * Copyright 2026 The sparsempc Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "sparsempc/field.hpp"

namespace sparsempc {

// Signed fixed-point encoding of reals into Fp. Negative values occupy the
// upper half of the field.
struct FixedPointParams {
  static constexpr int kTotalBits = 64;
  static constexpr int kFracBits = 32;
  static constexpr int kValueBoundLog2 = 19;
  static constexpr double kValueBound = static_cast<double>(1 << kValueBoundLog2);
  // Largest raw magnitude accepted by fp_decode: 2^(19+32).
  static constexpr int kRawBoundLog2 = kValueBoundLog2 + kFracBits;
  // Largest raw magnitude a product may have before truncation.
  static constexpr int kProductBoundLog2 = 102;
  // Statistical masking headroom used by truncation.
  static constexpr int kStatisticalBits = 40;
};

// round(x * 2^32) embedded in the field. Throws RangeError if |x| > 2^19.
Fp fp_encode(double x);

// Inverse of fp_encode. Throws RangeError if the centred raw value exceeds
// 2^51 in magnitude.
double fp_decode(const Fp& e);

// Centred signed integer behind a field element, for raw magnitudes below
// 2^126. Throws RangeError otherwise.
__int128 fp_centered(const Fp& e);

}  // namespace sparsempc
