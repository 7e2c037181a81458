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

#include "sparsempc/fixed_point.hpp"

#include <cmath>

#include "sparsempc/errors.hpp"

namespace sparsempc {
namespace {

Fp half_modulus() {
  Fp::Limbs half = Fp::kModulus;
  // p is odd; (p - 1) / 2
  for (int i = 0; i < 4; ++i) {
    half[i] = (half[i] >> 1) | (i < 3 ? half[i + 1] << 63 : 0);
  }
  return Fp::from_limbs(half);
}

}  // namespace

Fp fp_encode(double x) {
  if (!std::isfinite(x) || std::fabs(x) > FixedPointParams::kValueBound) {
    throw RangeError("fp_encode: value outside [-2^19, 2^19]");
  }
  double scaled = std::nearbyint(std::ldexp(x, FixedPointParams::kFracBits));
  auto raw = static_cast<std::int64_t>(scaled);
  return Fp::from_int(raw);
}

__int128 fp_centered(const Fp& e) {
  static const Fp half = half_modulus();
  if (e > half) {
    Fp mag = -e;
    if (mag.bit_length() > 126) throw RangeError("fp_centered: magnitude too large");
    return -static_cast<__int128>(mag.low128());
  }
  if (e.bit_length() > 126) throw RangeError("fp_centered: magnitude too large");
  return static_cast<__int128>(e.low128());
}

double fp_decode(const Fp& e) {
  __int128 raw = fp_centered(e);
  __int128 mag = raw < 0 ? -raw : raw;
  if (mag > (static_cast<__int128>(1) << FixedPointParams::kRawBoundLog2)) {
    throw RangeError("fp_decode: raw magnitude exceeds 2^51");
  }
  return std::ldexp(static_cast<double>(static_cast<std::int64_t>(raw)),
                    -FixedPointParams::kFracBits);
}

}  // namespace sparsempc
