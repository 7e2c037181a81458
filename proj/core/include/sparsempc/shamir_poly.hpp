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

#include <cstddef>
#include <span>
#include <vector>

#include "sparsempc/errors.hpp"

// Field-generic Shamir building blocks. Instantiated with Fp by the protocol
// code and with SmallField<P> by the statistical secrecy tests.
namespace sparsempc {

// Evaluations at x = 1..parties of a degree-`degree` polynomial with constant
// term `secret`. `draw()` supplies the random higher coefficients.
template <class F, class Draw>
std::vector<F> share_polynomial(const F& secret, std::size_t degree, std::size_t parties,
                                Draw&& draw) {
  std::vector<F> coeffs(degree + 1);
  coeffs[0] = secret;
  for (std::size_t k = 1; k <= degree; ++k) coeffs[k] = draw();
  std::vector<F> out(parties);
  for (std::size_t i = 0; i < parties; ++i) {
    F x(static_cast<std::uint64_t>(i + 1));
    F acc = coeffs[degree];
    for (std::size_t k = degree; k-- > 0;) acc = acc * x + coeffs[k];
    out[i] = acc;
  }
  return out;
}

// Lagrange basis values at 0 for the given distinct, non-zero points.
template <class F>
std::vector<F> lagrange_coefficients_at_zero(std::span<const std::size_t> points) {
  std::vector<F> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    F num(1), den(1);
    F xi(static_cast<std::uint64_t>(points[i]));
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      F xj(static_cast<std::uint64_t>(points[j]));
      num *= xj;
      den *= xj - xi;
    }
    if (den.is_zero()) throw ReconstructionError("duplicate interpolation points");
    out[i] = num * den.inverse();
  }
  return out;
}

// Interpolates the value at 0 from (point, value) pairs.
template <class F>
F interpolate_at_zero(std::span<const std::size_t> points, std::span<const F> values) {
  if (points.size() != values.size()) throw ShapeError("points/values length mismatch");
  auto lambda = lagrange_coefficients_at_zero<F>(points);
  F acc(0);
  for (std::size_t i = 0; i < points.size(); ++i) acc += lambda[i] * values[i];
  return acc;
}

}  // namespace sparsempc
