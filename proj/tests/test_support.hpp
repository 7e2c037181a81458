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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "sparsempc/plain.hpp"

namespace sparsempc::testing {

inline double random_value(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-8.0, 8.0);
  double v = u(rng);
  if (std::fabs(v) < 0.01) v = 0.5;
  return v;
}

// Each cell is non-zero with probability `density`.
inline PlainSparseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                       double density) {
  PlainSparseMatrix m{rows, cols, {}};
  std::bernoulli_distribution keep(density);
  for (std::size_t i = 1; i <= rows; ++i) {
    for (std::size_t j = 1; j <= cols; ++j) {
      if (keep(rng)) m.entries.push_back({i, j, random_value(rng)});
    }
  }
  std::shuffle(m.entries.begin(), m.entries.end(), rng);
  return m;
}

inline PlainSparseVector random_vector(std::mt19937_64& rng, std::size_t dim, double density) {
  PlainSparseVector v{dim, {}};
  std::bernoulli_distribution keep(density);
  for (std::size_t i = 1; i <= dim; ++i) {
    if (keep(rng)) v.entries.push_back({i, random_value(rng)});
  }
  std::shuffle(v.entries.begin(), v.entries.end(), rng);
  return v;
}

// Random vector with exactly nnz entries.
inline PlainSparseVector random_vector_nnz(std::mt19937_64& rng, std::size_t dim, std::size_t nnz) {
  std::vector<std::uint64_t> coords(dim);
  for (std::size_t i = 0; i < dim; ++i) coords[i] = i + 1;
  std::shuffle(coords.begin(), coords.end(), rng);
  PlainSparseVector v{dim, {}};
  for (std::size_t i = 0; i < nnz; ++i) v.entries.push_back({coords[i], random_value(rng)});
  return v;
}

}  // namespace sparsempc::testing
