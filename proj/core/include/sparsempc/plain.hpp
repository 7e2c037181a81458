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
#include <cstdint>
#include <vector>

namespace sparsempc {

// Plaintext sparse objects. Coordinates are 1-indexed.

struct PlainVectorEntry {
  std::uint64_t coord = 0;
  double value = 0.0;
};

struct PlainSparseVector {
  std::size_t dim = 0;
  std::vector<PlainVectorEntry> entries;
};

struct PlainEntry {
  std::uint64_t row = 0;
  std::uint64_t col = 0;
  double value = 0.0;
};

struct PlainSparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<PlainEntry> entries;

  // Number of entries in each row (index 0 is row 1).
  std::vector<std::size_t> row_counts() const;
  std::vector<std::size_t> col_counts() const;
  PlainSparseMatrix transposed() const;
};

// Row-major dense matrix.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

DenseMatrix to_dense(const PlainSparseMatrix& m);
std::vector<double> to_dense(const PlainSparseVector& v);

// Throws ShapeError on duplicate or out-of-range coordinates, RangeError on
// non-finite values.
void validate(const PlainSparseVector& v);
void validate(const PlainSparseMatrix& m);

}  // namespace sparsempc
