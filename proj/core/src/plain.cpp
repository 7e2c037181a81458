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

#include "sparsempc/plain.hpp"

#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "sparsempc/errors.hpp"

namespace sparsempc {

std::vector<std::size_t> PlainSparseMatrix::row_counts() const {
  std::vector<std::size_t> out(rows, 0);
  for (const auto& e : entries) out.at(e.row - 1)++;
  return out;
}

std::vector<std::size_t> PlainSparseMatrix::col_counts() const {
  std::vector<std::size_t> out(cols, 0);
  for (const auto& e : entries) out.at(e.col - 1)++;
  return out;
}

PlainSparseMatrix PlainSparseMatrix::transposed() const {
  PlainSparseMatrix t{cols, rows, {}};
  t.entries.reserve(entries.size());
  for (const auto& e : entries) t.entries.push_back({e.col, e.row, e.value});
  return t;
}

DenseMatrix to_dense(const PlainSparseMatrix& m) {
  DenseMatrix d(m.rows, m.cols);
  for (const auto& e : m.entries) d.at(e.row - 1, e.col - 1) += e.value;
  return d;
}

std::vector<double> to_dense(const PlainSparseVector& v) {
  std::vector<double> d(v.dim, 0.0);
  for (const auto& e : v.entries) d.at(e.coord - 1) += e.value;
  return d;
}

void validate(const PlainSparseVector& v) {
  std::set<std::uint64_t> seen;
  for (const auto& e : v.entries) {
    if (e.coord < 1 || e.coord > v.dim) {
      throw ShapeError("coordinate " + std::to_string(e.coord) + " outside [1, " +
                       std::to_string(v.dim) + "]");
    }
    if (!seen.insert(e.coord).second) throw ShapeError("duplicate coordinate " + std::to_string(e.coord));
    if (!std::isfinite(e.value)) throw RangeError("non-finite value");
  }
}

void validate(const PlainSparseMatrix& m) {
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  for (const auto& e : m.entries) {
    if (e.row < 1 || e.row > m.rows || e.col < 1 || e.col > m.cols) {
      throw ShapeError("entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                       ") outside the matrix");
    }
    if (!seen.insert({e.row, e.col}).second) {
      throw ShapeError("duplicate entry (" + std::to_string(e.row) + "," + std::to_string(e.col) + ")");
    }
    if (!std::isfinite(e.value)) throw RangeError("non-finite value");
  }
}

}  // namespace sparsempc
