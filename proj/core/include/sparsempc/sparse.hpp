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
#include <optional>
#include <vector>

#include "sparsempc/oblivious.hpp"
#include "sparsempc/plain.hpp"
#include "sparsempc/runtime.hpp"
#include "sparsempc/shamir.hpp"

namespace sparsempc {

// Bits needed for coordinates 0..dim, where 0 is the placeholder.
std::size_t coord_width(std::size_t dim);

// A secret-shared sparse vector: one (coordinate, value) tuple per non-zero.
// dim and nnz are public. Coordinate 0 marks a placeholder.
struct SparseVectorShares {
  std::size_t dim = 0;
  BitSharedInts coords;
  ShareVector values;

  std::size_t nnz() const { return values.size(); }
  std::size_t coord_bits() const { return coords.width(); }
};

enum class Orientation { kRowGrouped, kColumnGrouped };

// A secret-shared sparse matrix stored as one sparse vector per row
// (row-grouped) or per column (column-grouped). The group of every tuple and
// the per-group counts are public; only the in-group coordinate and the value
// are shared. Tuples are stored contiguously in group order.
struct SparseMatrixShares {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Orientation orientation = Orientation::kRowGrouped;
  std::vector<std::size_t> group_nnz;
  BitSharedInts coords;
  ShareVector values;

  std::size_t nnz() const { return values.size(); }
  std::size_t coord_bits() const { return coords.width(); }
  // Dimension of the in-group coordinate.
  std::size_t inner_dim() const { return orientation == Orientation::kRowGrouped ? cols : rows; }
  std::size_t group_count() const { return group_nnz.size(); }
  // 1-based group index of every stored tuple.
  std::vector<std::uint64_t> group_of_tuples() const;
  SparseVectorShares group(std::size_t g) const;
};

// A secret-shared matrix whose row and column coordinates are both shared,
// as produced by the matrix-matrix protocol. May contain explicit zeros.
struct SharedCooMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  BitSharedInts row_coords;
  BitSharedInts col_coords;
  ShareVector values;

  std::size_t nnz() const { return values.size(); }
};

// Data-owner sharing. Coordinates are bit-decomposed with `coord_bits`
// (default coord_width(dim)) and values fixed-point encoded; everything is
// uploaded in one barrier. Throws ShapeError on duplicate or out-of-range
// coordinates and RangeError if coord_bits cannot hold dim.
SparseVectorShares owner_share_vector(ProtocolContext& ctx, const PlainSparseVector& plain,
                                      std::optional<std::size_t> coord_bits = std::nullopt);
SparseMatrixShares owner_share_matrix(ProtocolContext& ctx, const PlainSparseMatrix& plain,
                                      Orientation orientation,
                                      std::optional<std::size_t> coord_bits = std::nullopt);

// Test-only openings; placeholder tuples are skipped.
PlainSparseVector reconstruct_vector(const SparseVectorShares& v);
PlainSparseMatrix reconstruct_matrix(const SparseMatrixShares& m);
PlainSparseMatrix reconstruct_matrix(const SharedCooMatrix& m);

// Stored field elements per party: one per coordinate bit plus one for the
// value of every tuple.
std::uint64_t storage_cost(const SparseVectorShares& v);
std::uint64_t storage_cost(const SparseMatrixShares& m);
std::uint64_t storage_cost(const SharedCooMatrix& m);
// Same formula from public metadata only.
std::uint64_t sparse_storage_cost(std::uint64_t nnz, std::size_t coord_bits);
std::uint64_t dense_storage_cost(std::size_t rows, std::size_t cols);

}  // namespace sparsempc
