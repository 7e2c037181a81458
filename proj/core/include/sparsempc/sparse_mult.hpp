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
#include <optional>
#include <span>

#include "sparsempc/oblivious.hpp"
#include "sparsempc/runtime.hpp"
#include "sparsempc/sparse.hpp"

namespace sparsempc {

// Aggregation and multiplication-loop variants: linear-round sequential
// scans, or logarithmic-round recursive propagation.
enum class Mode { kNaive, kOptimized };

// A list of tuples in flight: a (possibly composite) coordinate key and a
// value. Key 0 is the placeholder.
struct TupleList {
  BitSharedInts coords;
  ShareVector values;

  std::size_t size() const { return values.size(); }
};

// Sum_j x_j * y_j of two sparse vectors of equal dimension and coordinate
// width. Every matching product is truncated before summation.
ShareVector sparse_vec_mult(ProtocolContext& ctx, const SparseVectorShares& x, const SparseVectorShares& y);

// X * y for a row-grouped X (n x m) and a vector y of dimension m. The
// output lists one tuple per non-empty row of X and can hold explicit zeros.
// `row_bits` overrides the width of the output coordinates (default
// coord_width(n)).
SparseVectorShares sparse_matvec(ProtocolContext& ctx, const SparseMatrixShares& x, const SparseVectorShares& y,
                                 Mode mode = Mode::kOptimized, std::optional<std::size_t> row_bits = std::nullopt);

// Given tuples sorted ascending on their key, leaves the sum of every run of
// equal keys in the run's last tuple and sets the key of the other tuples to
// the placeholder. Earlier tuples of a run keep their running partial sums.
// Unsorted input gives meaningless results.
void agg_equal_coord(ProtocolContext& ctx, TupleList& z);       // linear rounds
void agg_equal_coord_opt(ProtocolContext& ctx, TupleList& z);   // logarithmic rounds
void aggregate(ProtocolContext& ctx, TupleList& z, Mode mode);

// Shuffles the list, opens which tuples are placeholders and drops them.
// Only the placeholder count is revealed; it is written to `revealed` if
// given.
TupleList placeholder_removal(ProtocolContext& ctx, TupleList z, std::size_t* revealed = nullptr);

// Multiplication loop of the matrix-vector protocol. Input: the combined
// list sorted on (col, row), where y-tuples carry row 0 and so come first in
// their column. Every X-tuple's value is multiplied by the value of the
// y-tuple in its column, or zeroed if there is none; y-tuples get value 0.
// Products are returned untruncated (raw scale 2^64).
ShareVector mult_loop(ProtocolContext& ctx, const BitSharedInts& col, const BitSharedInts& row,
                      const ShareVector& values, Mode mode);

// X * Y for a column-grouped X (n x m) and a row-grouped Y (m x p). Stage 1
// forms exactly MinMult products, then the list is sorted on (row, col),
// aggregated and cleared of placeholders.
SharedCooMatrix sparse_matmat(ProtocolContext& ctx, const SparseMatrixShares& x, const SparseMatrixShares& y,
                              Mode mode = Mode::kOptimized);

// X^T X for a row-grouped X.
SharedCooMatrix gram(ProtocolContext& ctx, const SparseMatrixShares& x, Mode mode = Mode::kOptimized);

// Sum_k colsX[k] * rowsY[k].
std::uint64_t compute_minmult(std::span<const std::size_t> cols_x, std::span<const std::size_t> rows_y);

}  // namespace sparsempc
