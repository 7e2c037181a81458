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

#include "sparsempc/plain.hpp"
#include "sparsempc/runtime.hpp"
#include "sparsempc/shamir.hpp"

namespace sparsempc {

// Dense secret-shared matrix, one degree-t share per cell, row-major.
struct DenseShares {
  std::size_t rows = 0;
  std::size_t cols = 0;
  ShareVector cells;

  std::size_t size() const { return rows * cols; }
};

DenseShares owner_share_dense(ProtocolContext& ctx, const DenseMatrix& plain);
DenseShares owner_share_dense(ProtocolContext& ctx, const std::vector<double>& column);
DenseMatrix reconstruct_dense(const DenseShares& m);

// Local re-indexing; no communication.
DenseShares transpose(const DenseShares& m);

// Each output cell is a local sum of products followed by one degree
// reduction and one truncation. Both barriers are shared by all cells, so
// the cost depends on the output size only.
ShareVector dense_dot(ProtocolContext& ctx, const DenseShares& x, const DenseShares& y);
DenseShares dense_matvec(ProtocolContext& ctx, const DenseShares& x, const DenseShares& y);
DenseShares dense_matmat(ProtocolContext& ctx, const DenseShares& x, const DenseShares& y);

// Charges the ledger exactly as dense_matmat on (n x m) * (m x p) operands
// would, without computing anything. `resident` is the number of share
// elements held per party when the product starts (default: the live count
// of the context's storage meter).
void plan_dense_matmat(ProtocolContext& ctx, std::size_t n, std::size_t m, std::size_t p,
                       std::optional<std::uint64_t> resident = std::nullopt);

}  // namespace sparsempc
