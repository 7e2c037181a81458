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

#include "sparsempc/dense.hpp"

#include <algorithm>
#include <string>

#include "sparsempc/errors.hpp"
#include "sparsempc/fixed_point.hpp"

namespace sparsempc {
namespace {

void check_inner(const DenseShares& x, const DenseShares& y) {
  if (x.cols != y.rows) {
    throw ShapeError("dense product of " + std::to_string(x.rows) + "x" + std::to_string(x.cols) + " and " +
                     std::to_string(y.rows) + "x" + std::to_string(y.cols));
  }
}

// Degree-2t local sums, reduced and truncated. The degree-2t accumulator is
// released before truncation starts.
DenseShares product(ProtocolContext& ctx, const DenseShares& x, const DenseShares& y) {
  check_inner(x, y);
  const std::size_t n = x.rows, m = x.cols, p = y.cols;
  ShareVector reduced;
  {
    ShareVector acc(ctx, n * p, 2 * ctx.threshold());
    for (std::size_t party = 0; party < ctx.num_parties(); ++party) {
      auto xs = x.cells.party(party);
      auto ys = y.cells.party(party);
      auto out = acc.party(party);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < m; ++k) {
          const Fp& a = xs[i * m + k];
          for (std::size_t j = 0; j < p; ++j) out[i * p + j] += a * ys[k * p + j];
        }
      }
    }
    reduced = reshare(ctx, acc);
  }
  return {n, p, trunc(ctx, reduced)};
}

}  // namespace

DenseShares owner_share_dense(ProtocolContext& ctx, const DenseMatrix& plain) {
  std::vector<Fp> encoded;
  encoded.reserve(plain.data.size());
  for (double v : plain.data) encoded.push_back(fp_encode(v));
  return {plain.rows, plain.cols, share(ctx, encoded)};
}

DenseShares owner_share_dense(ProtocolContext& ctx, const std::vector<double>& column) {
  DenseMatrix m(column.size(), 1);
  m.data = column;
  return owner_share_dense(ctx, m);
}

DenseMatrix reconstruct_dense(const DenseShares& m) {
  DenseMatrix out(m.rows, m.cols);
  auto values = reconstruct(m.cells);
  for (std::size_t i = 0; i < values.size(); ++i) out.data[i] = fp_decode(values[i]);
  return out;
}

DenseShares transpose(const DenseShares& m) {
  std::vector<std::size_t> order;
  order.reserve(m.size());
  for (std::size_t j = 0; j < m.cols; ++j) {
    for (std::size_t i = 0; i < m.rows; ++i) order.push_back(i * m.cols + j);
  }
  return {m.cols, m.rows, m.cells.gather(order)};
}

ShareVector dense_dot(ProtocolContext& ctx, const DenseShares& x, const DenseShares& y) {
  if (x.rows != 1 || y.cols != 1) throw ShapeError("dense_dot expects a row and a column vector");
  return product(ctx, x, y).cells;
}

DenseShares dense_matvec(ProtocolContext& ctx, const DenseShares& x, const DenseShares& y) {
  if (y.cols != 1) throw ShapeError("dense_matvec expects a column vector");
  return product(ctx, x, y);
}

DenseShares dense_matmat(ProtocolContext& ctx, const DenseShares& x, const DenseShares& y) {
  return product(ctx, x, y);
}

void plan_dense_matmat(ProtocolContext& ctx, std::size_t n, std::size_t m, std::size_t p,
                       std::optional<std::uint64_t> resident) {
  (void)m;
  const std::uint64_t cells = static_cast<std::uint64_t>(n) * p;
  if (cells == 0) return;
  const std::uint64_t parties = ctx.num_parties();
  const std::uint64_t dealers = 2 * ctx.threshold() + 1;
  const std::uint64_t live =
      resident.value_or(static_cast<std::uint64_t>(std::max<std::int64_t>(ctx.storage_meter()->live, 0)));
  // Degree reduction: accumulator and output live; every dealer sends to
  // every other party.
  ctx.charge_modeled_barrier(dealers * (parties - 1) * cells, live + 2 * cells);
  // Truncation opening: reduced product, two mask shares and the masked value.
  ctx.charge_modeled_barrier(parties * (parties - 1) * cells, live + 4 * cells);
  ctx.note_opened(cells);
}

}  // namespace sparsempc
