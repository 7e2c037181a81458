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

#include "sparsempc/propagation.hpp"

#include "sparsempc/errors.hpp"
#include "sparsempc/oblivious.hpp"

namespace sparsempc {
namespace {

using Columns = std::vector<ShareVector>;

Columns gather_all(const Columns& cols, std::span<const std::size_t> idx) {
  Columns out;
  out.reserve(cols.size());
  for (const auto& c : cols) out.push_back(c.gather(idx));
  return out;
}

void scatter_all(Columns& cols, std::span<const std::size_t> idx, const Columns& values) {
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i].scatter(idx, values[i]);
}

Columns identity_columns(const ProtocolContext& ctx, std::span<const Fp> identity, std::size_t count) {
  Columns out;
  for (const auto& e : identity) out.push_back(constant(ctx, count, e));
  return out;
}

// Exclusive prefix combination of the block totals, Blelloch style.
Columns exclusive_tree_scan(ProtocolContext& ctx, Columns totals, std::span<const Fp> identity,
                            const PropagationOp& op) {
  const std::size_t blocks = totals[0].size();
  const std::size_t size = std::size_t{1} << ceil_log2(blocks);
  if (size > blocks) {
    auto pad = identity_columns(ctx, identity, size - blocks);
    for (std::size_t i = 0; i < totals.size(); ++i) totals[i].append(pad[i]);
  }
  // Up-sweep. The root total is never needed, so the last level is skipped.
  for (std::size_t d = 1; 2 * d < size; d <<= 1) {
    std::vector<std::size_t> left, right;
    for (std::size_t i = 2 * d - 1; i < size; i += 2 * d) {
      left.push_back(i - d);
      right.push_back(i);
    }
    scatter_all(totals, right, op(ctx, gather_all(totals, left), gather_all(totals, right)));
  }
  std::vector<std::size_t> root{size - 1};
  scatter_all(totals, root, identity_columns(ctx, identity, 1));
  // Down-sweep: a left child receives its parent's prefix, a right child the
  // parent's prefix combined with the left sibling's total.
  for (std::size_t d = size / 2; d >= 1; d >>= 1) {
    std::vector<std::size_t> left, right;
    for (std::size_t i = 2 * d - 1; i < size; i += 2 * d) {
      left.push_back(i - d);
      right.push_back(i);
    }
    Columns parent = gather_all(totals, right);
    Columns sibling = gather_all(totals, left);
    Columns combined = d == size / 2 ? sibling : op(ctx, parent, sibling);
    scatter_all(totals, left, parent);
    scatter_all(totals, right, combined);
  }
  for (auto& c : totals) c.resize(blocks);
  return totals;
}

}  // namespace

std::vector<ShareVector> recursive_propagation(ProtocolContext& ctx, std::vector<ShareVector> columns,
                                               std::span<const Fp> identity, const PropagationOp& op) {
  if (columns.empty() || columns.size() != identity.size()) {
    throw ShapeError("recursive_propagation: identity arity mismatch");
  }
  const std::size_t n = columns[0].size();
  if (n <= 1) return columns;
  const std::size_t blocks = (n + 3) / 4;
  if (4 * blocks > n) {
    auto pad = identity_columns(ctx, identity, 4 * blocks - n);
    for (std::size_t i = 0; i < columns.size(); ++i) columns[i].append(pad[i]);
  }
  // Local scan inside each leaf block.
  for (std::size_t r = 1; r < 4; ++r) {
    std::vector<std::size_t> prev(blocks), cur(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
      prev[b] = 4 * b + r - 1;
      cur[b] = 4 * b + r;
    }
    scatter_all(columns, cur, op(ctx, gather_all(columns, prev), gather_all(columns, cur)));
  }
  if (blocks > 1) {
    std::vector<std::size_t> last(blocks);
    for (std::size_t b = 0; b < blocks; ++b) last[b] = 4 * b + 3;
    Columns prefix = exclusive_tree_scan(ctx, gather_all(columns, last), identity, op);
    // Block 0 has an empty prefix; every other element combines with its
    // block's prefix.
    std::vector<std::size_t> targets, source;
    for (std::size_t b = 1; b < blocks; ++b) {
      for (std::size_t r = 0; r < 4; ++r) {
        targets.push_back(4 * b + r);
        source.push_back(b);
      }
    }
    scatter_all(columns, targets, op(ctx, gather_all(prefix, source), gather_all(columns, targets)));
  }
  for (auto& c : columns) c.resize(n);
  return columns;
}

std::vector<ShareVector> segmented_sum_op(ProtocolContext& ctx, const std::vector<ShareVector>& left,
                                          const std::vector<ShareVector>& right) {
  const ShareVector& fa = left[0];
  const ShareVector& sa = left[1];
  const ShareVector& fb = right[0];
  const ShareVector& sb = right[1];
  std::vector<ShareVector> lhs{fa, fb}, rhs{fb, sa};
  auto prod = mul_batch(ctx, lhs, rhs);
  return {sub(add(fa, fb), prod[0]), sub(add(sb, sa), prod[1])};
}

std::vector<ShareVector> copy_from_left_op(ProtocolContext& ctx, const std::vector<ShareVector>& left,
                                           const std::vector<ShareVector>& right) {
  const ShareVector& fa = left[0];
  const ShareVector& wa = left[1];
  const ShareVector& fb = right[0];
  const ShareVector& wb = right[1];
  std::vector<ShareVector> lhs{fa, fb}, rhs{fb, sub(wb, wa)};
  auto prod = mul_batch(ctx, lhs, rhs);
  return {sub(add(fa, fb), prod[0]), add(wa, prod[1])};
}

}  // namespace sparsempc
