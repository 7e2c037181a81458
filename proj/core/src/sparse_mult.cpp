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

#include "sparsempc/sparse_mult.hpp"

#include <numeric>
#include <string>

#include "sparsempc/errors.hpp"
#include "sparsempc/propagation.hpp"

namespace sparsempc {
namespace {

std::vector<std::size_t> iota_indices(std::size_t begin, std::size_t end) {
  std::vector<std::size_t> idx(end > begin ? end - begin : 0);
  std::iota(idx.begin(), idx.end(), begin);
  return idx;
}

// Bits [begin, begin + count) of a key, as a new integer batch.
BitSharedInts bit_range(const BitSharedInts& key, std::size_t begin, std::size_t count) {
  std::vector<ShareVector> cols(key.columns().begin() + static_cast<std::ptrdiff_t>(begin),
                                key.columns().begin() + static_cast<std::ptrdiff_t>(begin + count));
  return BitSharedInts(std::move(cols));
}

// 1 where key[k] == key[k + 1], for k = 0 .. n - 2.
ShareVector adjacent_equal(ProtocolContext& ctx, const BitSharedInts& key) {
  const std::size_t n = key.size();
  auto lo = iota_indices(0, n - 1), hi = iota_indices(1, n);
  return eq_bits(ctx, key.gather(lo), key.gather(hi));
}

// Multiplies every key bit by `keep` (0 turns the key into the placeholder).
void mask_key(ProtocolContext& ctx, BitSharedInts& key, const ShareVector& keep,
              std::span<const std::size_t> positions) {
  std::vector<ShareVector> conds(key.width(), keep), bits;
  bits.reserve(key.width());
  for (const auto& b : key.columns()) bits.push_back(b.gather(positions));
  auto masked = mul_batch(ctx, conds, bits);
  for (std::size_t i = 0; i < key.width(); ++i) key.bit(i).scatter(positions, masked[i]);
}

void sort_tuples(ProtocolContext& ctx, TupleList& z) {
  std::vector<ShareVector> payload{std::move(z.values)};
  batcher_sort(ctx, z.coords, payload);
  z.values = std::move(payload[0]);
}

// Segment-start flags from "same as previous" flags: f_0 = 1.
ShareVector segment_starts(const ProtocolContext& ctx, const ShareVector& same_prev) {
  ShareVector f = constant(ctx, 1, Fp(1));
  f.append(public_minus(Fp(1), same_prev));
  return f;
}

}  // namespace

ShareVector sparse_vec_mult(ProtocolContext& ctx, const SparseVectorShares& x, const SparseVectorShares& y) {
  if (x.dim != y.dim) throw ShapeError("sparse_vec_mult: dimension mismatch");
  if (x.coord_bits() != y.coord_bits() && x.nnz() > 0 && y.nnz() > 0) {
    throw ShapeError("sparse_vec_mult: coordinate width mismatch");
  }
  TupleList z;
  z.coords = x.coords;
  z.coords.append(y.coords);
  z.values = concat(x.values, y.values);
  if (z.size() < 2) return constant(ctx, 1, Fp(0));
  sort_tuples(ctx, z);
  const std::size_t n = z.size();
  ShareVector eq = adjacent_equal(ctx, z.coords);
  ShareVector products =
      trunc(ctx, mul(ctx, z.values.slice(0, n - 1), z.values.slice(1, n - 1)));
  return inner_product(ctx, eq, products);
}

// ---- multiplication loop ----------------------------------------------------

namespace {

// Sequential loop: one tuple per step, carrying the last seen y-tuple forward.
ShareVector mult_loop_naive(ProtocolContext& ctx, const BitSharedInts& col, const ShareVector& is_y,
                            const ShareVector& values) {
  const std::size_t n = values.size();
  BitSharedInts prev_col(ctx, 1, col.width());  // starts as the placeholder
  ShareVector prev_val = constant(ctx, 1, Fp(0));
  ShareVector match(ctx, n, ctx.threshold()), product(ctx, n, ctx.threshold());
  for (std::size_t k = 0; k < n; ++k) {
    BitSharedInts cur_col = col.slice(k, 1);
    ShareVector cur_val = values.slice(k, 1);
    ShareVector cur_y = is_y.slice(k, 1);
    ShareVector same = eq_bits(ctx, cur_col, prev_col);

    // One barrier: the product with the carried value, the match flag and the
    // carried tuple update (which keeps the y value before it is cleared).
    std::vector<ShareVector> lhs{cur_val, same}, rhs{prev_val, public_minus(Fp(1), cur_y)};
    for (std::size_t b = 0; b < col.width(); ++b) {
      lhs.push_back(cur_y);
      rhs.push_back(sub(cur_col.bit(b), prev_col.bit(b)));
    }
    lhs.push_back(cur_y);
    rhs.push_back(sub(cur_val, prev_val));
    auto prod = mul_batch(ctx, lhs, rhs);

    std::vector<std::size_t> at{k};
    product.scatter(at, prod[0]);
    match.scatter(at, prod[1]);
    for (std::size_t b = 0; b < col.width(); ++b) prev_col.bit(b) = add(prev_col.bit(b), prod[2 + b]);
    prev_val = add(prev_val, prod.back());
  }
  return mul(ctx, match, product);
}

// Scan form: every tuple takes the w of its column's first tuple, where w is
// the value of y-tuples and 0 otherwise.
ShareVector mult_loop_optimized(ProtocolContext& ctx, const BitSharedInts& col, const ShareVector& is_y,
                                const ShareVector& values) {
  const std::size_t n = values.size();
  ShareVector starts = n > 1 ? segment_starts(ctx, adjacent_equal(ctx, col)) : constant(ctx, 1, Fp(1));
  std::vector<ShareVector> lhs{is_y, public_minus(Fp(1), is_y)}, rhs{values, values};
  auto wu = mul_batch(ctx, lhs, rhs);
  const std::vector<Fp> identity{Fp(0), Fp(0)};
  auto scanned = recursive_propagation(ctx, {starts, wu[0]}, identity, copy_from_left_op);
  return mul(ctx, wu[1], scanned[1]);
}

}  // namespace

ShareVector mult_loop(ProtocolContext& ctx, const BitSharedInts& col, const BitSharedInts& row,
                      const ShareVector& values, Mode mode) {
  if (col.size() != values.size() || row.size() != values.size()) {
    throw ShapeError("mult_loop: column lengths differ");
  }
  if (values.empty()) return values;
  ShareVector is_y = is_zero_bits(ctx, row);
  return mode == Mode::kNaive ? mult_loop_naive(ctx, col, is_y, values)
                              : mult_loop_optimized(ctx, col, is_y, values);
}

// ---- aggregation ------------------------------------------------------------

void agg_equal_coord(ProtocolContext& ctx, TupleList& z) {
  const std::size_t n = z.size();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::vector<std::size_t> here{k}, next{k + 1};
    ShareVector same = eq_bits(ctx, z.coords.gather(here), z.coords.gather(next));
    // One barrier: carry the value forward and clear this key on a match.
    ShareVector keep = public_minus(Fp(1), same);
    std::vector<ShareVector> lhs{same}, rhs{z.values.gather(here)};
    for (const auto& b : z.coords.columns()) {
      lhs.push_back(keep);
      rhs.push_back(b.gather(here));
    }
    auto prod = mul_batch(ctx, lhs, rhs);
    z.values.scatter(next, add(z.values.gather(next), prod[0]));
    for (std::size_t b = 0; b < z.coords.width(); ++b) z.coords.bit(b).scatter(here, prod[1 + b]);
  }
}

void agg_equal_coord_opt(ProtocolContext& ctx, TupleList& z) {
  const std::size_t n = z.size();
  if (n < 2) return;
  ShareVector same_next = adjacent_equal(ctx, z.coords);
  ShareVector starts = segment_starts(ctx, same_next);
  const std::vector<Fp> identity{Fp(0), Fp(0)};
  auto scanned = recursive_propagation(ctx, {starts, z.values}, identity, segmented_sum_op);
  z.values = std::move(scanned[1]);
  mask_key(ctx, z.coords, public_minus(Fp(1), same_next), iota_indices(0, n - 1));
}

void aggregate(ProtocolContext& ctx, TupleList& z, Mode mode) {
  if (mode == Mode::kNaive) {
    agg_equal_coord(ctx, z);
  } else {
    agg_equal_coord_opt(ctx, z);
  }
}

TupleList placeholder_removal(ProtocolContext& ctx, TupleList z, std::size_t* revealed) {
  std::vector<ShareVector> cols{std::move(z.values)};
  shuffle(ctx, cols, &z.coords);
  z.values = std::move(cols[0]);
  auto placeholder = reveal_flags(ctx, is_zero_bits(ctx, z.coords));
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < placeholder.size(); ++k) {
    if (!placeholder[k]) keep.push_back(k);
  }
  if (revealed != nullptr) *revealed = placeholder.size() - keep.size();
  return {z.coords.gather(keep), z.values.gather(keep)};
}

// ---- matrix products ----------------------------------------------------------

SparseVectorShares sparse_matvec(ProtocolContext& ctx, const SparseMatrixShares& x, const SparseVectorShares& y,
                                 Mode mode, std::optional<std::size_t> row_bits) {
  if (x.orientation != Orientation::kRowGrouped) throw ShapeError("sparse_matvec: X must be row-grouped");
  if (x.cols != y.dim) throw ShapeError("sparse_matvec: inner dimension mismatch");
  const std::size_t rw = row_bits.value_or(coord_width(x.rows));
  if (rw < coord_width(x.rows)) throw RangeError("sparse_matvec: row width cannot hold the row count");
  SparseVectorShares out;
  out.dim = x.rows;
  if (x.nnz() == 0 || y.nnz() == 0) {
    out.coords = BitSharedInts(ctx, 0, rw);
    out.values = ShareVector(ctx, 0, ctx.threshold());
    return out;
  }
  if (x.coord_bits() != y.coord_bits()) throw ShapeError("sparse_matvec: coordinate width mismatch");
  const std::size_t cw = y.coord_bits();

  // y-tuples (row = placeholder, col j) followed by X-tuples (public row i, col j).
  std::vector<std::uint64_t> rows(y.nnz(), 0);
  auto groups = x.group_of_tuples();
  rows.insert(rows.end(), groups.begin(), groups.end());
  BitSharedInts row = constant_bits(ctx, rows, rw);
  BitSharedInts col = y.coords;
  col.append(x.coords);
  std::vector<BitSharedInts> parts{std::move(col), std::move(row)};
  TupleList z{composite_key(parts), concat(y.values, x.values)};
  parts.clear();

  sort_tuples(ctx, z);
  BitSharedInts sorted_row = bit_range(z.coords, 0, rw);
  BitSharedInts sorted_col = bit_range(z.coords, rw, cw);
  ShareVector products = trunc(ctx, mult_loop(ctx, sorted_col, sorted_row, z.values, mode));

  // Drop the column coordinate and aggregate per row.
  TupleList per_row{std::move(sorted_row), std::move(products)};
  sorted_col = BitSharedInts();
  z = TupleList();
  sort_tuples(ctx, per_row);
  aggregate(ctx, per_row, mode);
  TupleList compact = placeholder_removal(ctx, std::move(per_row));
  out.coords = std::move(compact.coords);
  out.values = std::move(compact.values);
  return out;
}

SharedCooMatrix sparse_matmat(ProtocolContext& ctx, const SparseMatrixShares& x, const SparseMatrixShares& y,
                              Mode mode) {
  if (x.orientation != Orientation::kColumnGrouped) throw ShapeError("sparse_matmat: X must be column-grouped");
  if (y.orientation != Orientation::kRowGrouped) throw ShapeError("sparse_matmat: Y must be row-grouped");
  if (x.cols != y.rows) throw ShapeError("sparse_matmat: inner dimension mismatch");
  SharedCooMatrix out;
  out.rows = x.rows;
  out.cols = y.cols;
  const std::size_t rw = x.coord_bits(), cw = y.coord_bits();

  // Stage 1: every pair of tuples sharing the inner index k.
  std::vector<std::size_t> xi, yi;
  std::size_t xoff = 0, yoff = 0;
  for (std::size_t k = 0; k < x.cols; ++k) {
    for (std::size_t a = 0; a < x.group_nnz[k]; ++a) {
      for (std::size_t b = 0; b < y.group_nnz[k]; ++b) {
        xi.push_back(xoff + a);
        yi.push_back(yoff + b);
      }
    }
    xoff += x.group_nnz[k];
    yoff += y.group_nnz[k];
  }
  if (xi.empty()) {
    out.row_coords = BitSharedInts(ctx, 0, rw);
    out.col_coords = BitSharedInts(ctx, 0, cw);
    out.values = ShareVector(ctx, 0, ctx.threshold());
    return out;
  }
  ShareVector products = fp_mul(ctx, x.values.gather(xi), y.values.gather(yi));
  std::vector<BitSharedInts> parts{x.coords.gather(xi), y.coords.gather(yi)};
  TupleList z{composite_key(parts), std::move(products)};
  parts.clear();

  sort_tuples(ctx, z);
  aggregate(ctx, z, mode);
  TupleList compact = placeholder_removal(ctx, std::move(z));
  out.col_coords = bit_range(compact.coords, 0, cw);
  out.row_coords = bit_range(compact.coords, cw, rw);
  out.values = std::move(compact.values);
  return out;
}

SharedCooMatrix gram(ProtocolContext& ctx, const SparseMatrixShares& x, Mode mode) {
  if (x.orientation != Orientation::kRowGrouped) throw ShapeError("gram: X must be row-grouped");
  // A row-grouped X is X^T grouped by columns.
  SparseMatrixShares xt;
  xt.rows = x.cols;
  xt.cols = x.rows;
  xt.orientation = Orientation::kColumnGrouped;
  xt.group_nnz = x.group_nnz;
  xt.coords = x.coords;
  xt.values = x.values;
  return sparse_matmat(ctx, xt, x, mode);
}

std::uint64_t compute_minmult(std::span<const std::size_t> cols_x, std::span<const std::size_t> rows_y) {
  if (cols_x.size() != rows_y.size()) throw ShapeError("compute_minmult: length mismatch");
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < cols_x.size(); ++k) total += static_cast<std::uint64_t>(cols_x[k]) * rows_y[k];
  return total;
}

}  // namespace sparsempc
