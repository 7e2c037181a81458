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

#include "sparsempc/sparse.hpp"

#include <algorithm>
#include <string>

#include "sparsempc/errors.hpp"
#include "sparsempc/fixed_point.hpp"

namespace sparsempc {
namespace {

std::size_t checked_width(std::size_t dim, std::optional<std::size_t> coord_bits) {
  std::size_t need = coord_width(dim);
  std::size_t width = coord_bits.value_or(need);
  if (width < need) {
    throw RangeError("coordinate width " + std::to_string(width) + " cannot hold dimension " +
                     std::to_string(dim));
  }
  if (width > 63) throw RangeError("coordinate width above 63 bits");
  return width;
}

// Shares coordinate bits and fixed-point values in one upload.
void upload_tuples(ProtocolContext& ctx, std::span<const std::uint64_t> coords,
                   std::span<const double> values, std::size_t width, BitSharedInts& out_coords,
                   ShareVector& out_values) {
  const std::size_t n = coords.size();
  std::vector<Fp> flat((width + 1) * n);
  for (std::size_t b = 0; b < width; ++b) {
    for (std::size_t k = 0; k < n; ++k) flat[b * n + k] = Fp((coords[k] >> b) & 1);
  }
  for (std::size_t k = 0; k < n; ++k) flat[width * n + k] = fp_encode(values[k]);
  ShareVector all = share(ctx, flat);
  std::vector<ShareVector> cols;
  cols.reserve(width);
  for (std::size_t b = 0; b < width; ++b) cols.push_back(all.slice(b * n, n));
  out_coords = width == 0 ? BitSharedInts() : BitSharedInts(std::move(cols));
  out_values = all.slice(width * n, n);
}

std::vector<std::uint64_t> open_coords(const BitSharedInts& bits, std::size_t n) {
  if (bits.width() == 0) return std::vector<std::uint64_t>(n, 0);
  return reconstruct_bits(bits);
}

}  // namespace

std::size_t coord_width(std::size_t dim) { return ceil_log2(dim + 1); }

std::vector<std::uint64_t> SparseMatrixShares::group_of_tuples() const {
  std::vector<std::uint64_t> out;
  out.reserve(nnz());
  for (std::size_t g = 0; g < group_nnz.size(); ++g) out.insert(out.end(), group_nnz[g], g + 1);
  return out;
}

SparseVectorShares SparseMatrixShares::group(std::size_t g) const {
  std::size_t offset = 0;
  for (std::size_t i = 0; i < g; ++i) offset += group_nnz.at(i);
  return {inner_dim(), coords.slice(offset, group_nnz.at(g)), values.slice(offset, group_nnz.at(g))};
}

SparseVectorShares owner_share_vector(ProtocolContext& ctx, const PlainSparseVector& plain,
                                      std::optional<std::size_t> coord_bits) {
  validate(plain);
  const std::size_t width = checked_width(plain.dim, coord_bits);
  std::vector<std::uint64_t> coords;
  std::vector<double> values;
  for (const auto& e : plain.entries) {
    coords.push_back(e.coord);
    values.push_back(e.value);
  }
  SparseVectorShares out;
  out.dim = plain.dim;
  upload_tuples(ctx, coords, values, width, out.coords, out.values);
  return out;
}

SparseMatrixShares owner_share_matrix(ProtocolContext& ctx, const PlainSparseMatrix& plain,
                                      Orientation orientation, std::optional<std::size_t> coord_bits) {
  validate(plain);
  const bool by_row = orientation == Orientation::kRowGrouped;
  const std::size_t width = checked_width(by_row ? plain.cols : plain.rows, coord_bits);
  auto entries = plain.entries;
  std::sort(entries.begin(), entries.end(), [by_row](const PlainEntry& a, const PlainEntry& b) {
    return by_row ? std::tie(a.row, a.col) < std::tie(b.row, b.col)
                  : std::tie(a.col, a.row) < std::tie(b.col, b.row);
  });
  SparseMatrixShares out;
  out.rows = plain.rows;
  out.cols = plain.cols;
  out.orientation = orientation;
  out.group_nnz = by_row ? plain.row_counts() : plain.col_counts();
  std::vector<std::uint64_t> coords;
  std::vector<double> values;
  for (const auto& e : entries) {
    coords.push_back(by_row ? e.col : e.row);
    values.push_back(e.value);
  }
  upload_tuples(ctx, coords, values, width, out.coords, out.values);
  return out;
}

PlainSparseVector reconstruct_vector(const SparseVectorShares& v) {
  PlainSparseVector out{v.dim, {}};
  auto coords = open_coords(v.coords, v.nnz());
  auto values = reconstruct(v.values);
  for (std::size_t k = 0; k < v.nnz(); ++k) {
    if (coords[k] != 0) out.entries.push_back({coords[k], fp_decode(values[k])});
  }
  return out;
}

PlainSparseMatrix reconstruct_matrix(const SparseMatrixShares& m) {
  PlainSparseMatrix out{m.rows, m.cols, {}};
  auto coords = open_coords(m.coords, m.nnz());
  auto groups = m.group_of_tuples();
  auto values = reconstruct(m.values);
  const bool by_row = m.orientation == Orientation::kRowGrouped;
  for (std::size_t k = 0; k < m.nnz(); ++k) {
    if (coords[k] == 0) continue;
    double v = fp_decode(values[k]);
    out.entries.push_back(by_row ? PlainEntry{groups[k], coords[k], v} : PlainEntry{coords[k], groups[k], v});
  }
  return out;
}

PlainSparseMatrix reconstruct_matrix(const SharedCooMatrix& m) {
  PlainSparseMatrix out{m.rows, m.cols, {}};
  auto rows = open_coords(m.row_coords, m.nnz());
  auto cols = open_coords(m.col_coords, m.nnz());
  auto values = reconstruct(m.values);
  for (std::size_t k = 0; k < m.nnz(); ++k) {
    if (rows[k] == 0 && cols[k] == 0) continue;
    out.entries.push_back({rows[k], cols[k], fp_decode(values[k])});
  }
  return out;
}

std::uint64_t sparse_storage_cost(std::uint64_t nnz, std::size_t coord_bits) {
  return nnz * (static_cast<std::uint64_t>(coord_bits) + 1);
}

std::uint64_t dense_storage_cost(std::size_t rows, std::size_t cols) {
  return static_cast<std::uint64_t>(rows) * cols;
}

std::uint64_t storage_cost(const SparseVectorShares& v) { return sparse_storage_cost(v.nnz(), v.coord_bits()); }

std::uint64_t storage_cost(const SparseMatrixShares& m) { return sparse_storage_cost(m.nnz(), m.coord_bits()); }

std::uint64_t storage_cost(const SharedCooMatrix& m) {
  return sparse_storage_cost(m.nnz(), m.row_coords.width() + m.col_coords.width());
}

}  // namespace sparsempc
