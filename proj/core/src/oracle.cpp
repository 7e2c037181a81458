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

#include "sparsempc/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

#include "sparsempc/errors.hpp"

namespace sparsempc {

double oracle_dot(const PlainSparseVector& x, const PlainSparseVector& y) {
  if (x.dim != y.dim) throw ShapeError("oracle_dot: dimension mismatch");
  std::unordered_map<std::uint64_t, double> index;
  for (const auto& e : x.entries) index[e.coord] += e.value;
  double acc = 0.0;
  for (const auto& e : y.entries) {
    auto it = index.find(e.coord);
    if (it != index.end()) acc += it->second * e.value;
  }
  return acc;
}

double oracle_dot(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ShapeError("oracle_dot: length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

std::vector<double> oracle_matvec(const PlainSparseMatrix& x, const PlainSparseVector& y) {
  if (x.cols != y.dim) throw ShapeError("oracle_matvec: dimension mismatch");
  std::unordered_map<std::uint64_t, double> yv;
  for (const auto& e : y.entries) yv[e.coord] += e.value;
  std::vector<double> out(x.rows, 0.0);
  for (const auto& e : x.entries) {
    auto it = yv.find(e.col);
    if (it != yv.end()) out[e.row - 1] += e.value * it->second;
  }
  return out;
}

std::vector<double> oracle_matvec(const DenseMatrix& x, const std::vector<double>& y) {
  if (x.cols != y.size()) throw ShapeError("oracle_matvec: dimension mismatch");
  std::vector<double> out(x.rows, 0.0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t j = 0; j < x.cols; ++j) out[i] += x.at(i, j) * y[j];
  }
  return out;
}

PlainSparseMatrix oracle_matmul(const PlainSparseMatrix& x, const PlainSparseMatrix& y) {
  if (x.cols != y.rows) throw ShapeError("oracle_matmul: inner dimension mismatch");
  std::multimap<std::uint64_t, const PlainEntry*> y_rows;
  for (const auto& e : y.entries) y_rows.emplace(e.row, &e);
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> acc;
  for (const auto& a : x.entries) {
    auto [lo, hi] = y_rows.equal_range(a.col);
    for (auto it = lo; it != hi; ++it) acc[{a.row, it->second->col}] += a.value * it->second->value;
  }
  PlainSparseMatrix out{x.rows, y.cols, {}};
  for (const auto& [rc, v] : acc) out.entries.push_back({rc.first, rc.second, v});
  return out;
}

DenseMatrix oracle_matmul(const DenseMatrix& x, const DenseMatrix& y) {
  if (x.cols != y.rows) throw ShapeError("oracle_matmul: inner dimension mismatch");
  DenseMatrix out(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t k = 0; k < x.cols; ++k) {
      double a = x.at(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) out.at(i, j) += a * y.at(k, j);
    }
  }
  return out;
}

std::vector<std::pair<std::uint64_t, double>> oracle_groupby_sum(
    const std::vector<std::pair<std::uint64_t, double>>& sorted) {
  std::vector<std::pair<std::uint64_t, double>> out;
  for (const auto& [k, v] : sorted) {
    if (!out.empty() && out.back().first == k) {
      out.back().second += v;
    } else {
      out.emplace_back(k, v);
    }
  }
  return out;
}

std::vector<std::uint64_t> oracle_order_statistics(std::vector<std::uint64_t> values,
                                                   const std::vector<std::size_t>& positions) {
  std::sort(values.begin(), values.end());
  std::vector<std::uint64_t> out;
  for (auto p : positions) {
    if (p < 1 || p > values.size()) throw RangeError("order statistic position out of range");
    out.push_back(values[p - 1]);
  }
  return out;
}

bool oracle_fits_by_assignment(std::vector<std::size_t> degrees,
                               std::vector<std::pair<std::size_t, std::size_t>> blocks) {
  std::vector<std::size_t> slots;
  for (const auto& [count, bound] : blocks) slots.insert(slots.end(), count, bound);
  if (slots.size() < degrees.size()) return false;
  std::sort(degrees.begin(), degrees.end(), std::greater<>());
  std::sort(slots.begin(), slots.end(), std::greater<>());
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] > slots[i]) return false;
  }
  return true;
}

}  // namespace sparsempc
