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
#include <utility>
#include <vector>

#include "sparsempc/plain.hpp"

// Plaintext reference implementations in double precision. The sparse and
// dense paths are written independently so each can check the other.
namespace sparsempc {

double oracle_dot(const PlainSparseVector& x, const PlainSparseVector& y);
double oracle_dot(const std::vector<double>& x, const std::vector<double>& y);

// Dense result of length X.rows.
std::vector<double> oracle_matvec(const PlainSparseMatrix& x, const PlainSparseVector& y);
std::vector<double> oracle_matvec(const DenseMatrix& x, const std::vector<double>& y);

PlainSparseMatrix oracle_matmul(const PlainSparseMatrix& x, const PlainSparseMatrix& y);
DenseMatrix oracle_matmul(const DenseMatrix& x, const DenseMatrix& y);

// One tuple per distinct key of a key-sorted list, values summed.
std::vector<std::pair<std::uint64_t, double>> oracle_groupby_sum(
    const std::vector<std::pair<std::uint64_t, double>>& sorted);

// Elements at the 1-indexed positions of the ascending order of `values`.
std::vector<std::uint64_t> oracle_order_statistics(std::vector<std::uint64_t> values,
                                                   const std::vector<std::size_t>& positions);

// Whether rows with the given degrees can be assigned to template blocks
// (count, bound) so that no block receives more rows than its count and
// every row's degree is at most its block's bound. Greedy matching of the
// largest degrees to the largest bounds.
bool oracle_fits_by_assignment(std::vector<std::size_t> degrees,
                               std::vector<std::pair<std::size_t, std::size_t>> blocks);

}  // namespace sparsempc
