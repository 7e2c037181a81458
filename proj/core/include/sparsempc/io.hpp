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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sparsempc/plain.hpp"

namespace sparsempc {

// Triplet CSV: header `row,col,value`, then one `row,col,value` line per
// non-zero with 1-indexed integer coordinates. Dimensions default to the
// largest coordinates seen. Throws ParseError (with the line number) on
// malformed lines, duplicates, or coordinates beyond explicit dimensions.
PlainSparseMatrix ingest_triplets(const std::filesystem::path& path,
                                  std::optional<std::size_t> rows = std::nullopt,
                                  std::optional<std::size_t> cols = std::nullopt);
PlainSparseMatrix parse_triplets(std::istream& in, std::optional<std::size_t> rows = std::nullopt,
                                 std::optional<std::size_t> cols = std::nullopt);
void write_triplets(const std::filesystem::path& path, const PlainSparseMatrix& m);
void write_triplets(std::ostream& out, const PlainSparseMatrix& m);

// One non-negative integer per line; blank lines are not allowed except a
// trailing one.
std::vector<std::size_t> ingest_nnz_counts(const std::filesystem::path& path);
std::vector<std::size_t> parse_nnz_counts(std::istream& in);
void write_nnz_counts(std::ostream& out, const std::vector<std::size_t>& counts);

}  // namespace sparsempc
