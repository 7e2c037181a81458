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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "sparsempc/knowledge.hpp"
#include "sparsempc/plain.hpp"
#include "sparsempc/runtime.hpp"
#include "sparsempc/sparse_mult.hpp"

namespace sparsempc::tools {

// A table with a header row; every cell is already formatted.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
  // Index of a header column; throws std::out_of_range if absent.
  std::size_t column(const std::string& name) const;
  void write(std::ostream& out) const;
};

// Shortest round-trip decimal form.
std::string fmt(double v);
std::string fmt(std::uint64_t v);

struct ScenarioConfig {
  std::string name;
  std::size_t n = 100;                  // fixed row count (matmat)
  std::vector<std::size_t> sizes;       // swept dimension m
  std::vector<double> sparsities;       // fraction of zero cells, in (0, 1)
  std::uint64_t seed = 1;
  std::size_t parties = 3;
  std::size_t threshold = 1;
  Mode mode = Mode::kOptimized;
  // Dense products with more output-times-inner cells than this use the
  // cost-only route.
  std::uint64_t dense_measure_limit = std::uint64_t{1} << 22;
  // Public coordinate width; 0 picks coord_width of each size. Pinning it
  // makes sparse costs comparable across sizes.
  std::size_t coord_bits = 0;
  // Matrix-vector only: exact nnz of both X and y instead of the sparsity
  // levels, so sparse costs stay fixed while m grows.
  std::uint64_t fixed_nnz = 0;
};

// Throws ConfigError on empty sweeps, sparsities outside (0, 1), zero
// dimensions, sizes above 2^20, invalid party counts, a coordinate width too
// narrow for the sizes or a fixed nnz larger than the smallest size.
void validate(const ScenarioConfig& cfg);

// Matrix with exactly `nnz` non-zeros at uniformly random cells.
PlainSparseMatrix random_sparse_exact(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::uint64_t nnz);
// Vector with exactly `nnz` non-zeros.
PlainSparseVector random_vector_exact(std::mt19937_64& rng, std::size_t dim, std::uint64_t nnz);
// round((1 - sparsity) * cells), at least 1.
std::uint64_t nnz_for(double sparsity, std::uint64_t cells);

// Square m x m matrix times a vector, dense and sparse, at every size and
// sparsity. Columns: m, sparsity, algo, nnz, elements_sent, bytes, rounds,
// peak_storage, route.
CsvTable run_matvec_sweep(const ScenarioConfig& cfg);

// X^T X for an n x m matrix X. Columns: n, m, sparsity, algo, nnz, minmult,
// elements_sent, bytes, rounds, peak_storage, route.
CsvTable run_matmat_sweep(const ScenarioConfig& cfg);

struct DegreeDataset {
  std::string name;
  std::vector<std::size_t> row_degrees;
  std::size_t cols = 0;
};

// Storage of one dataset under every public-knowledge technique. Columns:
// dataset, technique, storage_elements.
CsvTable run_overhead_compare(const std::vector<DegreeDataset>& datasets);

struct DpCurveConfig {
  std::vector<double> epsilons{0.01};
  double delta = 1e-6;
  std::vector<std::size_t> block_sizes{16, 64, 256};
  std::uint64_t seed = 1;
  double noise_scale = 1.0;
};

// Thresholds t_i = 1 + (i - 1) * b for degree blocks of width b, padded to
// a power-of-two count. Columns: epsilon, delta, block_size, l, i,
// threshold, fhat, bound, offset.
CsvTable run_dp_curves(const Ecdf& ecdf, const DpCurveConfig& cfg);

struct PopCurveConfig {
  PowerLawParams law;
  std::size_t rows = 10000;
  std::vector<double> lambdas{5, 10, 20};
  std::size_t sample_size = 0;  // 0: no sample-variant column values
};

// Population tail bound per degree. Columns: degree, tail, lambda,
// population_bound, sample_bound.
CsvTable run_popbound_curves(const PopCurveConfig& cfg);

// Power-law matrix written as a triplet CSV.
PlainSparseMatrix generate(const PowerLawParams& law, std::size_t rows, std::size_t cols, std::uint64_t seed,
                           const std::filesystem::path& out);

struct QuantileTemplateResult {
  std::vector<std::uint64_t> approx;
  std::vector<double> alphas;
  Template result;
  CostLedger ledger;
};

// Every owner shares its per-row counts; the approximate template is the
// MPC quantile of the union, then the owners' scaling factors are maxed.
QuantileTemplateResult run_quantile_template(const std::vector<std::vector<std::size_t>>& owners,
                                             const ScenarioConfig& cfg);

}  // namespace sparsempc::tools
