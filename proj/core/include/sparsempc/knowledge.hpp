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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sparsempc/oblivious.hpp"
#include "sparsempc/plain.hpp"
#include "sparsempc/runtime.hpp"

namespace sparsempc {

// ---- templates -------------------------------------------------------------

struct TemplateBlock {
  std::size_t rows = 0;   // n_k
  std::size_t bound = 0;  // per-row non-zero bound of the block
  friend bool operator==(const TemplateBlock&, const TemplateBlock&) = default;
};

// Blocks ordered by non-decreasing bound.
struct Template {
  std::vector<TemplateBlock> blocks;
  std::string source = "quantile";  // quantile | dp | population | max-pad

  std::size_t total_rows() const;
  std::vector<std::size_t> bounds() const;
  friend bool operator==(const Template&, const Template&) = default;
};

// Rows per quantile used by templating.
inline constexpr std::array<double, 6> kTemplateQuantiles{0.25, 0.5, 0.75, 0.9, 0.99, 1.0};

// 1-indexed ascending positions floor(q * n), clamped to [1, n].
std::vector<std::size_t> quantile_positions(std::size_t n, std::span<const double> quantiles = kTemplateQuantiles);

// Empirical tail counts: count_at_least[k] rows have at least degrees[k]
// non-zeros. degrees is ascending and distinct.
struct Ecdf {
  std::vector<std::size_t> degrees;
  std::vector<std::size_t> count_at_least;
  std::size_t total = 0;

  // F(d) for any d: rows with at least d non-zeros.
  std::size_t at_least(std::size_t d) const;
  std::size_t max_degree() const { return degrees.empty() ? 0 : degrees.back(); }
};

Ecdf make_ecdf(std::span<const std::size_t> row_degrees);

// Element at a 1-indexed position of the ascending degree order.
std::size_t ecdf_order_statistic(const Ecdf& ecdf, std::size_t position);

// Six blocks: bound_k is the degree at position floor(q_k n), block sizes
// are the gaps between consecutive positions.
Template build_template_quantiles(const Ecdf& ecdf);

// For every block i: F(bound_i + 1) <= rows in blocks after i. Throws
// ShapeError if the template and the ECDF disagree on the row count.
bool template_fits(const Ecdf& ecdf, const Template& t);

// Stored elements of a padded matrix with the given coordinate width.
std::uint64_t template_storage_cost(const Template& t, std::size_t coord_bits);

// ---- padding ---------------------------------------------------------------

// Every row padded to exactly `bound` tuples with zero-valued dummies at the
// row's lowest-index zero cells. Throws RangeError if some row has more than
// `bound` non-zeros and ShapeError if a row lacks enough zero cells.
PlainSparseMatrix max_row_pad(const PlainSparseMatrix& rows, std::size_t bound);

struct PaddedMatrix {
  PlainSparseMatrix matrix;
  // origin[r] is the 1-based input row placed at output row r + 1.
  std::vector<std::size_t> origin;
};

// Rows sorted by increasing non-zero count (stable), the first n_1 padded to
// bound_1 and so on. Throws RangeError if the rows do not fit.
PaddedMatrix pad_to_template(const PlainSparseMatrix& rows, const Template& t);

// ---- MPC template construction ---------------------------------------------

// Sorts the shared per-row counts and opens the six quantile positions.
// Only those six values are revealed. Throws ConfigError on empty input.
std::vector<std::uint64_t> mpc_quantile_template(ProtocolContext& ctx, const BitSharedInts& counts);

// Bit width used for fixed-point scaling factors (factors below 2^16).
inline constexpr std::size_t kAlphaBits = 48;

// Scaling factor of one data owner: the smallest alpha >= 1 with
// degree <= alpha * approx[k] for every one of its rows, where rows are
// assigned to blocks by the owner's own quantile positions.
double owner_scaling_factor(std::span<const std::size_t> degrees, std::span<const std::uint64_t> approx);

// Owner-side sharing of scaling factors as 32-fractional-bit integers.
BitSharedInts share_scaling_factors(ProtocolContext& ctx, std::span<const double> alphas);

// Opens the maximum alpha and returns ceil(alpha * approx[k]) for every k.
// Throws RangeError if the opened maximum is below one.
std::vector<std::size_t> mpc_scaling_factor(ProtocolContext& ctx, const BitSharedInts& alphas,
                                            std::span<const std::uint64_t> approx);

// ---- differential privacy --------------------------------------------------

struct DpParams {
  double epsilon = 1.0;
  double delta = 0.05;
  std::size_t l = 1;  // thresholds, a power of two

  std::size_t levels() const;  // L = log2 l
};

// Laplace(0, b) sample.
double sample_laplace(std::mt19937_64& rng, double b);

// y - log(2 delta) / epsilon + Lap(1/epsilon); at least y with probability
// 1 - delta. `noise_scale` multiplies the noise (0 gives the offset only).
double dp_single_upper(double y, double epsilon, double delta, std::mt19937_64& rng, double noise_scale = 1.0);

// Offset L(L+1)/eps * log(L(L+1) / (2 delta)) of the tree mechanism.
double dp_tree_offset(const DpParams& params);

// Upper bounds for l tail counts with tree-correlated Laplace((L+1)/eps)
// noise: output i (1-based) adds eta[j][floor((i-1)/2^j)] for j < L.
std::vector<double> dp_tree_upper(std::span<const double> counts, const DpParams& params, std::mt19937_64& rng,
                                  double noise_scale = 1.0);

// ---- population distribution -----------------------------------------------

// F + lambda * sqrt(F(1 - F) / n), clamped to [0, 1].
double pop_dist_upper(double tail, std::size_t n, double lambda);
// p + lambda * sqrt(p(1 - p) / (s - 1)), clamped to [0, 1].
double pop_dist_upper_sample(double p, std::size_t s, double lambda);

// ---- power-law synthesis ---------------------------------------------------

struct PowerLawParams {
  double gamma = 2.5;
  std::size_t max_degree = 1;
};

// Z(gamma, m) = sum_{i=1..m} i^-gamma.
double powerlaw_normalizer(const PowerLawParams& p);
// E[d^k] under the truncated law.
double powerlaw_moment(const PowerLawParams& p, int k);

// Row degrees drawn from the truncated law (capped at `cols`), coordinates
// uniform without replacement, values uniform in [0.5, 1.5).
PlainSparseMatrix sample_powerlaw(const PowerLawParams& params, std::size_t rows, std::size_t cols,
                                  std::mt19937_64& rng);

// ---- files -----------------------------------------------------------------

// CSV `degree,count_at_least`.
void write_ecdf(std::ostream& out, const Ecdf& ecdf);
Ecdf parse_ecdf(std::istream& in);

// JSON {"total_rows", "source", "blocks": [{"rows", "bound"}]}.
void write_template(std::ostream& out, const Template& t);
Template parse_template(std::istream& in);
void save_template(const std::filesystem::path& path, const Template& t);
Template load_template(const std::filesystem::path& path);

}  // namespace sparsempc
