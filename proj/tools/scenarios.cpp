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

#include "scenarios.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>

#include "sparsempc/dense.hpp"
#include "sparsempc/errors.hpp"
#include "sparsempc/io.hpp"
#include "sparsempc/sparse.hpp"

namespace sparsempc::tools {
namespace {

struct Measured {
  CostLedger delta;
  std::uint64_t peak = 0;
  std::string route;
};

std::vector<std::string> ledger_cells(const Measured& m) {
  return {fmt(m.delta.elements_sent), fmt(m.delta.bytes_sent), fmt(m.delta.rounds), fmt(m.peak), m.route};
}

Measured finish(const ProtocolContext& ctx, const CostLedger& before, std::string route) {
  auto after = ctx.ledger_snapshot();
  return {ledger_delta(after, before), after.peak_stored_elements, std::move(route)};
}

// Measured when small enough, otherwise charged from the cost model with the
// operands counted as resident.
Measured dense_product_cost(const ScenarioConfig& cfg, std::size_t n, std::size_t m, std::size_t p,
                            bool transpose_of_left, std::uint64_t seed) {
  auto ctx = ProtocolContext::spawn(cfg.parties, cfg.threshold, seed);
  const std::uint64_t work = static_cast<std::uint64_t>(n) * m * p;
  if (work <= cfg.dense_measure_limit) {
    if (transpose_of_left) {
      // Gram: X is m x p, the left operand is its transpose.
      auto x = owner_share_dense(ctx, DenseMatrix(m, p));
      auto xt = transpose(x);
      auto before = ctx.ledger_snapshot();
      dense_matmat(ctx, xt, x);
      return finish(ctx, before, "measured");
    }
    auto x = owner_share_dense(ctx, DenseMatrix(n, m));
    auto y = owner_share_dense(ctx, DenseMatrix(m, p));
    auto before = ctx.ledger_snapshot();
    dense_matmat(ctx, x, y);
    return finish(ctx, before, "measured");
  }
  const std::uint64_t resident =
      transpose_of_left ? 2 * static_cast<std::uint64_t>(m) * p : static_cast<std::uint64_t>(n) * m + m * p;
  auto before = ctx.ledger_snapshot();
  plan_dense_matmat(ctx, n, m, p, resident);
  return finish(ctx, before, "planned");
}

}  // namespace

void CsvTable::add(std::vector<std::string> row) {
  if (row.size() != header.size()) throw std::logic_error("CSV row width differs from header");
  rows.push_back(std::move(row));
}

std::size_t CsvTable::column(const std::string& name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("no CSV column " + name);
  return static_cast<std::size_t>(it - header.begin());
}

void CsvTable::write(std::ostream& out) const {
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

std::string fmt(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string fmt(std::uint64_t v) { return std::to_string(v); }

void validate(const ScenarioConfig& cfg) {
  if (cfg.sizes.empty()) throw ConfigError("no sizes given");
  if (cfg.sparsities.empty()) throw ConfigError("no sparsity levels given");
  for (auto s : cfg.sparsities) {
    if (!(s > 0 && s < 1)) throw ConfigError("sparsity must lie in (0, 1), got " + fmt(s));
  }
  for (auto m : cfg.sizes) {
    if (m < 1 || m > (std::size_t{1} << 20)) throw ConfigError("size out of range: " + std::to_string(m));
  }
  if (cfg.n < 1) throw ConfigError("row count must be positive");
  const std::size_t largest = *std::max_element(cfg.sizes.begin(), cfg.sizes.end());
  if (cfg.coord_bits != 0 && cfg.coord_bits < coord_width(largest)) {
    throw ConfigError("coordinate width " + std::to_string(cfg.coord_bits) + " cannot hold size " +
                      std::to_string(largest));
  }
  if (cfg.fixed_nnz > *std::min_element(cfg.sizes.begin(), cfg.sizes.end())) {
    throw ConfigError("fixed nnz exceeds the smallest size");
  }
  if (cfg.parties < 3 || cfg.threshold < 1 || 2 * cfg.threshold >= cfg.parties) {
    throw ConfigError("need parties >= 3 and 1 <= threshold < parties / 2");
  }
}

std::uint64_t nnz_for(double sparsity, std::uint64_t cells) {
  auto v = static_cast<std::uint64_t>(std::llround((1.0 - sparsity) * static_cast<double>(cells)));
  return std::clamp<std::uint64_t>(v, 1, cells);
}

PlainSparseMatrix random_sparse_exact(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::uint64_t nnz) {
  const std::uint64_t cells = static_cast<std::uint64_t>(rows) * cols;
  if (nnz > cells) throw ConfigError("more non-zeros than cells");
  // Floyd's algorithm over linear cell indices.
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = cells - nnz; j < cells; ++j) {
    std::uniform_int_distribution<std::uint64_t> pick(0, j);
    auto c = pick(rng);
    chosen.insert(chosen.count(c) ? j : c);
  }
  std::uniform_real_distribution<double> value(-4.0, 4.0);
  PlainSparseMatrix m{rows, cols, {}};
  for (auto c : chosen) {
    double v = value(rng);
    if (v == 0.0) v = 1.0;
    m.entries.push_back({c / cols + 1, c % cols + 1, v});
  }
  return m;
}

PlainSparseVector random_vector_exact(std::mt19937_64& rng, std::size_t dim, std::uint64_t nnz) {
  auto m = random_sparse_exact(rng, 1, dim, nnz);
  PlainSparseVector v{dim, {}};
  for (const auto& e : m.entries) v.entries.push_back({e.col, e.value});
  return v;
}

namespace {

std::optional<std::size_t> width_of(const ScenarioConfig& cfg) {
  if (cfg.coord_bits == 0) return std::nullopt;
  return cfg.coord_bits;
}

}  // namespace

CsvTable run_matvec_sweep(const ScenarioConfig& cfg) {
  validate(cfg);
  CsvTable t{{"m", "sparsity", "algo", "nnz", "elements_sent", "bytes", "rounds", "peak_storage", "route"}, {}};
  std::mt19937_64 rng(cfg.seed);
  const auto width = width_of(cfg);
  for (auto m : cfg.sizes) {
    const std::uint64_t cells = std::uint64_t{m} * m;
    std::vector<double> levels = cfg.sparsities;
    if (cfg.fixed_nnz != 0) levels = {1.0 - static_cast<double>(cfg.fixed_nnz) / static_cast<double>(cells)};
    for (auto s : levels) {
      auto dense = dense_product_cost(cfg, m, m, 1, false, cfg.seed);
      auto row = std::vector<std::string>{fmt(std::uint64_t{m}), fmt(s), "dense", fmt(cells)};
      for (auto& c : ledger_cells(dense)) row.push_back(c);
      t.add(row);

      const std::uint64_t nx = cfg.fixed_nnz ? cfg.fixed_nnz : nnz_for(s, cells);
      const std::uint64_t ny = cfg.fixed_nnz ? cfg.fixed_nnz : nnz_for(s, m);
      auto x = random_sparse_exact(rng, m, m, nx);
      auto y = random_vector_exact(rng, m, ny);
      auto ctx = ProtocolContext::spawn(cfg.parties, cfg.threshold, cfg.seed);
      auto sx = owner_share_matrix(ctx, x, Orientation::kRowGrouped, width);
      auto sy = owner_share_vector(ctx, y, width);
      auto before = ctx.ledger_snapshot();
      sparse_matvec(ctx, sx, sy, cfg.mode, width);
      row = {fmt(std::uint64_t{m}), fmt(s), "sparse", fmt(std::uint64_t{x.entries.size() + y.entries.size()})};
      for (auto& c : ledger_cells(finish(ctx, before, "measured"))) row.push_back(c);
      t.add(row);
    }
  }
  return t;
}

CsvTable run_matmat_sweep(const ScenarioConfig& cfg) {
  validate(cfg);
  CsvTable t{{"n", "m", "sparsity", "algo", "nnz", "minmult", "elements_sent", "bytes", "rounds", "peak_storage",
              "route"},
             {}};
  std::mt19937_64 rng(cfg.seed);
  const std::size_t n = cfg.n;
  for (auto m : cfg.sizes) {
    for (auto s : cfg.sparsities) {
      auto x = random_sparse_exact(rng, n, m, nnz_for(s, std::uint64_t{n} * m));
      auto counts = x.row_counts();
      const auto minmult = compute_minmult(counts, counts);
      const std::string nnz = fmt(std::uint64_t{x.entries.size()});

      auto dense = dense_product_cost(cfg, m, n, m, true, cfg.seed);
      std::vector<std::string> row{fmt(std::uint64_t{n}), fmt(std::uint64_t{m}), fmt(s), "dense", nnz, fmt(minmult)};
      for (auto& c : ledger_cells(dense)) row.push_back(c);
      t.add(row);

      auto ctx = ProtocolContext::spawn(cfg.parties, cfg.threshold, cfg.seed);
      auto sx = owner_share_matrix(ctx, x, Orientation::kRowGrouped, width_of(cfg));
      auto before = ctx.ledger_snapshot();
      gram(ctx, sx, cfg.mode);
      row = {fmt(std::uint64_t{n}), fmt(std::uint64_t{m}), fmt(s), "sparse", nnz, fmt(minmult)};
      for (auto& c : ledger_cells(finish(ctx, before, "measured"))) row.push_back(c);
      t.add(row);
    }
  }
  return t;
}

CsvTable run_overhead_compare(const std::vector<DegreeDataset>& datasets) {
  CsvTable t{{"dataset", "technique", "storage_elements"}, {}};
  for (const auto& d : datasets) {
    if (d.row_degrees.empty()) throw ConfigError("dataset " + d.name + " has no rows");
    const std::size_t max_degree = *std::max_element(d.row_degrees.begin(), d.row_degrees.end());
    const std::size_t cols = std::max(d.cols, max_degree);
    if (cols == 0) throw ConfigError("dataset " + d.name + " has no columns");
    const std::size_t bits = coord_width(cols);
    std::uint64_t nnz = 0;
    for (auto x : d.row_degrees) nnz += x;
    const std::uint64_t n = d.row_degrees.size();
    auto tpl = build_template_quantiles(make_ecdf(d.row_degrees));
    t.add({d.name, "dense", fmt(dense_storage_cost(n, cols))});
    t.add({d.name, "raw-sparse", fmt(sparse_storage_cost(nnz, bits))});
    t.add({d.name, "anonymized", fmt(sparse_storage_cost(nnz, bits))});
    t.add({d.name, "max-pad", fmt(sparse_storage_cost(n * max_degree, bits))});
    t.add({d.name, "template", fmt(template_storage_cost(tpl, bits))});
  }
  return t;
}

CsvTable run_dp_curves(const Ecdf& ecdf, const DpCurveConfig& cfg) {
  if (ecdf.total == 0) throw ConfigError("empty ECDF");
  if (cfg.epsilons.empty() || cfg.block_sizes.empty()) throw ConfigError("empty DP parameter grid");
  CsvTable t{{"epsilon", "delta", "block_size", "l", "i", "threshold", "fhat", "bound", "offset"}, {}};
  std::mt19937_64 rng(cfg.seed);
  const std::size_t top = std::max<std::size_t>(ecdf.max_degree(), 1);
  for (double eps : cfg.epsilons) {
    for (auto b : cfg.block_sizes) {
      if (b < 1) throw ConfigError("block size must be positive");
      std::size_t blocks = (top + b - 1) / b;
      std::size_t l = 2;
      while (l < blocks) l *= 2;
      DpParams params{eps, cfg.delta, l};
      std::vector<double> counts(l);
      std::vector<std::size_t> thresholds(l);
      for (std::size_t i = 1; i <= l; ++i) {
        thresholds[i - 1] = 1 + (i - 1) * b;
        counts[i - 1] = static_cast<double>(ecdf.at_least(thresholds[i - 1]));
      }
      auto bounds = dp_tree_upper(counts, params, rng, cfg.noise_scale);
      const double offset = dp_tree_offset(params);
      for (std::size_t i = 1; i <= l; ++i) {
        t.add({fmt(eps), fmt(cfg.delta), fmt(std::uint64_t{b}), fmt(std::uint64_t{l}), fmt(std::uint64_t{i}),
               fmt(std::uint64_t{thresholds[i - 1]}), fmt(counts[i - 1]), fmt(bounds[i - 1]), fmt(offset)});
      }
    }
  }
  return t;
}

CsvTable run_popbound_curves(const PopCurveConfig& cfg) {
  CsvTable t{{"degree", "tail", "lambda", "population_bound", "sample_bound"}, {}};
  std::vector<double> tail(cfg.law.max_degree + 2, 0.0);
  for (std::size_t d = cfg.law.max_degree; d >= 1; --d) {
    tail[d] = tail[d + 1] + std::pow(static_cast<double>(d), -cfg.law.gamma);
  }
  // Normalize by the summed mass itself so that tail(1) is exactly 1.
  const double z = tail[1];
  for (auto& v : tail) v /= z;
  for (double lambda : cfg.lambdas) {
    for (std::size_t d = 1; d <= cfg.law.max_degree; ++d) {
      const double f = std::clamp(tail[d], 0.0, 1.0);
      std::string sample = cfg.sample_size >= 2 ? fmt(pop_dist_upper_sample(f, cfg.sample_size, lambda)) : "";
      t.add({fmt(std::uint64_t{d}), fmt(f), fmt(lambda), fmt(pop_dist_upper(f, cfg.rows, lambda)), sample});
    }
  }
  return t;
}

PlainSparseMatrix generate(const PowerLawParams& law, std::size_t rows, std::size_t cols, std::uint64_t seed,
                           const std::filesystem::path& out) {
  std::mt19937_64 rng(seed);
  auto m = sample_powerlaw(law, rows, cols, rng);
  write_triplets(out, m);
  return m;
}

QuantileTemplateResult run_quantile_template(const std::vector<std::vector<std::size_t>>& owners,
                                             const ScenarioConfig& cfg) {
  if (owners.empty()) throw ConfigError("no count files given");
  std::size_t max_count = 0, total = 0;
  for (const auto& o : owners) {
    for (auto c : o) max_count = std::max(max_count, c);
    total += o.size();
  }
  if (total == 0) throw ConfigError("count files hold no rows");
  auto ctx = ProtocolContext::spawn(cfg.parties, cfg.threshold, cfg.seed);
  const std::size_t width = std::max<std::size_t>(1, ceil_log2(max_count + 1));
  BitSharedInts counts;
  for (const auto& o : owners) {
    if (o.empty()) continue;
    std::vector<std::uint64_t> v(o.begin(), o.end());
    auto shared = share_bits(ctx, v, width);
    if (counts.size() == 0) counts = shared;
    else counts.append(shared);
  }
  QuantileTemplateResult r;
  r.approx = mpc_quantile_template(ctx, counts);
  for (const auto& o : owners) r.alphas.push_back(owner_scaling_factor(o, r.approx));
  auto bounds = mpc_scaling_factor(ctx, share_scaling_factors(ctx, r.alphas), r.approx);
  auto pos = quantile_positions(total);
  std::size_t prev = 0;
  for (std::size_t k = 0; k < pos.size(); ++k) {
    r.result.blocks.push_back({pos[k] - prev, bounds[k]});
    prev = pos[k];
  }
  r.result.source = "quantile";
  r.ledger = ctx.ledger_snapshot();
  return r;
}

}  // namespace sparsempc::tools
