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

// Command-line harness for the cost scenarios.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "scenarios.hpp"
#include "sparsempc/errors.hpp"
#include "sparsempc/io.hpp"
#include "sparsempc/knowledge.hpp"

namespace {

using sparsempc::tools::CsvTable;

struct Common {
  std::uint64_t seed = 1;
  std::size_t parties = 3;
  std::size_t threshold = 1;
  std::string out;
  std::string mode = "optimized";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd->add_option("--parties", c.parties, "Number of computing parties")->capture_default_str();
  cmd->add_option("--threshold", c.threshold, "Corruption threshold t")->capture_default_str();
  cmd->add_option("--out", c.out, "Output path (default: stdout)");
  cmd->add_option("--mode", c.mode, "Aggregation variant")
      ->check(CLI::IsMember({"naive", "optimized"}))
      ->capture_default_str();
}

sparsempc::tools::ScenarioConfig to_config(const Common& c) {
  sparsempc::tools::ScenarioConfig cfg;
  cfg.seed = c.seed;
  cfg.parties = c.parties;
  cfg.threshold = c.threshold;
  cfg.mode = c.mode == "naive" ? sparsempc::Mode::kNaive : sparsempc::Mode::kOptimized;
  return cfg;
}

void emit(const CsvTable& t, const std::string& path) {
  if (path.empty()) {
    t.write(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  t.write(f);
}

std::vector<std::size_t> read_counts(const std::string& path) { return sparsempc::ingest_nnz_counts(path); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cost scenarios for secret-shared sparse linear algebra"};
  app.require_subcommand(1);

  Common common;
  std::vector<std::size_t> sizes{128, 256, 512};
  std::size_t coord_bits = 0;
  std::uint64_t fixed_nnz = 0;
  std::vector<double> sparsities{0.99, 0.999};
  std::size_t rows = 100;
  std::uint64_t dense_limit = std::uint64_t{1} << 22;

  auto* matvec = app.add_subcommand("matvec-sweep", "Square matrix times vector, dense vs sparse");
  add_common(matvec, common);
  matvec->add_option("--sizes", sizes, "Matrix dimensions m")->delimiter(',')->capture_default_str();
  matvec->add_option("--sparsities", sparsities, "Fractions of zero cells")->delimiter(',')->capture_default_str();
  matvec->add_option("--dense-measure-limit", dense_limit, "Largest dense n*m*p run for real")->capture_default_str();
  matvec->add_option("--coord-bits", coord_bits, "Public coordinate width (default: per size)");
  matvec->add_option("--nnz", fixed_nnz, "Exact nnz of X and of y, replacing --sparsities");

  auto* matmat = app.add_subcommand("matmat-sweep", "X^T X for an n x m matrix, dense vs sparse");
  add_common(matmat, common);
  matmat->add_option("--rows", rows, "Row count n of X")->capture_default_str();
  matmat->add_option("--sizes", sizes, "Column counts m")->delimiter(',')->capture_default_str();
  matmat->add_option("--sparsities", sparsities, "Fractions of zero cells")->delimiter(',')->capture_default_str();
  matmat->add_option("--dense-measure-limit", dense_limit, "Largest dense n*m*p run for real")->capture_default_str();
  matmat->add_option("--coord-bits", coord_bits, "Public coordinate width (default: per size)");

  std::vector<std::string> count_files;
  std::size_t cols = 0;
  double gamma = 2.5;
  std::size_t max_degree = 0;
  auto* overhead = app.add_subcommand("overhead", "Storage per public-knowledge technique");
  add_common(overhead, common);
  overhead->add_option("--counts", count_files, "nnz-count CSV files, one dataset each")->delimiter(',');
  overhead->add_option("--cols", cols, "Column count of the datasets (default: max degree)");
  overhead->add_option("--gamma", gamma, "Exponent of the synthetic power-law dataset")->capture_default_str();
  overhead->add_option("--rows", rows, "Rows of the synthetic datasets")->capture_default_str();

  std::string ecdf_file;
  sparsempc::tools::DpCurveConfig dp;
  bool noise_free = false;
  auto* dp_curves = app.add_subcommand("dp-curves", "DP tree-mechanism upper bounds of a tail-count curve");
  add_common(dp_curves, common);
  auto* ecdf_opt = dp_curves->add_option("--ecdf", ecdf_file, "ECDF CSV (degree,count_at_least)");
  dp_curves->add_option("--counts", count_files, "nnz-count CSV instead of an ECDF")->delimiter(',')->excludes(ecdf_opt);
  dp_curves->add_option("--epsilons", dp.epsilons, "Privacy budgets")->delimiter(',')->capture_default_str();
  dp_curves->add_option("--delta", dp.delta, "Failure probability")->capture_default_str();
  dp_curves->add_option("--block-sizes", dp.block_sizes, "Degree widths of the threshold blocks")->delimiter(',')
      ->capture_default_str();
  dp_curves->add_flag("--noise-free", noise_free, "Drop the Laplace noise (offset only)");

  sparsempc::tools::PopCurveConfig pop;
  auto* pop_curves = app.add_subcommand("pop-curves", "Population-distribution upper bounds");
  add_common(pop_curves, common);
  pop_curves->add_option("--gamma", pop.law.gamma, "Power-law exponent")->capture_default_str();
  pop_curves->add_option("--max-degree", pop.law.max_degree, "Largest degree")->required();
  pop_curves->add_option("--rows", pop.rows, "Population row count n")->capture_default_str();
  pop_curves->add_option("--lambdas", pop.lambdas, "Standard deviations added")->delimiter(',')->capture_default_str();
  pop_curves->add_option("--sample-size", pop.sample_size, "Public sample size s (enables the sample variant)");

  std::size_t gen_rows = 1000;
  auto* gen = app.add_subcommand("generate", "Synthetic power-law matrix as a triplet CSV");
  add_common(gen, common);
  gen->add_option("--gamma", gamma, "Power-law exponent")->capture_default_str();
  gen->add_option("--rows", gen_rows, "Row count")->capture_default_str();
  gen->add_option("--cols", cols, "Column count")->required();
  gen->add_option("--max-degree", max_degree, "Largest row degree (default: cols)");

  auto* quantile = app.add_subcommand("quantile-template", "MPC quantile template with owner scaling factors");
  add_common(quantile, common);
  quantile->add_option("--counts", count_files, "nnz-count CSV per data owner")->delimiter(',')->required();

  CLI11_PARSE(app, argc, argv);

  try {
    auto cfg = to_config(common);
    cfg.sizes = sizes;
    cfg.sparsities = sparsities;
    cfg.dense_measure_limit = dense_limit;
    cfg.coord_bits = coord_bits;
    cfg.fixed_nnz = fixed_nnz;
    if (*matvec) {
      emit(sparsempc::tools::run_matvec_sweep(cfg), common.out);
    } else if (*matmat) {
      cfg.n = rows;
      emit(sparsempc::tools::run_matmat_sweep(cfg), common.out);
    } else if (*overhead) {
      std::vector<sparsempc::tools::DegreeDataset> data;
      for (const auto& f : count_files) {
        data.push_back({std::filesystem::path(f).stem().string(), read_counts(f), cols});
      }
      if (data.empty()) {
        // Synthetic pair: power-law and constant degree.
        const std::size_t m = cols ? cols : rows;
        std::mt19937_64 rng(common.seed);
        auto x = sparsempc::sample_powerlaw({gamma, m}, rows, m, rng);
        data.push_back({"powerlaw", x.row_counts(), m});
        data.push_back({"constant", std::vector<std::size_t>(rows, std::min<std::size_t>(m, 4)), m});
      }
      emit(sparsempc::tools::run_overhead_compare(data), common.out);
    } else if (*dp_curves) {
      sparsempc::Ecdf ecdf;
      if (!ecdf_file.empty()) {
        std::ifstream in(ecdf_file);
        if (!in) throw std::runtime_error("cannot read " + ecdf_file);
        ecdf = sparsempc::parse_ecdf(in);
      } else if (count_files.size() == 1) {
        ecdf = sparsempc::make_ecdf(read_counts(count_files[0]));
      } else {
        throw sparsempc::ConfigError("dp-curves needs --ecdf or a single --counts file");
      }
      dp.seed = common.seed;
      dp.noise_scale = noise_free ? 0.0 : 1.0;
      emit(sparsempc::tools::run_dp_curves(ecdf, dp), common.out);
    } else if (*pop_curves) {
      emit(sparsempc::tools::run_popbound_curves(pop), common.out);
    } else if (*gen) {
      if (common.out.empty()) throw sparsempc::ConfigError("generate needs --out");
      sparsempc::PowerLawParams law{gamma, max_degree ? max_degree : cols};
      auto m = sparsempc::tools::generate(law, gen_rows, cols, common.seed, common.out);
      std::cerr << "wrote " << m.entries.size() << " non-zeros to " << common.out << '\n';
    } else if (*quantile) {
      std::vector<std::vector<std::size_t>> owners;
      for (const auto& f : count_files) owners.push_back(read_counts(f));
      auto r = sparsempc::tools::run_quantile_template(owners, cfg);
      if (common.out.empty()) {
        sparsempc::write_template(std::cout, r.result);
      } else {
        sparsempc::save_template(common.out, r.result);
      }
      std::cerr << "opened " << r.ledger.values_opened << " values in " << r.ledger.rounds << " rounds\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
