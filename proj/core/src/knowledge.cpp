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

#include "sparsempc/knowledge.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sparsempc/errors.hpp"
#include "sparsempc/shamir.hpp"

namespace sparsempc {
namespace {

constexpr int kAlphaFracBits = 32;

// Block index of every 1-based ascending position of an n-row owner.
std::vector<std::size_t> block_of_positions(std::size_t n) {
  auto pos = quantile_positions(n);
  std::vector<std::size_t> out(n + 1, 0);
  std::size_t k = 0;
  for (std::size_t j = 1; j <= n; ++j) {
    while (j > pos[k]) ++k;
    out[j] = k;
  }
  return out;
}

std::size_t checked_count(long long v, std::size_t line) {
  if (v < 0) throw ParseError("negative count", line);
  return static_cast<std::size_t>(v);
}

}  // namespace

std::size_t Template::total_rows() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows;
  return n;
}

std::vector<std::size_t> Template::bounds() const {
  std::vector<std::size_t> out;
  for (const auto& b : blocks) out.push_back(b.bound);
  return out;
}

std::vector<std::size_t> quantile_positions(std::size_t n, std::span<const double> quantiles) {
  if (n == 0) throw ConfigError("quantile positions of an empty list");
  std::vector<std::size_t> out;
  for (double q : quantiles) {
    auto pos = static_cast<std::size_t>(std::floor(q * static_cast<double>(n)));
    out.push_back(std::clamp<std::size_t>(pos, 1, n));
  }
  return out;
}

std::size_t Ecdf::at_least(std::size_t d) const {
  auto it = std::lower_bound(degrees.begin(), degrees.end(), d);
  if (it == degrees.end()) return 0;
  if (it == degrees.begin() && d < *it) return total;
  return count_at_least[static_cast<std::size_t>(it - degrees.begin())];
}

Ecdf make_ecdf(std::span<const std::size_t> row_degrees) {
  std::map<std::size_t, std::size_t> hist;
  for (auto d : row_degrees) hist[d]++;
  Ecdf e;
  e.total = row_degrees.size();
  std::size_t remaining = e.total;
  for (const auto& [d, c] : hist) {
    e.degrees.push_back(d);
    e.count_at_least.push_back(remaining);
    remaining -= c;
  }
  return e;
}

std::size_t ecdf_order_statistic(const Ecdf& ecdf, std::size_t position) {
  if (position < 1 || position > ecdf.total) throw RangeError("order statistic position out of range");
  for (std::size_t k = 0; k < ecdf.degrees.size(); ++k) {
    std::size_t above = k + 1 < ecdf.degrees.size() ? ecdf.count_at_least[k + 1] : 0;
    if (ecdf.total - above >= position) return ecdf.degrees[k];
  }
  return ecdf.max_degree();
}

Template build_template_quantiles(const Ecdf& ecdf) {
  auto pos = quantile_positions(ecdf.total);
  Template t;
  t.source = "quantile";
  std::size_t prev = 0;
  for (auto p : pos) {
    t.blocks.push_back({p - prev, ecdf_order_statistic(ecdf, p)});
    prev = p;
  }
  return t;
}

bool template_fits(const Ecdf& ecdf, const Template& t) {
  if (t.total_rows() != ecdf.total) {
    throw ShapeError("template covers " + std::to_string(t.total_rows()) + " rows, data has " +
                     std::to_string(ecdf.total));
  }
  std::size_t after = ecdf.total;
  for (const auto& b : t.blocks) {
    after -= b.rows;
    if (ecdf.at_least(b.bound + 1) > after) return false;
  }
  return true;
}

std::uint64_t template_storage_cost(const Template& t, std::size_t coord_bits) {
  std::uint64_t tuples = 0;
  for (const auto& b : t.blocks) tuples += static_cast<std::uint64_t>(b.rows) * b.bound;
  return tuples * (coord_bits + 1);
}

namespace {

// Pads one row's entries to `bound` with zero-valued dummies.
void pad_row(std::vector<PlainEntry>& out, std::vector<PlainEntry> row, std::uint64_t out_row, std::size_t cols,
             std::size_t bound) {
  if (row.size() > bound) throw RangeError("row has more non-zeros than its bound");
  if (bound > cols) throw ShapeError("bound exceeds the number of columns");
  std::set<std::uint64_t> used;
  for (auto& e : row) {
    used.insert(e.col);
    e.row = out_row;
  }
  for (std::uint64_t c = 1; row.size() < bound; ++c) {
    if (!used.count(c)) row.push_back({out_row, c, 0.0});
  }
  std::sort(row.begin(), row.end(), [](const PlainEntry& a, const PlainEntry& b) { return a.col < b.col; });
  out.insert(out.end(), row.begin(), row.end());
}

std::vector<std::vector<PlainEntry>> split_rows(const PlainSparseMatrix& m) {
  validate(m);
  std::vector<std::vector<PlainEntry>> rows(m.rows);
  for (const auto& e : m.entries) rows[e.row - 1].push_back(e);
  return rows;
}

}  // namespace

PlainSparseMatrix max_row_pad(const PlainSparseMatrix& rows, std::size_t bound) {
  auto split = split_rows(rows);
  PlainSparseMatrix out{rows.rows, rows.cols, {}};
  for (std::size_t i = 0; i < split.size(); ++i) pad_row(out.entries, split[i], i + 1, rows.cols, bound);
  return out;
}

PaddedMatrix pad_to_template(const PlainSparseMatrix& rows, const Template& t) {
  auto split = split_rows(rows);
  std::vector<std::size_t> degrees;
  for (const auto& r : split) degrees.push_back(r.size());
  if (!template_fits(make_ecdf(degrees), t)) throw RangeError("rows do not fit the template");
  std::vector<std::size_t> order(split.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return degrees[a] < degrees[b]; });
  PaddedMatrix out{{rows.rows, rows.cols, {}}, {}};
  std::size_t next = 0;
  for (const auto& block : t.blocks) {
    for (std::size_t r = 0; r < block.rows; ++r, ++next) {
      pad_row(out.matrix.entries, split[order[next]], next + 1, rows.cols, block.bound);
      out.origin.push_back(order[next] + 1);
    }
  }
  return out;
}

std::vector<std::uint64_t> mpc_quantile_template(ProtocolContext& ctx, const BitSharedInts& counts) {
  if (counts.size() == 0) throw ConfigError("quantile template of an empty list");
  BitSharedInts sorted = counts;
  std::vector<ShareVector> no_payload;
  batcher_sort(ctx, sorted, no_payload);
  std::vector<std::size_t> indices;
  for (auto p : quantile_positions(counts.size())) indices.push_back(p - 1);
  auto opened = open(ctx, sorted.gather(indices).value());
  std::vector<std::uint64_t> out;
  for (const auto& v : opened) out.push_back(v.low64());
  return out;
}

double owner_scaling_factor(std::span<const std::size_t> degrees, std::span<const std::uint64_t> approx) {
  if (approx.size() != kTemplateQuantiles.size()) throw ShapeError("expected six approximate bounds");
  if (degrees.empty()) return 1.0;
  std::vector<std::size_t> sorted(degrees.begin(), degrees.end());
  std::sort(sorted.begin(), sorted.end());
  auto block = block_of_positions(sorted.size());
  double alpha = 1.0;
  for (std::size_t j = 1; j <= sorted.size(); ++j) {
    const double d = static_cast<double>(sorted[j - 1]);
    const auto a = approx[block[j]];
    if (a == 0) {
      if (d > 0) throw RangeError("approximate bound 0 cannot be scaled to fit");
      continue;
    }
    alpha = std::max(alpha, d / static_cast<double>(a));
  }
  return alpha;
}

BitSharedInts share_scaling_factors(ProtocolContext& ctx, std::span<const double> alphas) {
  std::vector<std::uint64_t> raw;
  for (double a : alphas) {
    if (!(a >= 0.0) || a >= std::ldexp(1.0, kAlphaBits - kAlphaFracBits)) throw RangeError("scaling factor out of range");
    raw.push_back(static_cast<std::uint64_t>(std::llround(std::ldexp(a, kAlphaFracBits))));
  }
  return share_bits(ctx, raw, kAlphaBits);
}

std::vector<std::size_t> mpc_scaling_factor(ProtocolContext& ctx, const BitSharedInts& alphas,
                                            std::span<const std::uint64_t> approx) {
  if (alphas.size() == 0) throw ConfigError("no scaling factors");
  auto top = recursive_max(ctx, alphas);
  const std::uint64_t raw = open(ctx, top.value())[0].low64();
  if (raw < (std::uint64_t{1} << kAlphaFracBits)) throw RangeError("scaling factor below one");
  // ceil(alpha * a) in exact integer arithmetic. A slack of 2^-12 absorbs the
  // rounding of alpha to 32 fractional bits, so integral products stay put.
  using u128 = unsigned __int128;
  constexpr u128 kSlack = u128{1} << (kAlphaFracBits - 12);
  constexpr u128 kOne = u128{1} << kAlphaFracBits;
  std::vector<std::size_t> out;
  for (auto a : approx) {
    u128 prod = static_cast<u128>(raw) * a;
    prod = prod > kSlack ? prod - kSlack : 0;
    out.push_back(static_cast<std::size_t>((prod + kOne - 1) >> kAlphaFracBits));
  }
  return out;
}

std::size_t DpParams::levels() const {
  if (l < 2 || (l & (l - 1)) != 0) throw ConfigError("threshold count must be a power of two >= 2");
  return ceil_log2(l);
}

double sample_laplace(std::mt19937_64& rng, double b) {
  std::exponential_distribution<double> expo(1.0 / b);
  std::bernoulli_distribution sign(0.5);
  double v = expo(rng);
  return sign(rng) ? v : -v;
}

double dp_single_upper(double y, double epsilon, double delta, std::mt19937_64& rng, double noise_scale) {
  if (!(epsilon > 0)) throw ConfigError("epsilon must be positive");
  if (!(delta > 0 && delta < 1)) throw ConfigError("delta must lie in (0, 1)");
  double out = y - std::log(2 * delta) / epsilon;
  if (noise_scale != 0.0) out += noise_scale * sample_laplace(rng, 1.0 / epsilon);
  return out;
}

double dp_tree_offset(const DpParams& params) {
  if (!(params.epsilon > 0)) throw ConfigError("epsilon must be positive");
  if (!(params.delta > 0 && params.delta < 1)) throw ConfigError("delta must lie in (0, 1)");
  const double L = static_cast<double>(params.levels());
  return L * (L + 1) / params.epsilon * std::log(L * (L + 1) / (2 * params.delta));
}

std::vector<double> dp_tree_upper(std::span<const double> counts, const DpParams& params, std::mt19937_64& rng,
                                  double noise_scale) {
  const double offset = dp_tree_offset(params);
  if (counts.size() != params.l) throw ShapeError("expected one count per threshold");
  const std::size_t L = params.levels();
  const double b = static_cast<double>(L + 1) / params.epsilon;
  // Level j holds ceil(l / 2^j) variables, covering every index used below.
  std::vector<std::vector<double>> eta(L);
  for (std::size_t j = 0; j < L; ++j) {
    eta[j].resize((params.l + (std::size_t{1} << j) - 1) >> j);
    for (auto& v : eta[j]) v = noise_scale == 0.0 ? 0.0 : noise_scale * sample_laplace(rng, b);
  }
  std::vector<double> out(params.l);
  for (std::size_t i = 1; i <= params.l; ++i) {
    double noise = 0;
    for (std::size_t j = 0; j < L; ++j) noise += eta[j][(i - 1) >> j];
    out[i - 1] = counts[i - 1] + offset + noise;
  }
  return out;
}

double pop_dist_upper(double tail, std::size_t n, double lambda) {
  if (!(tail >= 0 && tail <= 1)) throw RangeError("tail probability outside [0, 1]");
  if (n < 1) throw RangeError("row count must be positive");
  if (!(lambda >= 0)) throw RangeError("lambda must be non-negative");
  return std::clamp(tail + lambda * std::sqrt(tail * (1 - tail) / static_cast<double>(n)), 0.0, 1.0);
}

double pop_dist_upper_sample(double p, std::size_t s, double lambda) {
  if (!(p >= 0 && p <= 1)) throw RangeError("sample proportion outside [0, 1]");
  if (s < 2) throw RangeError("sample size must be at least 2");
  if (!(lambda >= 0)) throw RangeError("lambda must be non-negative");
  return std::clamp(p + lambda * std::sqrt(p * (1 - p) / static_cast<double>(s - 1)), 0.0, 1.0);
}

double powerlaw_normalizer(const PowerLawParams& p) { return powerlaw_moment(p, 0); }

double powerlaw_moment(const PowerLawParams& p, int k) {
  if (!(p.gamma > 1)) throw ConfigError("power-law exponent must exceed 1");
  if (p.max_degree < 1) throw ConfigError("maximum degree must be positive");
  double z = 0, m = 0;
  for (std::size_t i = 1; i <= p.max_degree; ++i) {
    double w = std::pow(static_cast<double>(i), -p.gamma);
    z += w;
    m += w * std::pow(static_cast<double>(i), k);
  }
  return k == 0 ? z : m / z;
}

PlainSparseMatrix sample_powerlaw(const PowerLawParams& params, std::size_t rows, std::size_t cols,
                                  std::mt19937_64& rng) {
  if (cols < 1) throw ConfigError("matrix needs at least one column");
  PowerLawParams capped{params.gamma, std::min(params.max_degree, cols)};
  powerlaw_normalizer(capped);  // validates
  std::vector<double> weights(capped.max_degree);
  for (std::size_t i = 0; i < weights.size(); ++i) weights[i] = std::pow(static_cast<double>(i + 1), -params.gamma);
  std::discrete_distribution<std::size_t> degree(weights.begin(), weights.end());
  std::uniform_real_distribution<double> value(0.5, 1.5);
  PlainSparseMatrix out{rows, cols, {}};
  std::set<std::uint64_t> chosen;
  for (std::size_t r = 1; r <= rows; ++r) {
    const std::size_t d = degree(rng) + 1;
    // Floyd's algorithm: d distinct columns from 1..cols.
    chosen.clear();
    for (std::size_t j = cols - d + 1; j <= cols; ++j) {
      std::uniform_int_distribution<std::size_t> pick(1, j);
      std::size_t c = pick(rng);
      chosen.insert(chosen.count(c) ? j : c);
    }
    for (auto c : chosen) out.entries.push_back({r, c, value(rng)});
  }
  return out;
}

void write_ecdf(std::ostream& out, const Ecdf& ecdf) {
  out << "degree,count_at_least\n";
  for (std::size_t k = 0; k < ecdf.degrees.size(); ++k) out << ecdf.degrees[k] << ',' << ecdf.count_at_least[k] << '\n';
}

Ecdf parse_ecdf(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError("missing header", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "degree,count_at_least") throw ParseError("expected header 'degree,count_at_least'", 1);
  Ecdf e;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    long long d = -1, c = -1;
    char comma = 0;
    if (!(fields >> d >> comma >> c) || comma != ',' || !(fields >> std::ws).eof()) {
      throw ParseError("expected 'degree,count'", line_no);
    }
    std::size_t degree = checked_count(d, line_no), count = checked_count(c, line_no);
    if (!e.degrees.empty() && degree <= e.degrees.back()) throw ParseError("degrees must increase", line_no);
    if (!e.count_at_least.empty() && count > e.count_at_least.back()) {
      throw ParseError("counts must not increase", line_no);
    }
    e.degrees.push_back(degree);
    e.count_at_least.push_back(count);
  }
  e.total = e.count_at_least.empty() ? 0 : e.count_at_least.front();
  return e;
}

void write_template(std::ostream& out, const Template& t) {
  nlohmann::json j;
  j["total_rows"] = t.total_rows();
  j["source"] = t.source;
  j["blocks"] = nlohmann::json::array();
  for (const auto& b : t.blocks) j["blocks"].push_back({{"rows", b.rows}, {"bound", b.bound}});
  out << j.dump(2) << '\n';
}

Template parse_template(std::istream& in) {
  try {
    auto j = nlohmann::json::parse(in);
    Template t;
    t.source = j.at("source").get<std::string>();
    for (const auto& b : j.at("blocks")) {
      t.blocks.push_back({b.at("rows").get<std::size_t>(), b.at("bound").get<std::size_t>()});
    }
    if (j.at("total_rows").get<std::size_t>() != t.total_rows()) throw ConfigError("template total_rows mismatch");
    for (std::size_t k = 1; k < t.blocks.size(); ++k) {
      if (t.blocks[k].bound < t.blocks[k - 1].bound) throw ConfigError("template bounds must not decrease");
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid template: ") + e.what());
  }
}

void save_template(const std::filesystem::path& path, const Template& t) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_template(out, t);
}

Template load_template(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return parse_template(in);
}

}  // namespace sparsempc
