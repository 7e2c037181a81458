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

#include "sparsempc/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "sparsempc/errors.hpp"

namespace sparsempc {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view field, std::size_t line, const char* what) {
  field = trim(field);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(std::string("invalid ") + what + " '" + std::string(field) + "'", line);
  }
  return v;
}

double parse_real(std::string_view field, std::size_t line) {
  std::string s(trim(field));
  if (s.empty()) throw ParseError("empty value", line);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) throw ParseError("invalid value '" + s + "'", line);
  return v;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

}  // namespace

PlainSparseMatrix parse_triplets(std::istream& in, std::optional<std::size_t> rows,
                                 std::optional<std::size_t> cols) {
  PlainSparseMatrix m;
  std::string line;
  std::size_t line_no = 0;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  std::uint64_t max_row = 0, max_col = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (!header) {
      if (view.empty() && in.peek() == EOF) break;
      if (view != "row,col,value") throw ParseError("expected header 'row,col,value'", line_no);
      header = true;
      continue;
    }
    if (view.empty()) {
      if (in.peek() == EOF) break;
      throw ParseError("blank line", line_no);
    }
    auto c1 = view.find(',');
    auto c2 = c1 == std::string_view::npos ? c1 : view.find(',', c1 + 1);
    if (c2 == std::string_view::npos || view.find(',', c2 + 1) != std::string_view::npos) {
      throw ParseError("expected 3 fields", line_no);
    }
    std::uint64_t r = parse_uint(view.substr(0, c1), line_no, "row");
    std::uint64_t c = parse_uint(view.substr(c1 + 1, c2 - c1 - 1), line_no, "col");
    double v = parse_real(view.substr(c2 + 1), line_no);
    if (r == 0 || c == 0) throw ParseError("coordinates are 1-indexed", line_no);
    if ((rows && r > *rows) || (cols && c > *cols)) throw ParseError("coordinate beyond matrix dimensions", line_no);
    if (!seen.insert({r, c}).second) {
      throw ParseError("duplicate entry (" + std::to_string(r) + "," + std::to_string(c) + ")", line_no);
    }
    max_row = std::max(max_row, r);
    max_col = std::max(max_col, c);
    m.entries.push_back({r, c, v});
  }
  m.rows = rows.value_or(max_row);
  m.cols = cols.value_or(max_col);
  return m;
}

PlainSparseMatrix ingest_triplets(const std::filesystem::path& path, std::optional<std::size_t> rows,
                                  std::optional<std::size_t> cols) {
  auto in = open_input(path);
  return parse_triplets(in, rows, cols);
}

void write_triplets(std::ostream& out, const PlainSparseMatrix& m) {
  out << "row,col,value\n";
  out << std::setprecision(17);
  for (const auto& e : m.entries) out << e.row << ',' << e.col << ',' << e.value << '\n';
}

void write_triplets(const std::filesystem::path& path, const PlainSparseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_triplets(out, m);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<std::size_t> parse_nnz_counts(std::istream& in) {
  std::vector<std::size_t> counts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty()) {
      if (in.peek() == EOF) break;
      throw ParseError("blank line", line_no);
    }
    counts.push_back(parse_uint(view, line_no, "count"));
  }
  return counts;
}

std::vector<std::size_t> ingest_nnz_counts(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_nnz_counts(in);
}

void write_nnz_counts(std::ostream& out, const std::vector<std::size_t>& counts) {
  for (auto c : counts) out << c << '\n';
}

}  // namespace sparsempc
