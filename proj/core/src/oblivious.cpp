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

#include "sparsempc/oblivious.hpp"

#include <algorithm>
#include <utility>

#include "sparsempc/errors.hpp"

namespace sparsempc {

std::size_t ceil_log2(std::size_t x) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < x) ++k;
  return k;
}

// ---- BitSharedInts ----------------------------------------------------------

BitSharedInts::BitSharedInts(std::vector<ShareVector> bits) : bits_(std::move(bits)) {
  for (const auto& b : bits_) {
    if (b.size() != bits_[0].size()) throw ShapeError("bit columns differ in length");
  }
}

BitSharedInts::BitSharedInts(const ProtocolContext& ctx, std::size_t count, std::size_t width) {
  bits_.reserve(width);
  for (std::size_t i = 0; i < width; ++i) bits_.emplace_back(ctx, count, ctx.threshold());
}

BitSharedInts BitSharedInts::gather(std::span<const std::size_t> indices) const {
  std::vector<ShareVector> out;
  out.reserve(bits_.size());
  for (const auto& b : bits_) out.push_back(b.gather(indices));
  return BitSharedInts(std::move(out));
}

BitSharedInts BitSharedInts::slice(std::size_t begin, std::size_t count) const {
  std::vector<ShareVector> out;
  out.reserve(bits_.size());
  for (const auto& b : bits_) out.push_back(b.slice(begin, count));
  return BitSharedInts(std::move(out));
}

void BitSharedInts::scatter(std::span<const std::size_t> indices, const BitSharedInts& values) {
  if (values.width() != width()) throw ShapeError("scatter width mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i].scatter(indices, values.bits_[i]);
}

void BitSharedInts::append(const BitSharedInts& tail) {
  if (bits_.empty()) {
    bits_ = tail.bits_;
    return;
  }
  if (tail.width() != width()) throw ShapeError("append width mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i].append(tail.bits_[i]);
}

ShareVector BitSharedInts::value() const {
  if (bits_.empty()) throw ShapeError("value of zero-width integers");
  ShareVector acc = bits_[0];
  for (std::size_t i = 1; i < bits_.size(); ++i) {
    acc = add(acc, scale(bits_[i], Fp::pow2(static_cast<int>(i))));
  }
  return acc;
}

BitSharedInts share_bits(ProtocolContext& ctx, std::span<const std::uint64_t> values,
                         std::size_t width) {
  if (width > 64) throw RangeError("share_bits: width above 64");
  std::vector<Fp> flat(values.size() * width);
  for (std::size_t i = 0; i < width; ++i) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (width < 64 && (values[k] >> width) != 0) throw RangeError("share_bits: value exceeds width");
      flat[i * values.size() + k] = Fp((values[k] >> i) & 1);
    }
  }
  ShareVector all = share(ctx, flat);
  std::vector<ShareVector> cols;
  cols.reserve(width);
  for (std::size_t i = 0; i < width; ++i) cols.push_back(all.slice(i * values.size(), values.size()));
  return BitSharedInts(std::move(cols));
}

BitSharedInts constant_bits(const ProtocolContext& ctx, std::span<const std::uint64_t> values,
                            std::size_t width) {
  if (width > 64) throw RangeError("constant_bits: width above 64");
  std::vector<ShareVector> cols;
  cols.reserve(width);
  std::vector<Fp> column(values.size());
  for (std::size_t i = 0; i < width; ++i) {
    for (std::size_t k = 0; k < values.size(); ++k) column[k] = Fp((values[k] >> i) & 1);
    cols.push_back(constant(ctx, column));
  }
  return BitSharedInts(std::move(cols));
}

BitSharedInts random_bits(ProtocolContext& ctx, std::size_t count, std::size_t width) {
  std::vector<ShareVector> cols;
  cols.reserve(width);
  for (std::size_t i = 0; i < width; ++i) cols.push_back(rand_bits(ctx, count));
  return BitSharedInts(std::move(cols));
}

BitSharedInts composite_key(std::span<const BitSharedInts> components) {
  std::vector<ShareVector> cols;
  for (std::size_t c = components.size(); c-- > 0;) {
    if (components[c].size() != components[0].size()) throw ShapeError("key components differ in length");
    for (const auto& b : components[c].columns()) cols.push_back(b);
  }
  return BitSharedInts(std::move(cols));
}

std::vector<std::uint64_t> reconstruct_bits(const BitSharedInts& v) {
  if (v.width() > 64) throw RangeError("reconstruct_bits: width above 64");
  std::vector<std::uint64_t> out(v.size(), 0);
  for (std::size_t i = 0; i < v.width(); ++i) {
    auto col = reconstruct(v.bit(i));
    for (std::size_t k = 0; k < out.size(); ++k) {
      if (col[k] != Fp(0) && col[k] != Fp(1)) throw RangeError("reconstructed bit is not 0/1");
      out[k] |= col[k].low64() << i;
    }
  }
  return out;
}

// ---- comparisons ------------------------------------------------------------

namespace {

void require_same_width(const BitSharedInts& a, const BitSharedInts& b, const char* op) {
  if (a.width() != b.width()) throw ShapeError(std::string(op) + ": width mismatch");
  if (a.size() != b.size()) throw ShapeError(std::string(op) + ": length mismatch");
}

// Product of all factors by a balanced tree; one barrier per level.
ShareVector product_tree(ProtocolContext& ctx, std::vector<ShareVector> level) {
  while (level.size() > 1) {
    std::size_t pairs = level.size() / 2;
    std::vector<ShareVector> lhs, rhs;
    lhs.reserve(pairs);
    rhs.reserve(pairs);
    for (std::size_t i = 0; i < pairs; ++i) {
      lhs.push_back(std::move(level[2 * i]));
      rhs.push_back(std::move(level[2 * i + 1]));
    }
    std::vector<ShareVector> next = mul_batch(ctx, lhs, rhs);
    if (level.size() % 2) next.push_back(std::move(level.back()));
    level = std::move(next);
  }
  return std::move(level[0]);
}

// Element-wise a_i * b_i for every bit position, in one barrier.
std::vector<ShareVector> bitwise_products(ProtocolContext& ctx, const BitSharedInts& a,
                                          const BitSharedInts& b) {
  return mul_batch(ctx, a.columns(), b.columns());
}

}  // namespace

ShareVector eq_bits(ProtocolContext& ctx, const BitSharedInts& a, const BitSharedInts& b) {
  require_same_width(a, b, "eq_bits");
  if (a.width() == 0) return constant(ctx, a.size(), Fp(1));
  auto prods = bitwise_products(ctx, a, b);
  std::vector<ShareVector> xnor;
  xnor.reserve(a.width());
  for (std::size_t i = 0; i < a.width(); ++i) {
    // 1 - a - b + 2ab
    xnor.push_back(add(public_minus(Fp(1), add(a.bit(i), b.bit(i))), scale(prods[i], Fp(2))));
  }
  return product_tree(ctx, std::move(xnor));
}

ShareVector is_zero_bits(ProtocolContext& ctx, const BitSharedInts& a) {
  if (a.width() == 0) return constant(ctx, a.size(), Fp(1));
  std::vector<ShareVector> negated;
  negated.reserve(a.width());
  for (const auto& b : a.columns()) negated.push_back(public_minus(Fp(1), b));
  return product_tree(ctx, std::move(negated));
}

ShareVector lt_bits(ProtocolContext& ctx, const BitSharedInts& a, const BitSharedInts& b) {
  require_same_width(a, b, "lt_bits");
  if (a.width() == 0) return constant(ctx, a.size(), Fp(0));
  auto prods = bitwise_products(ctx, a, b);
  // Nodes ordered from the most significant bit down.
  std::vector<ShareVector> lt, eq;
  for (std::size_t i = a.width(); i-- > 0;) {
    lt.push_back(sub(b.bit(i), prods[i]));
    eq.push_back(add(public_minus(Fp(1), add(a.bit(i), b.bit(i))), scale(prods[i], Fp(2))));
  }
  while (lt.size() > 1) {
    const std::size_t pairs = lt.size() / 2;
    const bool last = lt.size() == 2;
    std::vector<ShareVector> lhs, rhs;
    for (std::size_t i = 0; i < pairs; ++i) {
      lhs.push_back(eq[2 * i]);
      rhs.push_back(lt[2 * i + 1]);
      if (!last) {
        lhs.push_back(eq[2 * i]);
        rhs.push_back(eq[2 * i + 1]);
      }
    }
    auto prod = mul_batch(ctx, lhs, rhs);
    std::vector<ShareVector> next_lt, next_eq;
    const std::size_t stride = last ? 1 : 2;
    for (std::size_t i = 0; i < pairs; ++i) {
      next_lt.push_back(add(lt[2 * i], prod[stride * i]));
      if (!last) next_eq.push_back(std::move(prod[stride * i + 1]));
    }
    if (lt.size() % 2) {
      next_lt.push_back(std::move(lt.back()));
      next_eq.push_back(std::move(eq.back()));
    }
    lt = std::move(next_lt);
    eq = std::move(next_eq);
  }
  return std::move(lt[0]);
}

// ---- conditional arithmetic -------------------------------------------------

std::vector<ShareVector> select(ProtocolContext& ctx, const ShareVector& c,
                                std::span<const ShareVector> a, std::span<const ShareVector> b) {
  if (a.size() != b.size()) throw ShapeError("select: tuple arity mismatch");
  std::vector<ShareVector> conds(a.size(), c), diffs;
  diffs.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diffs.push_back(sub(a[i], b[i]));
  auto d = mul_batch(ctx, conds, diffs);
  std::vector<ShareVector> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(add(b[i], d[i]));
  return out;
}

void cond_swap(ProtocolContext& ctx, const ShareVector& c, std::vector<ShareVector>& x,
               std::vector<ShareVector>& y) {
  if (x.size() != y.size()) throw ShapeError("cond_swap: tuple arity mismatch");
  std::vector<ShareVector> conds(x.size(), c), diffs;
  diffs.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diffs.push_back(sub(y[i], x[i]));
  auto d = mul_batch(ctx, conds, diffs);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = add(x[i], d[i]);
    y[i] = sub(y[i], d[i]);
  }
}

// ---- sorting and shuffling --------------------------------------------------

std::vector<std::vector<Comparator>> batcher_network(std::size_t n) {
  std::vector<std::vector<Comparator>> layers;
  if (n < 2) return layers;
  const std::size_t size = std::size_t{1} << ceil_log2(n);
  for (std::size_t p = 1; p < size; p <<= 1) {
    for (std::size_t k = p; k >= 1; k >>= 1) {
      std::vector<Comparator> layer;
      for (std::size_t j = k % p; j + k < size; j += 2 * k) {
        for (std::size_t i = 0; i < std::min(k, size - j - k); ++i) {
          std::size_t lo = i + j, hi = i + j + k;
          if (lo / (2 * p) == hi / (2 * p) && hi < n) layer.push_back({lo, hi});
        }
      }
      if (!layer.empty()) layers.push_back(std::move(layer));
    }
  }
  return layers;
}

void batcher_sort(ProtocolContext& ctx, BitSharedInts& key, std::vector<ShareVector>& payload) {
  const std::size_t n = key.size();
  for (const auto& col : payload) {
    if (col.size() != n) throw ShapeError("batcher_sort: payload length differs from key");
  }
  for (const auto& layer : batcher_network(n)) {
    std::vector<std::size_t> lo, hi;
    lo.reserve(layer.size());
    hi.reserve(layer.size());
    for (const auto& c : layer) {
      lo.push_back(c.lo);
      hi.push_back(c.hi);
    }
    BitSharedInts key_lo = key.gather(lo), key_hi = key.gather(hi);
    ShareVector swap = lt_bits(ctx, key_hi, key_lo);

    std::vector<ShareVector> x = std::move(key_lo.columns()), y = std::move(key_hi.columns());
    for (const auto& col : payload) {
      x.push_back(col.gather(lo));
      y.push_back(col.gather(hi));
    }
    cond_swap(ctx, swap, x, y);
    const std::size_t w = key.width();
    for (std::size_t i = 0; i < w; ++i) {
      key.bit(i).scatter(lo, x[i]);
      key.bit(i).scatter(hi, y[i]);
    }
    for (std::size_t i = 0; i < payload.size(); ++i) {
      payload[i].scatter(lo, x[w + i]);
      payload[i].scatter(hi, y[w + i]);
    }
  }
}

std::size_t shuffle_key_width(std::size_t m) { return 2 * ceil_log2(m) + 40; }

void shuffle(ProtocolContext& ctx, std::vector<ShareVector>& columns, BitSharedInts* bit_columns) {
  std::size_t m = 0;
  if (!columns.empty()) {
    m = columns[0].size();
  } else if (bit_columns != nullptr) {
    m = bit_columns->size();
  }
  if (m < 2) return;
  BitSharedInts key = random_bits(ctx, m, shuffle_key_width(m));
  const std::size_t plain = columns.size();
  if (bit_columns != nullptr) {
    for (auto& b : bit_columns->columns()) columns.push_back(std::move(b));
  }
  batcher_sort(ctx, key, columns);
  if (bit_columns != nullptr) {
    for (std::size_t i = 0; i < bit_columns->width(); ++i) {
      bit_columns->bit(i) = std::move(columns[plain + i]);
    }
    columns.resize(plain);
  }
}

BitSharedInts recursive_max(ProtocolContext& ctx, const BitSharedInts& values) {
  if (values.size() == 0) throw ShapeError("recursive_max: empty input");
  BitSharedInts level = values;
  while (level.size() > 1) {
    const std::size_t pairs = level.size() / 2;
    std::vector<std::size_t> left(pairs), right(pairs);
    for (std::size_t i = 0; i < pairs; ++i) {
      left[i] = 2 * i;
      right[i] = 2 * i + 1;
    }
    BitSharedInts a = level.gather(left), b = level.gather(right);
    ShareVector a_smaller = lt_bits(ctx, a, b);
    BitSharedInts next(select(ctx, a_smaller, b.columns(), a.columns()));
    if (level.size() % 2) next.append(level.slice(level.size() - 1, 1));
    level = std::move(next);
  }
  return level;
}

std::vector<bool> reveal_flags(ProtocolContext& ctx, const ShareVector& c) {
  auto opened = open(ctx, c);
  std::vector<bool> out(opened.size());
  for (std::size_t i = 0; i < opened.size(); ++i) {
    if (opened[i] == Fp(1)) {
      out[i] = true;
    } else if (opened[i] != Fp(0)) {
      throw RangeError("reveal_flags: opened value is not a bit");
    }
  }
  return out;
}

}  // namespace sparsempc
