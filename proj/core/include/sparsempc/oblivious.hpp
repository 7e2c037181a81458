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
#include <span>
#include <vector>

#include "sparsempc/runtime.hpp"
#include "sparsempc/shamir.hpp"

namespace sparsempc {

// A batch of secret integers held as shared bits. bit(i) is a ShareVector
// with one entry per integer; bit 0 is the least significant.
class BitSharedInts {
 public:
  BitSharedInts() = default;
  // All columns must have equal length.
  explicit BitSharedInts(std::vector<ShareVector> bits);
  // `count` integers of `width` bits, all zero.
  BitSharedInts(const ProtocolContext& ctx, std::size_t count, std::size_t width);

  std::size_t width() const { return bits_.size(); }
  std::size_t size() const { return bits_.empty() ? 0 : bits_[0].size(); }

  const ShareVector& bit(std::size_t i) const { return bits_[i]; }
  ShareVector& bit(std::size_t i) { return bits_[i]; }
  const std::vector<ShareVector>& columns() const { return bits_; }
  std::vector<ShareVector>& columns() { return bits_; }

  BitSharedInts gather(std::span<const std::size_t> indices) const;
  BitSharedInts slice(std::size_t begin, std::size_t count) const;
  void scatter(std::span<const std::size_t> indices, const BitSharedInts& values);
  void append(const BitSharedInts& tail);

  // Arithmetic value sum_i bit_i * 2^i, computed locally.
  ShareVector value() const;

 private:
  std::vector<ShareVector> bits_;
};

// Owner-side bit decomposition of public-to-the-owner integers, charged as
// an input upload of width * count elements per party.
BitSharedInts share_bits(ProtocolContext& ctx, std::span<const std::uint64_t> values,
                         std::size_t width);

// Trivial sharing of public integers.
BitSharedInts constant_bits(const ProtocolContext& ctx, std::span<const std::uint64_t> values,
                            std::size_t width);

// Uniformly random bit-shared integers from preprocessing (no ledger cost).
BitSharedInts random_bits(ProtocolContext& ctx, std::size_t count, std::size_t width);

// Composite key compared lexicographically: components[0] is the most
// significant. The result simply stacks the components' bits.
BitSharedInts composite_key(std::span<const BitSharedInts> components);

// Test-only opening of bit-shared integers (no ledger). Requires width <= 64.
std::vector<std::uint64_t> reconstruct_bits(const BitSharedInts& v);

// 1 where a == b, element-wise. 1 + ceil(log2 B) rounds.
ShareVector eq_bits(ProtocolContext& ctx, const BitSharedInts& a, const BitSharedInts& b);

// 1 where a == 0, element-wise. ceil(log2 B) rounds.
ShareVector is_zero_bits(ProtocolContext& ctx, const BitSharedInts& a);

// 1 where a < b as unsigned integers, element-wise. 1 + ceil(log2 B) rounds.
ShareVector lt_bits(ProtocolContext& ctx, const BitSharedInts& a, const BitSharedInts& b);

// c * a + (1 - c) * b for each column, in one barrier. c must hold bits.
std::vector<ShareVector> select(ProtocolContext& ctx, const ShareVector& c,
                                std::span<const ShareVector> a, std::span<const ShareVector> b);

// Compare-exchange: where c = 1, x and y trade places. Columns of x and y
// are updated in place with one multiplication per element, all in one
// barrier.
void cond_swap(ProtocolContext& ctx, const ShareVector& c, std::vector<ShareVector>& x,
               std::vector<ShareVector>& y);

// A compare-exchange between positions lo < hi.
struct Comparator {
  std::size_t lo;
  std::size_t hi;
};

// Batcher odd-even merge sort network for `n` items, grouped into layers of
// independent comparators. Networks for non-power-of-two sizes are the
// power-of-two network with every comparator touching a padding position
// removed; since padding keys are maximal and ties never swap, this is the
// same as sorting with max-key sentinels and stripping them.
std::vector<std::vector<Comparator>> batcher_network(std::size_t n);

// Sorts items ascending on `key`, stable only up to network tie order.
// The key bits and every payload column are permuted together.
// Each network layer costs 2 + ceil(log2 B) rounds.
void batcher_sort(ProtocolContext& ctx, BitSharedInts& key, std::vector<ShareVector>& payload);

// Obliviously permutes the rows formed by `columns` (and `bit_columns`, if
// given) by sorting on fresh random keys of 2 * ceil(log2 m) + 40 bits.
void shuffle(ProtocolContext& ctx, std::vector<ShareVector>& columns,
             BitSharedInts* bit_columns = nullptr);

// Width of the random keys shuffle() draws for m items.
std::size_t shuffle_key_width(std::size_t m);

// Maximum of a non-empty batch, by pairwise tournament.
// ceil(log2 n) levels of 2 + ceil(log2 B) rounds each.
BitSharedInts recursive_max(ProtocolContext& ctx, const BitSharedInts& values);

// Opens a batch of shared bits in one barrier. Throws RangeError if an opened
// value is not 0 or 1.
std::vector<bool> reveal_flags(ProtocolContext& ctx, const ShareVector& c);

// ceil(log2 x) for x >= 1; 0 for x <= 1.
std::size_t ceil_log2(std::size_t x);

}  // namespace sparsempc
