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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "sparsempc/errors.hpp"
#include "sparsempc/oblivious.hpp"

namespace sparsempc {
namespace {

std::vector<std::uint64_t> open_flags(const ShareVector& v) {
  std::vector<std::uint64_t> out;
  for (const auto& x : reconstruct(v)) out.push_back(x.low64());
  return out;
}

std::vector<std::uint64_t> random_values(std::mt19937_64& rng, std::size_t n, std::size_t width) {
  std::vector<std::uint64_t> v(n);
  for (auto& x : v) x = width == 64 ? rng() : rng() & ((std::uint64_t{1} << width) - 1);
  return v;
}

TEST(BitSharedIntsTest, ShareAndValue) {
  auto ctx = ProtocolContext::spawn(3, 1, 1);
  std::vector<std::uint64_t> v{0, 1, 5, 127};
  auto b = share_bits(ctx, v, 7);
  EXPECT_EQ(b.width(), 7u);
  EXPECT_EQ(b.size(), 4u);
  EXPECT_EQ(reconstruct_bits(b), v);
  auto arith = reconstruct(b.value());
  EXPECT_EQ(arith[3], Fp(127));
  EXPECT_EQ(ctx.ledger_snapshot().elements_sent, 4u * 7u * 3u);
  EXPECT_THROW(share_bits(ctx, std::vector<std::uint64_t>{128}, 7), RangeError);
}

TEST(BitSharedIntsTest, CompositeKeyOrdersPrimaryFirst) {
  auto ctx = ProtocolContext::spawn(3, 1, 1);
  std::vector<std::uint64_t> hi{1, 2}, lo{3, 0};
  std::vector<BitSharedInts> parts{constant_bits(ctx, hi, 2), constant_bits(ctx, lo, 3)};
  auto key = composite_key(parts);
  EXPECT_EQ(key.width(), 5u);
  EXPECT_EQ(reconstruct_bits(key), (std::vector<std::uint64_t>{(1u << 3) | 3u, 2u << 3}));
}

TEST(ComparisonTest, EqExamples) {
  auto ctx = ProtocolContext::spawn(3, 1, 2);
  std::vector<std::uint64_t> a{5, 0, 9}, b{5, 1, 9};
  auto eq = eq_bits(ctx, share_bits(ctx, a, 4), share_bits(ctx, b, 4));
  EXPECT_EQ(open_flags(eq), (std::vector<std::uint64_t>{1, 0, 1}));
}

TEST(ComparisonTest, EqMatchesPlaintextOnRandomPairs) {
  auto ctx = ProtocolContext::spawn(5, 2, 3);
  std::mt19937_64 rng(3);
  auto a = random_values(rng, 200, 6);
  auto b = random_values(rng, 200, 6);
  for (std::size_t i = 0; i < 200; i += 3) b[i] = a[i];
  auto eq = open_flags(eq_bits(ctx, share_bits(ctx, a, 6), share_bits(ctx, b, 6)));
  for (std::size_t i = 0; i < 200; ++i) EXPECT_EQ(eq[i], a[i] == b[i] ? 1u : 0u);
}

TEST(ComparisonTest, LtExamples) {
  auto ctx = ProtocolContext::spawn(3, 1, 4);
  std::vector<std::uint64_t> a{7, 0, 200}, b{7, 255, 13};
  auto lt = lt_bits(ctx, share_bits(ctx, a, 8), share_bits(ctx, b, 8));
  EXPECT_EQ(open_flags(lt), (std::vector<std::uint64_t>{0, 1, 0}));
}

TEST(ComparisonTest, LtMatchesPlaintextAcrossWidths) {
  std::mt19937_64 rng(5);
  for (std::size_t width : {1u, 2u, 3u, 5u, 8u, 13u, 33u, 64u}) {
    auto ctx = ProtocolContext::spawn(3, 1, width);
    auto a = random_values(rng, 300, width);
    auto b = random_values(rng, 300, width);
    for (std::size_t i = 0; i < 300; i += 7) b[i] = a[i];
    auto lt = open_flags(lt_bits(ctx, share_bits(ctx, a, width), share_bits(ctx, b, width)));
    for (std::size_t i = 0; i < 300; ++i) ASSERT_EQ(lt[i], a[i] < b[i] ? 1u : 0u) << "width " << width;
  }
}

TEST(ComparisonTest, RoundCounts) {
  for (std::size_t width : {1u, 2u, 4u, 7u, 8u, 16u, 40u}) {
    auto ctx = ProtocolContext::spawn(3, 1, 6);
    std::vector<std::uint64_t> a(10, 1), b(10, 0);
    auto sa = share_bits(ctx, a, width), sb = share_bits(ctx, b, width);
    auto before = ctx.ledger_snapshot().rounds;
    eq_bits(ctx, sa, sb);
    auto mid = ctx.ledger_snapshot().rounds;
    lt_bits(ctx, sa, sb);
    auto after_lt = ctx.ledger_snapshot().rounds;
    is_zero_bits(ctx, sa);
    auto end = ctx.ledger_snapshot().rounds;
    EXPECT_EQ(mid - before, 1 + ceil_log2(width));
    EXPECT_EQ(after_lt - mid, 1 + ceil_log2(width));
    EXPECT_EQ(end - after_lt, ceil_log2(width));
  }
}

TEST(ComparisonTest, IsZero) {
  auto ctx = ProtocolContext::spawn(3, 1, 6);
  std::vector<std::uint64_t> a{0, 1, 8, 0};
  EXPECT_EQ(open_flags(is_zero_bits(ctx, share_bits(ctx, a, 4))), (std::vector<std::uint64_t>{1, 0, 0, 1}));
}

TEST(ComparisonTest, WidthMismatchThrows) {
  auto ctx = ProtocolContext::spawn(3, 1, 6);
  std::vector<std::uint64_t> a{1};
  EXPECT_THROW(eq_bits(ctx, share_bits(ctx, a, 3), share_bits(ctx, a, 4)), ShapeError);
  EXPECT_THROW(lt_bits(ctx, share_bits(ctx, a, 3), share_bits(ctx, a, 4)), ShapeError);
}

TEST(SelectTest, SelectsComponentWise) {
  auto ctx = ProtocolContext::spawn(3, 1, 7);
  std::vector<Fp> cvals{Fp(1), Fp(0), Fp(1)};
  auto c = share(ctx, cvals);
  std::vector<Fp> a0{Fp(1), Fp(2), Fp(3)}, a1{Fp(10), Fp(20), Fp(30)};
  std::vector<Fp> b0{Fp(4), Fp(5), Fp(6)}, b1{Fp(40), Fp(50), Fp(60)};
  std::vector<ShareVector> a{share(ctx, a0), share(ctx, a1)}, b{share(ctx, b0), share(ctx, b1)};
  auto before = ctx.ledger_snapshot().rounds;
  auto out = select(ctx, c, a, b);
  EXPECT_EQ(ctx.ledger_snapshot().rounds - before, 1u);
  EXPECT_EQ(reconstruct(out[0]), (std::vector<Fp>{Fp(1), Fp(5), Fp(3)}));
  EXPECT_EQ(reconstruct(out[1]), (std::vector<Fp>{Fp(10), Fp(50), Fp(30)}));
}

TEST(SelectTest, CondSwap) {
  auto ctx = ProtocolContext::spawn(3, 1, 8);
  std::mt19937_64 rng(8);
  std::vector<Fp> cv(50), xv(50), yv(50);
  for (int i = 0; i < 50; ++i) {
    cv[i] = Fp(rng() & 1);
    xv[i] = random_field_element(rng);
    yv[i] = random_field_element(rng);
  }
  std::vector<ShareVector> x{share(ctx, xv)}, y{share(ctx, yv)};
  cond_swap(ctx, share(ctx, cv), x, y);
  auto xo = reconstruct(x[0]), yo = reconstruct(y[0]);
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(xo[i], cv[i] == Fp(1) ? yv[i] : xv[i]);
    EXPECT_EQ(yo[i], cv[i] == Fp(1) ? xv[i] : yv[i]);
  }
}

// 0-1 principle: a comparator network sorts every input iff it sorts every
// 0/1 input.
TEST(BatcherNetworkTest, SortsAllBinaryInputs) {
  for (std::size_t n = 0; n <= 18; ++n) {
    auto net = batcher_network(n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1;
      for (const auto& layer : net) {
        for (const auto& c : layer) {
          ASSERT_LT(c.lo, c.hi);
          ASSERT_LT(c.hi, n);
          if (v[c.hi] < v[c.lo]) std::swap(v[c.lo], v[c.hi]);
        }
      }
      ASSERT_TRUE(std::is_sorted(v.begin(), v.end())) << "n=" << n << " mask=" << mask;
    }
  }
}

TEST(BatcherNetworkTest, LayersAreIndependent) {
  for (std::size_t n : {5u, 16u, 100u, 1000u}) {
    for (const auto& layer : batcher_network(n)) {
      std::vector<int> used(n, 0);
      for (const auto& c : layer) {
        ASSERT_EQ(used[c.lo]++, 0);
        ASSERT_EQ(used[c.hi]++, 0);
      }
    }
    std::size_t L = ceil_log2(n);
    EXPECT_EQ(batcher_network(1u << L).size(), L * (L + 1) / 2);
  }
}

struct SortCase {
  std::vector<std::uint64_t> keys;
  std::size_t width;
};

void check_sort(const SortCase& sc, std::uint64_t seed) {
  auto ctx = ProtocolContext::spawn(3, 1, seed);
  auto key = share_bits(ctx, sc.keys, sc.width);
  std::vector<Fp> tag(sc.keys.size());
  for (std::size_t i = 0; i < tag.size(); ++i) tag[i] = Fp(sc.keys[i] * 1000 + i);
  std::vector<ShareVector> payload{share(ctx, tag)};
  batcher_sort(ctx, key, payload);
  auto sorted_keys = reconstruct_bits(key);
  auto expect = sc.keys;
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(sorted_keys, expect);
  auto tags = reconstruct(payload[0]);
  std::vector<std::uint64_t> got, want;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    EXPECT_EQ(tags[i].low64() / 1000, sorted_keys[i]);
    got.push_back(tags[i].low64());
    want.push_back(tag[i].low64());
  }
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
}

TEST(BatcherSortTest, Examples) {
  check_sort({{1, 2, 3, 4, 5, 6, 7, 8}, 4}, 1);
  check_sort({{8, 7, 6, 5, 4, 3, 2, 1}, 4}, 2);
  check_sort({{3, 1, 3, 0, 1, 3, 0}, 2}, 3);
  check_sort({{}, 3}, 4);
  check_sort({{5}, 3}, 5);
  check_sort({{7, 7, 7}, 3}, 6);
}

TEST(BatcherSortTest, RandomInstances) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 1 + rng() % 40;
    std::size_t width = 1 + rng() % 9;
    check_sort({random_values(rng, n, width), width}, 100 + trial);
  }
}

TEST(BatcherSortTest, RoundsWithinEnvelope) {
  const std::size_t width = 8;
  std::vector<double> rounds;
  for (std::size_t m : {8u, 32u, 128u, 512u}) {
    auto ctx = ProtocolContext::spawn(3, 1, 9);
    std::vector<std::uint64_t> keys(m);
    for (std::size_t i = 0; i < m; ++i) keys[i] = (m - i) % 256;
    auto key = share_bits(ctx, keys, width);
    std::vector<ShareVector> payload;
    auto before = ctx.ledger_snapshot().rounds;
    batcher_sort(ctx, key, payload);
    double r = static_cast<double>(ctx.ledger_snapshot().rounds - before);
    double lg = std::log2(static_cast<double>(m));
    // One layer per (p, k) pair, 2 + log2 B barriers per layer.
    EXPECT_EQ(r, lg * (lg + 1) / 2 * (2 + std::log2(width)));
    EXPECT_LE(r, 2.0 * lg * lg * std::log2(width) + 10);
  }
}

TEST(ShuffleTest, EmptyAndSingleton) {
  auto ctx = ProtocolContext::spawn(3, 1, 1);
  std::vector<ShareVector> none{ShareVector(ctx, 0, 1)};
  shuffle(ctx, none);
  EXPECT_EQ(none[0].size(), 0u);
  std::vector<Fp> one{Fp(9)};
  std::vector<ShareVector> single{share(ctx, one)};
  auto before = ctx.ledger_snapshot();
  shuffle(ctx, single);
  EXPECT_EQ(reconstruct(single[0])[0], Fp(9));
  EXPECT_EQ(ctx.ledger_snapshot(), before);
}

TEST(ShuffleTest, PreservesTuplesAndMultiset) {
  auto ctx = ProtocolContext::spawn(5, 2, 2);
  std::vector<Fp> a(30), b(30);
  std::vector<std::uint64_t> c(30);
  for (std::size_t i = 0; i < 30; ++i) {
    a[i] = Fp(i);
    b[i] = Fp(100 + i);
    c[i] = i;
  }
  std::vector<ShareVector> cols{share(ctx, a), share(ctx, b)};
  auto bits = share_bits(ctx, c, 5);
  shuffle(ctx, cols, &bits);
  auto ra = reconstruct(cols[0]), rb = reconstruct(cols[1]);
  auto rc = reconstruct_bits(bits);
  std::vector<std::uint64_t> seen;
  for (std::size_t i = 0; i < 30; ++i) {
    EXPECT_EQ(rb[i], ra[i] + Fp(100));
    EXPECT_EQ(rc[i], ra[i].low64());
    seen.push_back(ra[i].low64());
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(seen[i], i);
}

TEST(ShuffleTest, LedgerDependsOnlyOnLength) {
  auto run = [](std::uint64_t offset) {
    auto ctx = ProtocolContext::spawn(3, 1, 5);
    std::vector<Fp> v(20);
    for (std::size_t i = 0; i < 20; ++i) v[i] = Fp(offset * i * i + 3);
    std::vector<ShareVector> cols{share(ctx, v)};
    shuffle(ctx, cols);
    return ctx.ledger_snapshot();
  };
  EXPECT_EQ(run(1), run(77));
}

TEST(ShuffleTest, FourElementPermutationsRoughlyUniform) {
  auto ctx = ProtocolContext::spawn(3, 1, 99);
  const int kTrials = 2400;
  std::map<std::vector<std::uint64_t>, int> freq;
  std::vector<Fp> v{Fp(0), Fp(1), Fp(2), Fp(3)};
  for (int t = 0; t < kTrials; ++t) {
    std::vector<ShareVector> cols{constant(ctx, v)};
    shuffle(ctx, cols);
    auto out = reconstruct(cols[0]);
    std::vector<std::uint64_t> perm;
    for (const auto& x : out) perm.push_back(x.low64());
    freq[perm]++;
  }
  EXPECT_EQ(freq.size(), 24u);
  const double p = 1.0 / 24, sigma = std::sqrt(p * (1 - p) / kTrials);
  for (const auto& [perm, count] : freq) {
    EXPECT_NEAR(static_cast<double>(count) / kTrials, p, 5 * sigma);
  }
}

TEST(RecursiveMaxTest, Examples) {
  auto ctx = ProtocolContext::spawn(3, 1, 4);
  std::vector<std::uint64_t> one{42};
  EXPECT_EQ(reconstruct_bits(recursive_max(ctx, share_bits(ctx, one, 8)))[0], 42u);
  std::vector<std::uint64_t> same(7, 9);
  EXPECT_EQ(reconstruct_bits(recursive_max(ctx, share_bits(ctx, same, 8)))[0], 9u);
  EXPECT_THROW(recursive_max(ctx, BitSharedInts(ctx, 0, 4)), ShapeError);
}

TEST(RecursiveMaxTest, RandomListsAndLogRounds) {
  std::mt19937_64 rng(6);
  std::vector<double> rounds;
  for (std::size_t n : {2u, 8u, 64u, 512u, 37u}) {
    auto ctx = ProtocolContext::spawn(3, 1, n);
    auto values = random_values(rng, n, 16);
    auto shared = share_bits(ctx, values, 16);
    auto before = ctx.ledger_snapshot().rounds;
    auto mx = recursive_max(ctx, shared);
    auto r = ctx.ledger_snapshot().rounds - before;
    EXPECT_EQ(reconstruct_bits(mx)[0], *std::max_element(values.begin(), values.end()));
    EXPECT_EQ(r, ceil_log2(n) * (2 + ceil_log2(16)));
  }
}

TEST(RevealFlagsTest, OpensBatchInOneRound) {
  auto ctx = ProtocolContext::spawn(3, 1, 4);
  std::vector<Fp> v{Fp(1), Fp(0), Fp(1), Fp(1)};
  auto s = share(ctx, v);
  auto before = ctx.ledger_snapshot().rounds;
  auto flags = reveal_flags(ctx, s);
  EXPECT_EQ(ctx.ledger_snapshot().rounds - before, 1u);
  EXPECT_EQ(flags, (std::vector<bool>{true, false, true, true}));
  std::vector<Fp> bad{Fp(2)};
  EXPECT_THROW(reveal_flags(ctx, share(ctx, bad)), RangeError);
}

}  // namespace
}  // namespace sparsempc
