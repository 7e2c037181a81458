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

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <map>
#include <random>

#include "sparsempc/errors.hpp"
#include "sparsempc/fixed_point.hpp"
#include "sparsempc/shamir.hpp"
#include "sparsempc/shamir_poly.hpp"

namespace sparsempc {
namespace {

Fp share_and_open(ProtocolContext& ctx, const Fp& x) {
  std::vector<Fp> v{x};
  return reconstruct(share(ctx, v))[0];
}

ShareVector share_values(ProtocolContext& ctx, std::initializer_list<std::int64_t> xs) {
  std::vector<Fp> v;
  for (auto x : xs) v.push_back(Fp::from_int(x));
  return share(ctx, v);
}

TEST(ShamirTest, ShareRoundTrip) {
  auto ctx = ProtocolContext::spawn(3, 1, 1);
  EXPECT_EQ(share_and_open(ctx, Fp(0)), Fp(0));
  EXPECT_EQ(share_and_open(ctx, Fp(5)), Fp(5));
}

TEST(ShamirTest, UploadIsCharged) {
  auto ctx = ProtocolContext::spawn(5, 2, 1);
  share_values(ctx, {1, 2, 3});
  auto l = ctx.ledger_snapshot();
  EXPECT_EQ(l.rounds, 1u);
  EXPECT_EQ(l.elements_sent, 15u);
}

TEST(ShamirTest, AdditionMatchesPlaintext) {
  auto ctx = ProtocolContext::spawn(5, 2, 2);
  std::mt19937_64 rng(5);
  std::vector<Fp> a(100), b(100);
  for (int i = 0; i < 100; ++i) {
    a[i] = random_field_element(rng);
    b[i] = random_field_element(rng);
  }
  auto sum = reconstruct(add(share(ctx, a), share(ctx, b)));
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sum[i], a[i] + b[i]);
}

TEST(ShamirTest, ReconstructFromAnySubset) {
  auto ctx = ProtocolContext::spawn(5, 2, 3);
  auto v = share_values(ctx, {77});
  std::vector<PartyShare> subset{{PartyId{5}, v.at(4, 0)}, {PartyId{2}, v.at(1, 0)}, {PartyId{4}, v.at(3, 0)}};
  EXPECT_EQ(reconstruct(subset, 2), Fp(77));
  subset.pop_back();
  EXPECT_THROW(reconstruct(subset, 2), ReconstructionError);
}

TEST(ShamirTest, LocalProductNeedsTwoTPlusOneShares) {
  auto ctx = ProtocolContext::spawn(5, 2, 4);
  auto a = share_values(ctx, {6});
  auto b = share_values(ctx, {7});
  auto prod = local_mul(a, b);
  EXPECT_EQ(prod.degree(), 4u);
  std::vector<PartyShare> all;
  for (std::size_t p = 0; p < 5; ++p) all.push_back({PartyId{p + 1}, prod.at(p, 0)});
  EXPECT_EQ(reconstruct(all, 4), Fp(42));
}

TEST(ShamirTest, LinearOpsAreFree) {
  auto ctx = ProtocolContext::spawn(3, 1, 5);
  auto x = share_values(ctx, {2});
  CostLedger before = ctx.ledger_snapshot();
  EXPECT_EQ(reconstruct(add(x, constant(ctx, 1, Fp(0))))[0], Fp(2));
  EXPECT_EQ(reconstruct(sub(x, x))[0], Fp(0));
  EXPECT_EQ(reconstruct(scale(x, Fp(3)))[0], Fp(6));
  EXPECT_EQ(reconstruct(add_public(x, Fp(4)))[0], Fp(6));
  EXPECT_EQ(reconstruct(public_minus(Fp(1), x))[0], -Fp(1));
  EXPECT_EQ(ctx.ledger_snapshot(), before);
}

TEST(ShamirTest, ShapeMismatchThrows) {
  auto ctx = ProtocolContext::spawn(3, 1, 5);
  auto x = share_values(ctx, {2, 3});
  auto y = share_values(ctx, {2});
  EXPECT_THROW(add(x, y), ShapeError);
  EXPECT_THROW(inner_product(ctx, x, y), ShapeError);
  EXPECT_THROW(mul(ctx, local_mul(x, x), x), ShapeError);
}

TEST(ShamirTest, MultiplicationIsExact) {
  auto ctx = ProtocolContext::spawn(7, 3, 6);
  std::mt19937_64 rng(9);
  std::vector<Fp> a(64), b(64);
  for (int i = 0; i < 64; ++i) {
    a[i] = random_field_element(rng);
    b[i] = random_field_element(rng);
  }
  a[0] = Fp(0);
  b[1] = Fp(1);
  auto sa = share(ctx, a), sb = share(ctx, b);
  CostLedger before = ctx.ledger_snapshot();
  auto prod = mul(ctx, sa, sb);
  CostLedger d = ledger_delta(ctx.ledger_snapshot(), before);
  EXPECT_EQ(d.rounds, 1u);
  EXPECT_EQ(d.elements_sent, 64u * 7u * 6u);
  EXPECT_EQ(prod.degree(), 3u);
  auto out = reconstruct(prod);
  for (int i = 0; i < 64; ++i) EXPECT_EQ(out[i], a[i] * b[i]);
  EXPECT_EQ(out[0], Fp(0));
  EXPECT_EQ(out[1], a[1]);
}

TEST(ShamirTest, InnerProductExamples) {
  auto ctx = ProtocolContext::spawn(3, 1, 7);
  ShareVector empty(ctx, 0, 1);
  EXPECT_EQ(reconstruct(inner_product(ctx, empty, empty))[0], Fp(0));
  auto e1 = share_values(ctx, {1, 0, 0});
  auto e2 = share_values(ctx, {0, 1, 0});
  EXPECT_EQ(reconstruct(inner_product(ctx, e1, e2))[0], Fp(0));

  std::mt19937_64 rng(4);
  std::vector<Fp> x(8), y(8);
  Fp expected(0);
  for (int i = 0; i < 8; ++i) {
    x[i] = random_field_element(rng);
    y[i] = random_field_element(rng);
    expected += x[i] * y[i];
  }
  EXPECT_EQ(reconstruct(inner_product(ctx, share(ctx, x), share(ctx, y)))[0], expected);
}

TEST(ShamirTest, InnerProductCostIndependentOfLength) {
  auto cost = [](std::size_t len) {
    auto ctx = ProtocolContext::spawn(3, 1, 8);
    std::vector<Fp> v(len, Fp(2));
    auto s = share(ctx, v);
    CostLedger before = ctx.ledger_snapshot();
    inner_product(ctx, s, s);
    return ledger_delta(ctx.ledger_snapshot(), before);
  };
  CostLedger small = cost(8), large = cost(8192);
  EXPECT_EQ(small.elements_sent, large.elements_sent);
  EXPECT_EQ(small.rounds, 1u);
  EXPECT_EQ(large.rounds, 1u);
}

TEST(ShamirTest, OpenCost) {
  auto ctx = ProtocolContext::spawn(5, 2, 8);
  auto s = share_values(ctx, {1, 2, 3, 4});
  CostLedger before = ctx.ledger_snapshot();
  auto vals = open(ctx, s);
  CostLedger d = ledger_delta(ctx.ledger_snapshot(), before);
  EXPECT_EQ(d.rounds, 1u);
  EXPECT_EQ(d.elements_sent, 4u * 5u * 4u);
  EXPECT_EQ(d.values_opened, 4u);
  EXPECT_EQ(vals[3], Fp(4));
}

TEST(ShamirTest, RandShareRangeAndDeterminism) {
  auto draw = [](std::uint64_t seed) {
    auto ctx = ProtocolContext::spawn(3, 1, seed);
    return reconstruct(rand_share(ctx, 200, 10));
  };
  auto a = draw(1), b = draw(1), c = draw(2);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  for (const auto& v : a) EXPECT_LT(v, Fp(1024));
  auto ctx = ProtocolContext::spawn(3, 1, 3);
  CostLedger before = ctx.ledger_snapshot();
  auto bits = reconstruct(rand_bits(ctx, 100));
  EXPECT_EQ(ctx.ledger_snapshot(), before);
  for (const auto& v : bits) EXPECT_TRUE(v == Fp(0) || v == Fp(1));
}

// Two consecutive draws from a 4-bit range are independent: chi-square test
// of the 16x16 contingency table.
TEST(ShamirTest, RandShareDrawsIndependent) {
  auto ctx = ProtocolContext::spawn(3, 1, 17);
  const int kTrials = 40000;
  auto first = reconstruct(rand_share(ctx, kTrials, 4));
  auto second = reconstruct(rand_share(ctx, kTrials, 4));
  std::vector<double> table(256, 0.0), row(16, 0.0), col(16, 0.0);
  for (int i = 0; i < kTrials; ++i) {
    auto a = first[i].low64(), b = second[i].low64();
    table[a * 16 + b] += 1;
    row[a] += 1;
    col[b] += 1;
  }
  double chi2 = 0;
  for (int a = 0; a < 16; ++a) {
    for (int b = 0; b < 16; ++b) {
      double e = row[a] * col[b] / kTrials;
      chi2 += (table[a * 16 + b] - e) * (table[a * 16 + b] - e) / e;
    }
  }
  boost::math::chi_squared dist(15 * 15);
  EXPECT_GT(boost::math::cdf(complement(dist, chi2)), 0.01);
}

TEST(ShamirTest, TruncExamples) {
  auto ctx = ProtocolContext::spawn(3, 1, 10);
  const double ulp = std::ldexp(1.0, -31);
  std::vector<Fp> v{fp_encode(2.0), fp_encode(3.0), fp_encode(-1.75), fp_encode(1.0), Fp(0)};
  auto s = share(ctx, v);
  auto a = s.gather(std::vector<std::size_t>{0, 2, 4});
  auto b = s.gather(std::vector<std::size_t>{1, 3, 4});
  auto out = reconstruct(fp_mul(ctx, a, b));
  EXPECT_NEAR(fp_decode(out[0]), 6.0, ulp);
  EXPECT_NEAR(fp_decode(out[1]), -1.75, ulp);
  EXPECT_EQ(out[2], Fp(0));
}

TEST(ShamirTest, TruncErrorIsFloorOrFloorPlusOne) {
  auto ctx = ProtocolContext::spawn(5, 2, 12);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-700.0, 700.0);
  std::vector<Fp> a(500), b(500);
  std::vector<__int128> raw(500);
  for (int i = 0; i < 500; ++i) {
    a[i] = fp_encode(u(rng));
    b[i] = fp_encode(u(rng));
    raw[i] = fp_centered(a[i]) * fp_centered(b[i]);
  }
  auto out = reconstruct(fp_mul(ctx, share(ctx, a), share(ctx, b)));
  for (int i = 0; i < 500; ++i) {
    __int128 exact = raw[i] >> 32;  // floor
    __int128 got = fp_centered(out[i]);
    EXPECT_TRUE(got == exact || got == exact + 1);
  }
}

TEST(ShamirTest, TruncCostIsOneOpen) {
  auto ctx = ProtocolContext::spawn(3, 1, 10);
  auto s = share_values(ctx, {1, 2, 3});
  CostLedger before = ctx.ledger_snapshot();
  trunc(ctx, s);
  CostLedger d = ledger_delta(ctx.ledger_snapshot(), before);
  EXPECT_EQ(d.rounds, 1u);
  EXPECT_EQ(d.elements_sent, 3u * 6u);
}

TEST(ShamirTest, GatherSliceScatterAppend) {
  auto ctx = ProtocolContext::spawn(3, 1, 11);
  auto s = share_values(ctx, {10, 11, 12, 13});
  auto g = s.gather(std::vector<std::size_t>{3, 0});
  EXPECT_EQ(reconstruct(g), (std::vector<Fp>{Fp(13), Fp(10)}));
  auto sl = s.slice(1, 2);
  EXPECT_EQ(reconstruct(sl), (std::vector<Fp>{Fp(11), Fp(12)}));
  s.scatter(std::vector<std::size_t>{0, 1}, g);
  EXPECT_EQ(reconstruct(s), (std::vector<Fp>{Fp(13), Fp(10), Fp(12), Fp(13)}));
  auto c = concat(sl, g);
  EXPECT_EQ(c.size(), 4u);
  EXPECT_EQ(reconstruct(c)[3], Fp(10));
  EXPECT_THROW(s.slice(3, 2), ShapeError);
}

TEST(ShamirTest, StorageMeterTracksLifetimes) {
  auto ctx = ProtocolContext::spawn(3, 1, 11);
  auto base = ctx.storage_meter()->live;
  {
    ShareVector v(ctx, 10, 1);
    EXPECT_EQ(ctx.storage_meter()->live, base + 10);
    ShareVector w = v;
    EXPECT_EQ(ctx.storage_meter()->live, base + 20);
    ShareVector z = std::move(w);
    EXPECT_EQ(ctx.storage_meter()->live, base + 20);
    z.resize(4);
    EXPECT_EQ(ctx.storage_meter()->live, base + 14);
  }
  EXPECT_EQ(ctx.storage_meter()->live, base);
}

// Any t shares are independent of the secret. Uses a 7-element field so the
// joint distribution of t = 2 shares has only 49 cells.
TEST(ShamirSecrecyTest, TSharesIndependentOfSecret) {
  using F = SmallField<7>;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::uint32_t> coef(0, 6);
  auto draw = [&] { return F(coef(rng)); };
  const int kTrials = 100000;
  const std::vector<std::uint32_t> secrets{0, 3};
  std::vector<std::vector<double>> counts(secrets.size(), std::vector<double>(49, 0.0));
  for (std::size_t s = 0; s < secrets.size(); ++s) {
    for (int i = 0; i < kTrials; ++i) {
      auto shares = share_polynomial(F(secrets[s]), 2, 5, draw);
      counts[s][shares[1].value() * 7 + shares[3].value()] += 1;
    }
  }
  double chi2 = 0;
  for (int cell = 0; cell < 49; ++cell) {
    double total = counts[0][cell] + counts[1][cell];
    for (std::size_t s = 0; s < secrets.size(); ++s) {
      double e = total / 2;
      chi2 += (counts[s][cell] - e) * (counts[s][cell] - e) / e;
    }
  }
  boost::math::chi_squared dist(48);
  EXPECT_GT(boost::math::cdf(complement(dist, chi2)), 0.01);
}

TEST(ShamirSecrecyTest, SmallFieldInterpolation) {
  using F = SmallField<101>;
  std::mt19937_64 rng(1);
  auto draw = [&] { return F(rng() % 101); };
  auto shares = share_polynomial(F(42), 2, 5, draw);
  std::vector<std::size_t> pts{1, 3, 5};
  std::vector<F> vals{shares[0], shares[2], shares[4]};
  EXPECT_EQ(interpolate_at_zero<F>(pts, vals), F(42));
}

}  // namespace
}  // namespace sparsempc
