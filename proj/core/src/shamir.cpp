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

#include "sparsempc/shamir.hpp"

#include <algorithm>

#include "sparsempc/errors.hpp"
#include "sparsempc/fixed_point.hpp"
#include "sparsempc/shamir_poly.hpp"

namespace sparsempc {

// ---- ShareVector ----------------------------------------------------------

ShareVector::ShareVector(const ProtocolContext& ctx, std::size_t length, std::size_t degree)
    : shares_(ctx.num_parties(), std::vector<Fp>(length)),
      length_(length),
      degree_(degree),
      meter_(ctx.storage_meter()) {
  track(static_cast<std::int64_t>(length_));
}

ShareVector::ShareVector(std::shared_ptr<StorageMeter> meter, std::size_t parties,
                         std::size_t length, std::size_t degree)
    : shares_(parties, std::vector<Fp>(length)),
      length_(length),
      degree_(degree),
      meter_(std::move(meter)) {
  track(static_cast<std::int64_t>(length_));
}

ShareVector::~ShareVector() { track(-static_cast<std::int64_t>(length_)); }

ShareVector::ShareVector(const ShareVector& other)
    : shares_(other.shares_), length_(other.length_), degree_(other.degree_), meter_(other.meter_) {
  track(static_cast<std::int64_t>(length_));
}

ShareVector& ShareVector::operator=(const ShareVector& other) {
  if (this == &other) return *this;
  track(-static_cast<std::int64_t>(length_));
  shares_ = other.shares_;
  length_ = other.length_;
  degree_ = other.degree_;
  meter_ = other.meter_;
  track(static_cast<std::int64_t>(length_));
  return *this;
}

ShareVector::ShareVector(ShareVector&& other) noexcept
    : shares_(std::move(other.shares_)),
      length_(other.length_),
      degree_(other.degree_),
      meter_(std::move(other.meter_)) {
  other.length_ = 0;
  other.shares_.clear();
}

ShareVector& ShareVector::operator=(ShareVector&& other) noexcept {
  if (this == &other) return *this;
  track(-static_cast<std::int64_t>(length_));
  shares_ = std::move(other.shares_);
  length_ = other.length_;
  degree_ = other.degree_;
  meter_ = std::move(other.meter_);
  other.length_ = 0;
  other.shares_.clear();
  return *this;
}

void ShareVector::track(std::int64_t delta) {
  if (meter_) meter_->live += delta;
}

ShareVector ShareVector::gather(std::span<const std::size_t> indices) const {
  ShareVector out(meter_, shares_.size(), indices.size(), degree_);
  for (std::size_t p = 0; p < shares_.size(); ++p) {
    for (std::size_t i = 0; i < indices.size(); ++i) out.shares_[p][i] = shares_[p].at(indices[i]);
  }
  return out;
}

ShareVector ShareVector::slice(std::size_t begin, std::size_t count) const {
  if (begin + count > length_) throw ShapeError("slice out of range");
  ShareVector out(meter_, shares_.size(), count, degree_);
  for (std::size_t p = 0; p < shares_.size(); ++p) {
    std::copy_n(shares_[p].begin() + static_cast<std::ptrdiff_t>(begin), count, out.shares_[p].begin());
  }
  return out;
}

void ShareVector::scatter(std::span<const std::size_t> indices, const ShareVector& values) {
  if (indices.size() != values.size()) throw ShapeError("scatter length mismatch");
  if (values.degree_ != degree_ && !values.empty()) throw ShapeError("scatter degree mismatch");
  for (std::size_t p = 0; p < shares_.size(); ++p) {
    for (std::size_t i = 0; i < indices.size(); ++i) shares_[p].at(indices[i]) = values.shares_[p][i];
  }
}

void ShareVector::append(const ShareVector& tail) {
  if (tail.empty()) return;
  if (length_ == 0 && shares_.empty()) {
    *this = tail;
    return;
  }
  if (tail.parties() != parties()) throw ShapeError("append party count mismatch");
  if (length_ > 0 && tail.degree_ != degree_) throw ShapeError("append degree mismatch");
  if (length_ == 0) degree_ = tail.degree_;
  for (std::size_t p = 0; p < shares_.size(); ++p) {
    shares_[p].insert(shares_[p].end(), tail.shares_[p].begin(), tail.shares_[p].end());
  }
  length_ += tail.length_;
  track(static_cast<std::int64_t>(tail.length_));
}

void ShareVector::resize(std::size_t length) {
  for (auto& s : shares_) s.resize(length);
  track(static_cast<std::int64_t>(length) - static_cast<std::int64_t>(length_));
  length_ = length;
}

ShareVector concat(const ShareVector& a, const ShareVector& b) {
  ShareVector out = a;
  out.append(b);
  return out;
}

// ---- sharing and opening --------------------------------------------------

namespace {

// Shares secrets with fresh degree-t polynomials drawn from `rng`.
ShareVector share_with(const ProtocolContext& ctx, std::span<const Fp> secrets,
                       std::mt19937_64& rng) {
  ShareVector out(ctx, secrets.size(), ctx.threshold());
  auto draw = [&rng] { return random_field_element(rng); };
  for (std::size_t i = 0; i < secrets.size(); ++i) {
    auto evals = share_polynomial(secrets[i], ctx.threshold(), ctx.num_parties(), draw);
    for (std::size_t p = 0; p < evals.size(); ++p) out.at(p, i) = evals[p];
  }
  return out;
}

ShareVector dealer_share(ProtocolContext& ctx, std::span<const Fp> secrets) {
  return share_with(ctx, secrets, ctx.dealer_rng());
}

// A Lagrange coefficient split so that the common small integer case avoids
// a full field product. Coefficients at x = 0 for points 1..k are signed
// binomials.
struct Coefficient {
  Fp value;
  std::uint64_t magnitude = 0;
  bool small = false;
  bool negative = false;

  explicit Coefficient(const Fp& v) : value(v) {
    Fp neg = -v;
    if (v.bit_length() <= 64) {
      small = true;
      magnitude = v.low64();
    } else if (neg.bit_length() <= 64) {
      small = true;
      negative = true;
      magnitude = neg.low64();
    }
  }

  void accumulate(Fp& acc, const Fp& x) const {
    if (!small) {
      acc += value * x;
      return;
    }
    Fp term = x;
    term.mul_small(magnitude);
    if (negative) {
      acc -= term;
    } else {
      acc += term;
    }
  }
};

std::vector<Coefficient> split_coefficients(const std::vector<Fp>& lambda) {
  return std::vector<Coefficient>(lambda.begin(), lambda.end());
}

void require_same_shape(const ShareVector& a, const ShareVector& b, const char* op) {
  if (a.size() != b.size()) throw ShapeError(std::string(op) + ": length mismatch");
  if (a.degree() != b.degree() && !a.empty()) throw ShapeError(std::string(op) + ": degree mismatch");
}

}  // namespace

ShareVector share(ProtocolContext& ctx, std::span<const Fp> secrets) {
  ShareVector out = share_with(ctx, secrets, ctx.owner_rng());
  ctx.charge_upload(static_cast<std::uint64_t>(secrets.size()) * ctx.num_parties());
  return out;
}

ShareVector constant(const ProtocolContext& ctx, std::size_t length, const Fp& value) {
  ShareVector out(ctx, length, ctx.threshold());
  for (std::size_t p = 0; p < ctx.num_parties(); ++p) std::fill(out.party(p).begin(), out.party(p).end(), value);
  return out;
}

ShareVector constant(const ProtocolContext& ctx, std::span<const Fp> values) {
  ShareVector out(ctx, values.size(), ctx.threshold());
  for (std::size_t p = 0; p < ctx.num_parties(); ++p) std::copy(values.begin(), values.end(), out.party(p).begin());
  return out;
}

std::vector<Fp> open(ProtocolContext& ctx, const ShareVector& v) {
  const std::size_t n = ctx.num_parties();
  std::vector<Message> batch;
  batch.reserve(n * (n - 1));
  for (std::size_t from = 0; from < n; ++from) {
    for (std::size_t to = 0; to < n; ++to) {
      if (from == to) continue;
      batch.push_back({from, to, std::vector<Fp>(v.party(from).begin(), v.party(from).end())});
    }
  }
  auto inbox = ctx.exchange(std::move(batch));
  ctx.note_opened(v.size());
  if (v.empty()) return {};
  // Party 0 interpolates from its own share and those of parties 2..d+1.
  const std::size_t need = v.degree() + 1;
  if (need > n) throw ReconstructionError("degree too high to open");
  std::vector<std::span<const Fp>> columns(need);
  columns[0] = v.party(0);
  for (const auto& m : inbox[0]) {
    if (m.from < need) columns[m.from] = m.payload;
  }
  const auto lambda = split_coefficients(ctx.lagrange_at_zero(need));
  std::vector<Fp> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Fp acc(0);
    for (std::size_t k = 0; k < need; ++k) lambda[k].accumulate(acc, columns[k][i]);
    out[i] = acc;
  }
  return out;
}

Fp reconstruct(std::span<const PartyShare> shares, std::size_t degree) {
  if (shares.size() < degree + 1) {
    throw ReconstructionError("need " + std::to_string(degree + 1) + " shares, got " +
                              std::to_string(shares.size()));
  }
  std::vector<std::size_t> points(degree + 1);
  std::vector<Fp> values(degree + 1);
  for (std::size_t i = 0; i <= degree; ++i) {
    points[i] = shares[i].party.index;
    values[i] = shares[i].value;
  }
  return interpolate_at_zero<Fp>(points, values);
}

std::vector<Fp> reconstruct(const ShareVector& v) {
  std::vector<Fp> out(v.size());
  if (v.empty()) return out;
  const std::size_t need = v.degree() + 1;
  if (need > v.parties()) throw ReconstructionError("degree too high to reconstruct");
  std::vector<std::size_t> points(need);
  for (std::size_t k = 0; k < need; ++k) points[k] = k + 1;
  auto lambda = lagrange_coefficients_at_zero<Fp>(points);
  for (std::size_t i = 0; i < v.size(); ++i) {
    Fp acc(0);
    for (std::size_t k = 0; k < need; ++k) acc += lambda[k] * v.at(k, i);
    out[i] = acc;
  }
  return out;
}

// ---- local linear operations ----------------------------------------------

ShareVector add(const ShareVector& a, const ShareVector& b) {
  require_same_shape(a, b, "add");
  ShareVector out = a;
  for (std::size_t p = 0; p < a.parties(); ++p) {
    auto o = out.party(p);
    auto y = b.party(p);
    for (std::size_t i = 0; i < o.size(); ++i) o[i] += y[i];
  }
  return out;
}

ShareVector sub(const ShareVector& a, const ShareVector& b) {
  require_same_shape(a, b, "sub");
  ShareVector out = a;
  for (std::size_t p = 0; p < a.parties(); ++p) {
    auto o = out.party(p);
    auto y = b.party(p);
    for (std::size_t i = 0; i < o.size(); ++i) o[i] -= y[i];
  }
  return out;
}

ShareVector scale(const ShareVector& a, const Fp& c) {
  ShareVector out = a;
  for (std::size_t p = 0; p < a.parties(); ++p) {
    for (auto& x : out.party(p)) x *= c;
  }
  return out;
}

ShareVector scale(const ShareVector& a, std::span<const Fp> c) {
  if (c.size() != a.size()) throw ShapeError("scale: length mismatch");
  ShareVector out = a;
  for (std::size_t p = 0; p < a.parties(); ++p) {
    auto o = out.party(p);
    for (std::size_t i = 0; i < o.size(); ++i) o[i] *= c[i];
  }
  return out;
}

ShareVector add_public(const ShareVector& a, const Fp& c) {
  ShareVector out = a;
  for (std::size_t p = 0; p < a.parties(); ++p) {
    for (auto& x : out.party(p)) x += c;
  }
  return out;
}

ShareVector public_minus(const Fp& c, const ShareVector& a) {
  ShareVector out = a;
  for (std::size_t p = 0; p < a.parties(); ++p) {
    for (auto& x : out.party(p)) x = c - x;
  }
  return out;
}

ShareVector local_mul(const ShareVector& a, const ShareVector& b) {
  require_same_shape(a, b, "local_mul");
  ShareVector out = a;
  out.set_degree(a.degree() + b.degree());
  for (std::size_t p = 0; p < a.parties(); ++p) {
    auto o = out.party(p);
    auto y = b.party(p);
    for (std::size_t i = 0; i < o.size(); ++i) o[i] *= y[i];
  }
  return out;
}

// ---- communicating operations ---------------------------------------------

ShareVector reshare(ProtocolContext& ctx, const ShareVector& v) {
  const std::size_t n = ctx.num_parties();
  const std::size_t t = ctx.threshold();
  const std::size_t dealers = v.degree() + 1;
  if (dealers > n) throw ShapeError("reshare: degree exceeds 2t");
  ShareVector out(ctx, v.size(), t);
  if (v.empty()) return out;

  // sub[d][j] holds dealer d's sub-shares destined to party j.
  std::vector<std::vector<std::vector<Fp>>> sub(dealers,
                                                std::vector<std::vector<Fp>>(n, std::vector<Fp>(v.size())));
  std::vector<Fp> coeffs(t);
  for (std::size_t d = 0; d < dealers; ++d) {
    auto& rng = ctx.party_rng(d);
    auto local = v.party(d);
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (auto& c : coeffs) c = random_field_element(rng);
      for (std::size_t j = 0; j < n; ++j) {
        // Horner evaluation at the small point x = j + 1.
        Fp acc = coeffs[t - 1];
        for (std::size_t k = t - 1; k-- > 0;) {
          acc.mul_small(j + 1);
          acc += coeffs[k];
        }
        acc.mul_small(j + 1);
        sub[d][j][i] = acc + local[i];
      }
    }
  }
  std::vector<Message> batch;
  for (std::size_t d = 0; d < dealers; ++d) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != d) batch.push_back({d, j, std::move(sub[d][j])});
    }
  }
  auto inbox = ctx.exchange(std::move(batch));

  const auto lambda = split_coefficients(ctx.lagrange_at_zero(dealers));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<const std::vector<Fp>*> from(dealers, nullptr);
    if (j < dealers) from[j] = &sub[j][j];
    for (const auto& m : inbox[j]) from[m.from] = &m.payload;
    auto o = out.party(j);
    for (std::size_t i = 0; i < v.size(); ++i) {
      Fp acc(0);
      for (std::size_t d = 0; d < dealers; ++d) lambda[d].accumulate(acc, (*from[d])[i]);
      o[i] = acc;
    }
  }
  return out;
}

ShareVector mul(ProtocolContext& ctx, const ShareVector& a, const ShareVector& b) {
  if (a.degree() != ctx.threshold() || b.degree() != ctx.threshold()) {
    throw ShapeError("mul: operands must be degree-t shares");
  }
  return reshare(ctx, local_mul(a, b));
}

std::vector<ShareVector> mul_batch(ProtocolContext& ctx, std::span<const ShareVector> a,
                                   std::span<const ShareVector> b) {
  if (a.size() != b.size()) throw ShapeError("mul_batch: operand count mismatch");
  ShareVector lhs(ctx, 0, ctx.threshold()), rhs(ctx, 0, ctx.threshold());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) throw ShapeError("mul_batch: length mismatch");
    lhs.append(a[i]);
    rhs.append(b[i]);
  }
  ShareVector prod = mul(ctx, lhs, rhs);
  std::vector<ShareVector> out;
  out.reserve(a.size());
  std::size_t offset = 0;
  for (const auto& x : a) {
    out.push_back(prod.slice(offset, x.size()));
    offset += x.size();
  }
  return out;
}

ShareVector inner_product(ProtocolContext& ctx, const ShareVector& xs, const ShareVector& ys) {
  if (xs.size() != ys.size()) throw ShapeError("inner_product: length mismatch");
  if (!xs.empty() && (xs.degree() != ctx.threshold() || ys.degree() != ctx.threshold())) {
    throw ShapeError("inner_product: operands must be degree-t shares");
  }
  ShareVector acc(ctx, 1, 2 * ctx.threshold());
  for (std::size_t p = 0; p < ctx.num_parties(); ++p) {
    auto x = xs.party(p);
    auto y = ys.party(p);
    Fp s(0);
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    acc.at(p, 0) = s;
  }
  return reshare(ctx, acc);
}

ShareVector rand_share(ProtocolContext& ctx, std::size_t count, int bits) {
  std::vector<Fp> secrets(count);
  for (auto& s : secrets) {
    s = bits == 0 ? random_field_element(ctx.dealer_rng()) : random_below_pow2(ctx.dealer_rng(), bits);
  }
  return dealer_share(ctx, secrets);
}

ShareVector rand_bits(ProtocolContext& ctx, std::size_t count) { return rand_share(ctx, count, 1); }

ShareVector trunc(ProtocolContext& ctx, const ShareVector& x) {
  constexpr int kFrac = FixedPointParams::kFracBits;
  constexpr int kBound = FixedPointParams::kProductBoundLog2;
  constexpr int kMaskBits = kBound + 1 + FixedPointParams::kStatisticalBits;
  if (x.degree() != ctx.threshold()) throw ShapeError("trunc: operand must be degree-t shares");
  if (x.empty()) return x;

  std::vector<Fp> lo(x.size()), hi(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    lo[i] = random_below_pow2(ctx.dealer_rng(), kFrac);
    hi[i] = random_below_pow2(ctx.dealer_rng(), kMaskBits - kFrac);
  }
  ShareVector r_lo = dealer_share(ctx, lo);
  ShareVector r_hi = dealer_share(ctx, hi);

  const Fp offset = Fp::pow2(kBound);
  ShareVector masked = add(add_public(x, offset), add(scale(r_hi, Fp::pow2(kFrac)), r_lo));
  std::vector<Fp> c = open(ctx, masked);

  const Fp offset_hi = Fp::pow2(kBound - kFrac);
  std::vector<Fp> public_part(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) public_part[i] = c[i].shifted_right(kFrac) - offset_hi;
  return sub(constant(ctx, public_part), r_hi);
}

ShareVector fp_mul(ProtocolContext& ctx, const ShareVector& a, const ShareVector& b) {
  return trunc(ctx, mul(ctx, a, b));
}

}  // namespace sparsempc
