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
#include <memory>
#include <span>
#include <vector>

#include "sparsempc/field.hpp"
#include "sparsempc/runtime.hpp"

namespace sparsempc {

// A batch of secret-shared values: for each party, one share per value.
//
// The polynomial degree is tracked explicitly. Local products raise it to 2t
// and only reshare() brings it back to t, which makes the delayed degree
// reduction of inner products visible in the type.
class ShareVector {
 public:
  ShareVector() = default;
  // `length` zero shares of the given degree for every party of `ctx`.
  ShareVector(const ProtocolContext& ctx, std::size_t length, std::size_t degree);
  ~ShareVector();
  ShareVector(const ShareVector& other);
  ShareVector& operator=(const ShareVector& other);
  ShareVector(ShareVector&& other) noexcept;
  ShareVector& operator=(ShareVector&& other) noexcept;

  std::size_t size() const { return length_; }
  bool empty() const { return length_ == 0; }
  std::size_t parties() const { return shares_.size(); }
  std::size_t degree() const { return degree_; }
  void set_degree(std::size_t d) { degree_ = d; }

  std::span<Fp> party(std::size_t slot) { return shares_[slot]; }
  std::span<const Fp> party(std::size_t slot) const { return shares_[slot]; }
  Fp& at(std::size_t slot, std::size_t i) { return shares_[slot][i]; }
  const Fp& at(std::size_t slot, std::size_t i) const { return shares_[slot][i]; }

  // Local re-indexing; no communication.
  ShareVector gather(std::span<const std::size_t> indices) const;
  ShareVector slice(std::size_t begin, std::size_t count) const;
  void scatter(std::span<const std::size_t> indices, const ShareVector& values);
  void append(const ShareVector& tail);
  void resize(std::size_t length);

 private:
  ShareVector(std::shared_ptr<StorageMeter> meter, std::size_t parties, std::size_t length,
              std::size_t degree);
  void track(std::int64_t delta);

  std::vector<std::vector<Fp>> shares_;
  std::size_t length_ = 0;
  std::size_t degree_ = 0;
  std::shared_ptr<StorageMeter> meter_;
};

ShareVector concat(const ShareVector& a, const ShareVector& b);

// ---- sharing and opening -------------------------------------------------

// Data-owner sharing of public-to-the-owner secrets with fresh degree-t
// polynomials. Charged to the ledger as an input upload.
ShareVector share(ProtocolContext& ctx, std::span<const Fp> secrets);

// Trivial sharing of a public constant (every party holds `value`).
ShareVector constant(const ProtocolContext& ctx, std::size_t length, const Fp& value);
ShareVector constant(const ProtocolContext& ctx, std::span<const Fp> values);

// Opens every value to every party: one barrier, N(N-1) elements per value.
std::vector<Fp> open(ProtocolContext& ctx, const ShareVector& v);

// Interpolation from explicit (party, share) pairs. Throws
// ReconstructionError if fewer than degree + 1 shares are supplied.
struct PartyShare {
  PartyId party;
  Fp value;
};
Fp reconstruct(std::span<const PartyShare> shares, std::size_t degree);

// Opening for tests and oracles; bypasses the ledger.
std::vector<Fp> reconstruct(const ShareVector& v);

// ---- local linear operations --------------------------------------------

ShareVector add(const ShareVector& a, const ShareVector& b);
ShareVector sub(const ShareVector& a, const ShareVector& b);
ShareVector scale(const ShareVector& a, const Fp& c);
// Element-wise product with public values.
ShareVector scale(const ShareVector& a, std::span<const Fp> c);
ShareVector add_public(const ShareVector& a, const Fp& c);
// c - a, element-wise.
ShareVector public_minus(const Fp& c, const ShareVector& a);
// Element-wise product without degree reduction (result degree 2t).
ShareVector local_mul(const ShareVector& a, const ShareVector& b);

// ---- communicating operations -------------------------------------------

// Degree reduction of 2t-shares: the first 2t+1 parties reshare their local
// values with fresh degree-t polynomials. One barrier, (2t+1)(N-1) elements
// per value.
ShareVector reshare(ProtocolContext& ctx, const ShareVector& v);

// Element-wise product, one barrier.
ShareVector mul(ProtocolContext& ctx, const ShareVector& a, const ShareVector& b);

// Several independent element-wise products sharing one barrier.
std::vector<ShareVector> mul_batch(ProtocolContext& ctx, std::span<const ShareVector> a,
                                   std::span<const ShareVector> b);

// Sum of x_i * y_i with a single degree reduction. Returns one value.
ShareVector inner_product(ProtocolContext& ctx, const ShareVector& xs, const ShareVector& ys);

// Uniformly random values in [0, 2^bits) from preprocessing (no ledger cost).
// bits == 0 selects the whole field.
ShareVector rand_share(ProtocolContext& ctx, std::size_t count, int bits = 0);

// Uniformly random bits from preprocessing.
ShareVector rand_bits(ProtocolContext& ctx, std::size_t count);

// Probabilistic truncation by 2^32 of values whose centred raw magnitude is at
// most 2^102. Result is floor(x / 2^32) or that plus one. One barrier.
// Inputs outside the bound give undefined results.
ShareVector trunc(ProtocolContext& ctx, const ShareVector& x);

// Fixed-point product: mul followed by trunc.
ShareVector fp_mul(ProtocolContext& ctx, const ShareVector& a, const ShareVector& b);

}  // namespace sparsempc
