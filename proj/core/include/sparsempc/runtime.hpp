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
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "sparsempc/field.hpp"

namespace sparsempc {

// 1-based party index; party i evaluates share polynomials at x = i.
struct PartyId {
  std::size_t index = 1;
  friend bool operator==(PartyId, PartyId) = default;
};

// Communication and storage counters of one protocol execution.
//
// `rounds` counts synchronisation barriers, not messages. `bytes_sent` is
// always `elements_sent * element_wire_bytes`. `peak_stored_elements` is the
// largest number of live share elements held by a single party, sampled at
// every barrier.
struct CostLedger {
  std::uint64_t rounds = 0;
  std::uint64_t elements_sent = 0;
  std::uint64_t bytes_sent = 0;
  std::uint64_t peak_stored_elements = 0;
  std::uint64_t values_opened = 0;

  friend bool operator==(const CostLedger&, const CostLedger&) = default;
};

// Counter difference `after - before`. The peak is taken from `after`.
CostLedger ledger_delta(const CostLedger& after, const CostLedger& before);

// Tracks live share elements per party. Shared by every ShareVector
// allocated against one context.
struct StorageMeter {
  std::int64_t live = 0;
  std::int64_t peak = 0;
};

struct Message {
  std::size_t from = 0;  // 0-based party slots
  std::size_t to = 0;
  std::vector<Fp> payload;
};

// In-process simulation of N parties running a threshold-t Shamir protocol.
//
// All communication goes through exchange(); one call is one barrier. Every
// source of randomness is derived from the spawn seed, so equal seeds and
// inputs give bit-identical transcripts.
class ProtocolContext {
 public:
  // Throws ConfigError unless N >= 3, t >= 1 and 2t < N.
  static ProtocolContext spawn(std::size_t parties, std::size_t threshold,
                               std::uint64_t seed,
                               std::size_t element_wire_bytes = kDefaultElementWireBytes);

  ProtocolContext(ProtocolContext&&) noexcept = default;
  ProtocolContext& operator=(ProtocolContext&&) noexcept = default;
  ProtocolContext(const ProtocolContext&) = delete;
  ProtocolContext& operator=(const ProtocolContext&) = delete;

  std::size_t num_parties() const { return parties_; }
  std::size_t threshold() const { return threshold_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t element_wire_bytes() const { return wire_bytes_; }

  // Delivers a batch of point-to-point messages as one barrier. An empty
  // batch (or one carrying no elements) costs nothing.
  std::vector<std::vector<Message>> exchange(std::vector<Message> batch);

  // Charges an input upload from data owners to the parties: one barrier
  // carrying `elements` field elements in total.
  void charge_upload(std::uint64_t elements);

  // Records that `count` values were opened to all parties.
  void note_opened(std::uint64_t count) { ledger_.values_opened += count; }

  // Charges a barrier whose traffic is known analytically. Used by cost-only
  // protocol routes; the measured routes never call this.
  void charge_modeled_barrier(std::uint64_t elements, std::uint64_t stored_elements);

  CostLedger ledger_snapshot() const;

  // FNV-1a digest (64-bit word steps) over every delivered message, in
  // delivery order.
  std::uint64_t transcript_digest() const { return digest_; }

  std::mt19937_64& party_rng(std::size_t slot) { return party_rngs_.at(slot); }
  // Randomness of the preprocessing phase (shared random values, masks).
  std::mt19937_64& dealer_rng() { return dealer_rng_; }
  // Randomness of the data owners when they share their inputs.
  std::mt19937_64& owner_rng() { return owner_rng_; }

  const std::shared_ptr<StorageMeter>& storage_meter() const { return meter_; }

  // Lagrange coefficients at x = 0 for the points 1..count.
  const std::vector<Fp>& lagrange_at_zero(std::size_t count) const;

 private:
  ProtocolContext(std::size_t parties, std::size_t threshold, std::uint64_t seed,
                  std::size_t wire_bytes);

  void sample_storage();

  std::size_t parties_;
  std::size_t threshold_;
  std::uint64_t seed_;
  std::size_t wire_bytes_;
  CostLedger ledger_;
  std::uint64_t digest_ = 1469598103934665603ULL;
  std::vector<std::mt19937_64> party_rngs_;
  std::mt19937_64 dealer_rng_;
  std::mt19937_64 owner_rng_;
  std::shared_ptr<StorageMeter> meter_;
  std::vector<std::vector<Fp>> lagrange_;  // indexed by point count
};

// Uniform element of F_p.
Fp random_field_element(std::mt19937_64& rng);
// Uniform integer in [0, 2^bits), bits <= 253.
Fp random_below_pow2(std::mt19937_64& rng, int bits);

}  // namespace sparsempc
