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

#include "sparsempc/runtime.hpp"

#include <algorithm>
#include <string>

#include "sparsempc/errors.hpp"
#include "sparsempc/shamir_poly.hpp"

namespace sparsempc {
namespace {

std::mt19937_64 derive_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x5eedu};
  return std::mt19937_64(seq);
}

constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

// FNV-1a step over a whole 64-bit word.
void fnv_mix(std::uint64_t& h, std::uint64_t word) {
  h ^= word;
  h *= kFnvPrime;
}

}  // namespace

CostLedger ledger_delta(const CostLedger& after, const CostLedger& before) {
  CostLedger d;
  d.rounds = after.rounds - before.rounds;
  d.elements_sent = after.elements_sent - before.elements_sent;
  d.bytes_sent = after.bytes_sent - before.bytes_sent;
  d.values_opened = after.values_opened - before.values_opened;
  d.peak_stored_elements = after.peak_stored_elements;
  return d;
}

ProtocolContext::ProtocolContext(std::size_t parties, std::size_t threshold, std::uint64_t seed,
                                 std::size_t wire_bytes)
    : parties_(parties),
      threshold_(threshold),
      seed_(seed),
      wire_bytes_(wire_bytes),
      dealer_rng_(derive_rng(seed, 0xdea1e7)),
      owner_rng_(derive_rng(seed, 0x0e7e4)),
      meter_(std::make_shared<StorageMeter>()) {
  party_rngs_.reserve(parties);
  for (std::size_t i = 0; i < parties; ++i) party_rngs_.push_back(derive_rng(seed, i + 1));
  lagrange_.resize(parties + 1);
  for (std::size_t k = 1; k <= parties; ++k) {
    std::vector<std::size_t> points(k);
    for (std::size_t i = 0; i < k; ++i) points[i] = i + 1;
    lagrange_[k] = lagrange_coefficients_at_zero<Fp>(points);
  }
}

ProtocolContext ProtocolContext::spawn(std::size_t parties, std::size_t threshold,
                                       std::uint64_t seed, std::size_t element_wire_bytes) {
  if (parties < 3) throw ConfigError("at least 3 parties are required");
  if (threshold < 1) throw ConfigError("threshold must be at least 1");
  if (2 * threshold >= parties) {
    throw ConfigError("honest majority requires 2t < N (N=" + std::to_string(parties) +
                      ", t=" + std::to_string(threshold) + ")");
  }
  if (element_wire_bytes == 0) throw ConfigError("element wire size must be positive");
  return ProtocolContext(parties, threshold, seed, element_wire_bytes);
}

void ProtocolContext::sample_storage() {
  meter_->peak = std::max(meter_->peak, meter_->live);
  ledger_.peak_stored_elements =
      std::max<std::uint64_t>(ledger_.peak_stored_elements, static_cast<std::uint64_t>(meter_->peak));
}

std::vector<std::vector<Message>> ProtocolContext::exchange(std::vector<Message> batch) {
  std::vector<std::vector<Message>> inbox(parties_);
  std::uint64_t elements = 0;
  for (const auto& m : batch) {
    if (m.from >= parties_ || m.to >= parties_) throw ConfigError("message addressed to unknown party");
    elements += m.payload.size();
  }
  if (elements == 0) return inbox;
  ledger_.rounds += 1;
  ledger_.elements_sent += elements;
  ledger_.bytes_sent += elements * wire_bytes_;
  sample_storage();
  for (auto& m : batch) {
    fnv_mix(digest_, m.from);
    fnv_mix(digest_, m.to);
    for (const auto& e : m.payload) {
      for (auto limb : e.limbs()) fnv_mix(digest_, limb);
    }
    std::size_t to = m.to;
    inbox[to].push_back(std::move(m));
  }
  return inbox;
}

void ProtocolContext::charge_upload(std::uint64_t elements) {
  if (elements == 0) return;
  ledger_.rounds += 1;
  ledger_.elements_sent += elements;
  ledger_.bytes_sent += elements * wire_bytes_;
  sample_storage();
}

void ProtocolContext::charge_modeled_barrier(std::uint64_t elements, std::uint64_t stored_elements) {
  if (elements == 0) return;
  ledger_.rounds += 1;
  ledger_.elements_sent += elements;
  ledger_.bytes_sent += elements * wire_bytes_;
  ledger_.peak_stored_elements = std::max(ledger_.peak_stored_elements, stored_elements);
}

CostLedger ProtocolContext::ledger_snapshot() const { return ledger_; }

const std::vector<Fp>& ProtocolContext::lagrange_at_zero(std::size_t count) const {
  if (count == 0 || count > parties_) throw ReconstructionError("invalid interpolation point count");
  return lagrange_[count];
}

Fp random_field_element(std::mt19937_64& rng) {
  for (;;) {
    Fp::Limbs l{rng(), rng(), rng(), rng() & ((std::uint64_t{1} << 62) - 1)};
    bool below = false;
    for (int i = 3; i >= 0; --i) {
      if (l[i] != Fp::kModulus[i]) {
        below = l[i] < Fp::kModulus[i];
        break;
      }
    }
    if (below) return Fp::from_limbs(l);
  }
}

Fp random_below_pow2(std::mt19937_64& rng, int bits) {
  if (bits < 0 || bits > Fp::kModulusBits - 1) throw RangeError("random_below_pow2: bad width");
  Fp::Limbs l{};
  for (int i = 0; i < 4 && bits > 64 * i; ++i) {
    std::uint64_t w = rng();
    int remaining = bits - 64 * i;
    if (remaining < 64) w &= (std::uint64_t{1} << remaining) - 1;
    l[i] = w;
  }
  return Fp::from_limbs(l);
}

}  // namespace sparsempc
