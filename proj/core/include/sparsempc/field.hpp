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

#include <array>
#include <compare>
#include <cstdint>
#include <string>

namespace sparsempc {

// Element of the prime field F_p with p = 2^254 - 67241, a safe prime.
// Stored as four little-endian 64-bit limbs, always fully reduced.
class Fp {
 public:
  using Limbs = std::array<std::uint64_t, 4>;

  static constexpr std::uint64_t kModulusOffset = 67241;  // p = 2^254 - c
  static constexpr int kModulusBits = 254;
  static constexpr Limbs kModulus = {~std::uint64_t{0} - kModulusOffset + 1,
                                     ~std::uint64_t{0}, ~std::uint64_t{0},
                                     (std::uint64_t{1} << 62) - 1};

  constexpr Fp() = default;
  constexpr Fp(std::uint64_t v) : limbs_{v, 0, 0, 0} {}  // NOLINT

  // Reduces an arbitrary 256-bit integer modulo p.
  static Fp from_limbs(const Limbs& raw);
  // Signed embedding: negative values map to p - |v|.
  static Fp from_int(std::int64_t v);
  // Embeds an unsigned 128-bit integer.
  static Fp from_u128(unsigned __int128 v);
  // 2^k for 0 <= k < 254.
  static Fp pow2(int k);

  const Limbs& limbs() const { return limbs_; }
  bool is_zero() const { return (limbs_[0] | limbs_[1] | limbs_[2] | limbs_[3]) == 0; }
  std::uint64_t low64() const { return limbs_[0]; }
  // Low 128 bits of the canonical representative.
  unsigned __int128 low128() const {
    return (static_cast<unsigned __int128>(limbs_[1]) << 64) | limbs_[0];
  }
  // Number of significant bits of the canonical representative.
  int bit_length() const;
  // Canonical representative shifted right by k bits (0 <= k < 256).
  Fp shifted_right(int k) const;

  Fp& operator+=(const Fp& o);
  Fp& operator-=(const Fp& o);
  Fp& operator*=(const Fp& o);
  // Multiplication by a small integer; faster than the general product.
  Fp& mul_small(std::uint64_t k);
  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  Fp operator-() const { return Fp{} - *this; }

  Fp pow(const Limbs& exponent) const;
  // Multiplicative inverse; throws std::domain_error on zero.
  Fp inverse() const;

  friend bool operator==(const Fp&, const Fp&) = default;
  // Orders canonical representatives as unsigned integers.
  friend std::strong_ordering operator<=>(const Fp& a, const Fp& b) {
    for (int i = 3; i >= 0; --i) {
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
    }
    return std::strong_ordering::equal;
  }

  std::string to_hex() const;

 private:
  Limbs limbs_{};
};

inline Fp& Fp::operator+=(const Fp& o) {
  using u128 = unsigned __int128;
  Limbs s;
  u128 acc = 0;
  for (int i = 0; i < 4; ++i) {
    acc += static_cast<u128>(limbs_[i]) + o.limbs_[i];
    s[i] = static_cast<std::uint64_t>(acc);
    acc >>= 64;
  }
  // s < 2p < 2^255; s >= p iff s + offset reaches 2^254.
  Limbs t;
  acc = kModulusOffset;
  for (int i = 0; i < 4; ++i) {
    acc += s[i];
    t[i] = static_cast<std::uint64_t>(acc);
    acc >>= 64;
  }
  if (t[3] >> 62) {
    t[3] &= (std::uint64_t{1} << 62) - 1;
    limbs_ = t;
  } else {
    limbs_ = s;
  }
  return *this;
}

inline Fp& Fp::operator-=(const Fp& o) {
  using u128 = unsigned __int128;
  std::uint64_t borrow = 0;
  for (int i = 0; i < 4; ++i) {
    const u128 d = static_cast<u128>(limbs_[i]) - o.limbs_[i] - borrow;
    limbs_[i] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 64) & 1;
  }
  if (borrow) {
    u128 acc = 0;
    for (int i = 0; i < 4; ++i) {
      acc += static_cast<u128>(limbs_[i]) + kModulus[i];
      limbs_[i] = static_cast<std::uint64_t>(acc);
      acc >>= 64;
    }
  }
  return *this;
}

inline constexpr std::size_t kDefaultElementWireBytes = (Fp::kModulusBits + 7) / 8;

// Tiny prime field used by statistical tests where the full field is too
// large to enumerate. Mirrors the subset of Fp's interface that generic
// sharing code needs.
template <std::uint32_t P>
class SmallField {
 public:
  static constexpr std::uint32_t kModulus = P;

  constexpr SmallField() = default;
  constexpr SmallField(std::uint64_t v) : v_(static_cast<std::uint32_t>(v % P)) {}  // NOLINT

  std::uint32_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  SmallField& operator+=(SmallField o) { v_ = (v_ + o.v_) % P; return *this; }
  SmallField& operator-=(SmallField o) { v_ = (v_ + P - o.v_) % P; return *this; }
  SmallField& operator*=(SmallField o) {
    v_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v_) * o.v_ % P);
    return *this;
  }
  friend SmallField operator+(SmallField a, SmallField b) { return a += b; }
  friend SmallField operator-(SmallField a, SmallField b) { return a -= b; }
  friend SmallField operator*(SmallField a, SmallField b) { return a *= b; }
  SmallField operator-() const { return SmallField{} - *this; }
  SmallField inverse() const {
    SmallField r{1}, b = *this;
    for (std::uint32_t e = P - 2; e; e >>= 1, b *= b) {
      if (e & 1) r *= b;
    }
    return r;
  }
  friend bool operator==(SmallField, SmallField) = default;

 private:
  std::uint32_t v_ = 0;
};

}  // namespace sparsempc
