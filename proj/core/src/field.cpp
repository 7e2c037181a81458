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

#include "sparsempc/field.hpp"

#include <stdexcept>

namespace sparsempc {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr u64 kC = Fp::kModulusOffset;
constexpr u64 kFourC = 4 * kC;  // 2^256 mod p

bool geq_modulus(const Fp::Limbs& a) {
  for (int i = 3; i >= 0; --i) {
    if (a[i] != Fp::kModulus[i]) return a[i] > Fp::kModulus[i];
  }
  return true;
}

void sub_modulus(Fp::Limbs& a) {
  u128 borrow = 0;
  for (int i = 0; i < 4; ++i) {
    u128 d = static_cast<u128>(a[i]) - Fp::kModulus[i] - borrow;
    a[i] = static_cast<u64>(d);
    borrow = (d >> 64) & 1;
  }
}

// Reduces a 256-bit value to [0, p).
void reduce256(Fp::Limbs& v) {
  u64 high = v[3] >> 62;
  v[3] &= (u64{1} << 62) - 1;
  if (high) {
    u128 carry = static_cast<u128>(high) * kC;
    for (int i = 0; i < 4 && carry; ++i) {
      u128 s = static_cast<u128>(v[i]) + static_cast<u64>(carry);
      v[i] = static_cast<u64>(s);
      carry = (carry >> 64) + (s >> 64);
    }
  }
  if (geq_modulus(v)) sub_modulus(v);
}

}  // namespace

Fp Fp::from_limbs(const Limbs& raw) {
  Fp r;
  r.limbs_ = raw;
  reduce256(r.limbs_);
  return r;
}

Fp Fp::from_int(std::int64_t v) {
  if (v >= 0) return Fp(static_cast<u64>(v));
  // Two's-complement safe magnitude for INT64_MIN.
  return -Fp(static_cast<u64>(-(v + 1)) + 1);
}

Fp Fp::from_u128(unsigned __int128 v) {
  return from_limbs({static_cast<u64>(v), static_cast<u64>(v >> 64), 0, 0});
}

Fp Fp::pow2(int k) {
  if (k < 0 || k >= kModulusBits) throw std::out_of_range("pow2 exponent out of range");
  Limbs l{};
  l[k / 64] = u64{1} << (k % 64);
  Fp r;
  r.limbs_ = l;
  return r;
}

int Fp::bit_length() const {
  for (int i = 3; i >= 0; --i) {
    if (limbs_[i]) return 64 * i + 64 - __builtin_clzll(limbs_[i]);
  }
  return 0;
}

Fp Fp::shifted_right(int k) const {
  Fp r;
  int word = k / 64, bit = k % 64;
  for (int i = 0; i < 4; ++i) {
    int src = i + word;
    if (src >= 4) break;
    u64 lo = limbs_[src] >> bit;
    u64 hi = (bit && src + 1 < 4) ? limbs_[src + 1] << (64 - bit) : 0;
    r.limbs_[i] = lo | hi;
  }
  return r;
}

namespace {

// Folds a 5-limb value v = s[0..3] + s4 * 2^256 into [0, p).
void fold5(Fp::Limbs& s, u64 s4) {
  while (s4) {
    u128 c2 = static_cast<u128>(s4) * kFourC;
    s4 = 0;
    for (int i = 0; i < 4; ++i) {
      u128 cur = static_cast<u128>(s[i]) + static_cast<u64>(c2);
      s[i] = static_cast<u64>(cur);
      c2 = (c2 >> 64) + (cur >> 64);
      if (c2 == 0) break;
    }
    s4 = static_cast<u64>(c2);
  }
  reduce256(s);
}

}  // namespace

Fp& Fp::operator*=(const Fp& o) {
  const auto& a = limbs_;
  const auto& b = o.limbs_;
  if ((b[1] | b[2] | b[3]) == 0) return mul_small(b[0]);
  if ((a[1] | a[2] | a[3]) == 0) {
    u64 k = a[0];
    limbs_ = b;
    return mul_small(k);
  }
  u64 t[8];
  u128 acc;
  u64 carry = 0;
#pragma GCC unroll 4
  for (int j = 0; j < 4; ++j) {
    acc = static_cast<u128>(a[0]) * b[j] + carry;
    t[j] = static_cast<u64>(acc);
    carry = static_cast<u64>(acc >> 64);
  }
  t[4] = carry;
#pragma GCC unroll 3
  for (int i = 1; i < 4; ++i) {
    carry = 0;
#pragma GCC unroll 4
    for (int j = 0; j < 4; ++j) {
      acc = static_cast<u128>(a[i]) * b[j] + t[i + j] + carry;
      t[i + j] = static_cast<u64>(acc);
      carry = static_cast<u64>(acc >> 64);
    }
    t[i + 4] = carry;
  }
  // T = H * 2^256 + L  ==  L + H * 4c  (mod p)
  Limbs s;
  carry = 0;
#pragma GCC unroll 4
  for (int i = 0; i < 4; ++i) {
    acc = static_cast<u128>(t[i + 4]) * kFourC + t[i] + carry;
    s[i] = static_cast<u64>(acc);
    carry = static_cast<u64>(acc >> 64);
  }
  fold5(s, carry);
  limbs_ = s;
  return *this;
}

Fp& Fp::mul_small(std::uint64_t k) {
  Limbs s;
  u64 carry = 0;
#pragma GCC unroll 4
  for (int i = 0; i < 4; ++i) {
    u128 acc = static_cast<u128>(limbs_[i]) * k + carry;
    s[i] = static_cast<u64>(acc);
    carry = static_cast<u64>(acc >> 64);
  }
  fold5(s, carry);
  limbs_ = s;
  return *this;
}

Fp Fp::pow(const Limbs& exponent) const {
  Fp result(1), base = *this;
  for (int i = 0; i < 4; ++i) {
    u64 e = exponent[i];
    for (int b = 0; b < 64; ++b) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
  }
  return result;
}

Fp Fp::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero field element");
  Limbs e = kModulus;
  e[0] -= 2;  // p - 2; low limb of p is far above 2
  return pow(e);
}

std::string Fp::to_hex() const {
  static const char* kDigits = "0123456789abcdef";
  std::string out = "0x";
  bool leading = true;
  for (int i = 3; i >= 0; --i) {
    for (int nib = 15; nib >= 0; --nib) {
      int d = static_cast<int>((limbs_[i] >> (4 * nib)) & 0xf);
      if (leading && d == 0) continue;
      leading = false;
      out.push_back(kDigits[d]);
    }
  }
  if (leading) out.push_back('0');
  return out;
}

}  // namespace sparsempc
