// Copyright 2026 The padiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Residue rings Z/p^D used by the hot loops. Ring64 covers p^D < 2^64 with
// 128-bit products; RingBig is the arbitrary-precision fallback. Algorithms
// are written once against either via templates and dispatched by with_ring.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "padiclab/bigint.hpp"

namespace padiclab::detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline bool fits_u64(u64 p, unsigned digits) {
  u128 acc = 1;
  for (unsigned i = 0; i < digits; ++i) {
    acc *= p;
    if (acc >> 64) return false;
  }
  return true;
}

struct Ring64 {
  using Elem = u64;

  u64 p;
  unsigned digits;
  u64 mod;

  Ring64(u64 prime, unsigned d) : p(prime), digits(d), mod(1) {
    for (unsigned i = 0; i < d; ++i) mod *= p;
  }

  Elem from(const BigInt& z) const { return mpz_fdiv_ui(z.get_mpz_t(), mod); }
  Elem from_int(long long z) const {
    if (z >= 0) return static_cast<u64>(z) % mod;
    u64 r = static_cast<u64>(-(z + 1)) % mod;  // avoids overflow at LLONG_MIN
    return mod - 1 - r;
  }
  BigInt to_big(Elem a) const { return BigInt(static_cast<unsigned long>(a)); }

  Elem add(Elem a, Elem b) const {
    u128 s = static_cast<u128>(a) + b;
    return static_cast<u64>(s >= mod ? s - mod : s);
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : static_cast<u64>(static_cast<u128>(a) + mod - b); }
  Elem neg(Elem a) const { return a == 0 ? 0 : mod - a; }
  Elem mul(Elem a, Elem b) const {
    if (mod < (u64{1} << 32)) return a * b % mod;
    return static_cast<u64>(static_cast<u128>(a) * b % mod);
  }
  bool is_zero(Elem a) const { return a == 0; }

  unsigned val(Elem a) const {
    if (a == 0) return digits;
    unsigned v = 0;
    while (a % p == 0) {
      a /= p;
      ++v;
    }
    return v;
  }
  // a / p^k for a divisible by p^k (as integers in [0, mod)).
  Elem div_pow(Elem a, unsigned k) const {
    for (unsigned i = 0; i < k; ++i) a /= p;
    return a;
  }
  Elem pow_p(unsigned k) const {
    if (k >= digits) return 0;
    u64 r = 1;
    for (unsigned i = 0; i < k; ++i) r *= p;
    return r;
  }
  // Inverse of a unit modulo p^digits.
  Elem inv(Elem a) const {
    if (mod < (u64{1} << 62)) {
      std::int64_t t = 0, nt = 1;
      std::int64_t r = static_cast<std::int64_t>(mod), nr = static_cast<std::int64_t>(a);
      while (nr != 0) {
        const std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
      }
      if (t < 0) t += static_cast<std::int64_t>(mod);
      return static_cast<u64>(t);
    }
    i128 t = 0, nt = 1;
    i128 r = mod, nr = a;
    while (nr != 0) {
      i128 q = r / nr;
      i128 tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += mod;
    return static_cast<u64>(t);
  }
  Elem reduce_to(Elem a, unsigned d) const {
    if (d >= digits) return a;
    return a % pow_p(d);
  }
};

struct RingBig {
  using Elem = BigInt;

  u64 p;
  unsigned digits;
  BigInt mod;

  RingBig(u64 prime, unsigned d) : p(prime), digits(d), mod(pow_ui(static_cast<unsigned long>(prime), d)) {}

  Elem from(const BigInt& z) const {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), mod.get_mpz_t());
    return r;
  }
  Elem from_int(long long z) const { return from(BigInt(static_cast<long>(z))); }
  BigInt to_big(const Elem& a) const { return a; }

  Elem add(const Elem& a, const Elem& b) const {
    Elem s = a + b;
    if (s >= mod) s -= mod;
    return s;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem s = a - b;
    if (s < 0) s += mod;
    return s;
  }
  Elem neg(const Elem& a) const { return a == 0 ? Elem(0) : Elem(mod - a); }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem r = a * b;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    return r;
  }
  bool is_zero(const Elem& a) const { return a == 0; }

  unsigned val(const Elem& a) const {
    if (a == 0) return digits;
    return *vp(a, static_cast<unsigned long>(p));
  }
  Elem div_pow(const Elem& a, unsigned k) const {
    BigInt pk = pow_ui(static_cast<unsigned long>(p), k);
    Elem r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), pk.get_mpz_t());
    return r;
  }
  Elem pow_p(unsigned k) const {
    if (k >= digits) return 0;
    return pow_ui(static_cast<unsigned long>(p), k);
  }
  Elem inv(const Elem& a) const {
    Elem r;
    mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
    return r;
  }
  Elem reduce_to(const Elem& a, unsigned d) const {
    if (d >= digits) return a;
    Elem r;
    BigInt pd = pow_ui(static_cast<unsigned long>(p), d);
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), pd.get_mpz_t());
    return r;
  }
};

template <class F>
decltype(auto) with_ring(u64 p, unsigned digits, F&& f) {
  if (fits_u64(p, digits)) return std::forward<F>(f)(Ring64(p, digits));
  return std::forward<F>(f)(RingBig(p, digits));
}

template <class R>
std::vector<typename R::Elem> to_ring(const R& ring, std::span<const BigInt> coeffs) {
  std::vector<typename R::Elem> out;
  out.reserve(coeffs.size());
  for (const auto& c : coeffs) out.push_back(ring.from(c));
  return out;
}

template <class R>
typename R::Elem horner(const R& ring, std::span<const typename R::Elem> c, const typename R::Elem& x) {
  typename R::Elem acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = ring.add(ring.mul(acc, x), c[i]);
  return acc;
}

// Value and first derivative in one pass.
template <class R>
std::pair<typename R::Elem, typename R::Elem> horner2(const R& ring, std::span<const typename R::Elem> c,
                                                       const typename R::Elem& x) {
  typename R::Elem val = 0, der = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    der = ring.add(ring.mul(der, x), val);
    val = ring.add(ring.mul(val, x), c[i]);
  }
  return {val, der};
}

// Taylor coefficients P^(i)(x)/i! for i = 0..deg, by repeated synthetic division.
template <class R>
std::vector<typename R::Elem> taylor(const R& ring, std::span<const typename R::Elem> c, const typename R::Elem& x) {
  std::vector<typename R::Elem> work(c.begin(), c.end());
  const std::size_t n = work.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) work[j - 1] = ring.add(work[j - 1], ring.mul(work[j], x));
  return work;
}

}  // namespace padiclab::detail
