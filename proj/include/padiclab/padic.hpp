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

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "padiclab/bigint.hpp"

namespace padiclab {

// A prime together with a working precision m: elements of Z_p are handled
// as residues mod p^m.
class PrimeContext {
 public:
  PrimeContext(std::uint32_t p, unsigned m);

  std::uint32_t prime() const noexcept { return p_; }
  unsigned precision() const noexcept { return m_; }
  const BigInt& modulus() const noexcept { return pm_; }

  friend bool operator==(const PrimeContext& a, const PrimeContext& b) noexcept {
    return a.p_ == b.p_ && a.m_ == b.m_;
  }

 private:
  std::uint32_t p_;
  unsigned m_;
  BigInt pm_;
};

using Context = std::shared_ptr<const PrimeContext>;

Context make_context(std::uint32_t p, unsigned m);

// v_p of a residue: either known exactly (k < m) or only bounded below by m.
class Valuation {
 public:
  static Valuation exact(unsigned k) noexcept { return Valuation(k, true); }
  static Valuation at_least(unsigned m) noexcept { return Valuation(m, false); }

  bool is_exact() const noexcept { return exact_; }
  unsigned value() const noexcept { return k_; }

  // |x|_p < p^-k, i.e. v > k. Throws PrecisionExhausted when undecidable.
  bool exceeds(unsigned k) const;
  // v >= k.
  bool reaches(unsigned k) const;

  // "2" for Exact(2), ">=6" for AtLeast(6).
  std::string to_string() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  Valuation(unsigned k, bool exact) noexcept : k_(k), exact_(exact) {}
  unsigned k_;
  bool exact_;
};

class PadicInt {
 public:
  PadicInt(const BigInt& z, Context ctx);

  const BigInt& residue() const noexcept { return residue_; }
  const Context& context() const noexcept { return ctx_; }
  std::uint32_t prime() const noexcept { return ctx_->prime(); }
  unsigned precision() const noexcept { return ctx_->precision(); }

  // Base-p digits, least significant first; always exactly m entries.
  std::vector<unsigned> digits() const;

  PadicInt operator-() const;
  friend PadicInt operator+(const PadicInt& x, const PadicInt& y);
  friend PadicInt operator-(const PadicInt& x, const PadicInt& y);
  friend PadicInt operator*(const PadicInt& x, const PadicInt& y);
  friend bool operator==(const PadicInt& x, const PadicInt& y);

 private:
  BigInt residue_;
  Context ctx_;
};

PadicInt make_padic(const BigInt& z, const Context& ctx);
Valuation valuation(const PadicInt& x);
PadicInt invert(const PadicInt& x);
Valuation dist(const PadicInt& x, const PadicInt& y);

// Reduce to a coarser precision (same prime).
PadicInt truncate(const PadicInt& x, const Context& coarser);

// Textual form "p:m:[d0,d1,...]" with digits least significant first.
std::string to_string(const PadicInt& x);
PadicInt parse_padic(std::string_view text);

}  // namespace padiclab
