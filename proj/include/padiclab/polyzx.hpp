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
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "padiclab/bigint.hpp"
#include "padiclab/padic.hpp"

namespace padiclab {

// Nonzero integer polynomial a_0 + a_1 x + ... + a_n x^n with a nominal
// degree bound n (coefficients above the true degree may be zero).
class IntPoly {
 public:
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::vector<BigInt> coeffs, unsigned nominal_degree);
  IntPoly(std::initializer_list<long> coeffs);
  static IntPoly from_ints(std::span<const long long> coeffs);

  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
  unsigned nominal_degree() const noexcept { return static_cast<unsigned>(coeffs_.size() - 1); }
  unsigned degree() const noexcept { return degree_; }
  const BigInt& coeff(unsigned i) const;
  const BigInt& leading() const { return coeffs_[degree_]; }

  IntPoly operator-() const;
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  // Equal when the true coefficient sequences agree (nominal bounds ignored).
  friend bool operator==(const IntPoly& a, const IntPoly& b);

 private:
  std::vector<BigInt> coeffs_;
  unsigned degree_ = 0;
};

BigInt height(const IntPoly& P);

struct ContentSplit {
  BigInt content;     // positive gcd of the coefficients
  IntPoly primitive;  // P / content, same signs as P
};
ContentSplit content_and_primitive(const IntPoly& P);
BigInt content(const IntPoly& P);

// j-th derivative; nullopt when it vanishes identically.
std::optional<IntPoly> derivative(const IntPoly& P, unsigned j = 1);

BigInt eval(const IntPoly& P, const BigInt& x);
PadicInt eval_padic(const IntPoly& P, const PadicInt& omega);

BigInt resultant(const IntPoly& P, const IntPoly& Q);

// Exact factor search; valid for degree <= 4. Throws Unsupported above that.
bool is_irreducible(const IntPoly& P);

// Primitive gcd(P, P') and the primitive squarefree part P / gcd(P, P').
IntPoly derivative_gcd(const IntPoly& P);
IntPoly squarefree_part(const IntPoly& P);

// a_n = H(P) and |a_n|_p > p^-n, with n the nominal degree.
bool is_leading(const IntPoly& P, std::uint32_t p);
inline bool is_leading(const IntPoly& P, const PrimeContext& ctx) { return is_leading(P, ctx.prime()); }

struct PolyFilter {
  bool require_irreducible = false;
  bool require_primitive = false;
  bool require_leading = false;
  bool require_exact_degree = false;
  std::uint64_t height_max = 1;
  std::uint64_t height_min = 1;
  std::uint32_t prime = 0;  // needed by require_leading
};

bool passes(const IntPoly& P, const PolyFilter& filter);

// Enumerates every polynomial of nominal degree n with height in
// [height_min, height_max] that passes the filter, ordered lexicographically
// by (H, a_n, ..., a_0) with each coefficient running from -H to H.
//
// The callback sees coefficients lowest-first and may return false to stop.
using CoeffVisitor = std::function<bool(std::span<const long long>)>;
void for_each_coeffs(unsigned n, std::uint64_t height_min, std::uint64_t height_max, const CoeffVisitor& visit);

void for_each_poly(unsigned n, const PolyFilter& filter, const std::function<bool(const IntPoly&)>& visit);

// Pull-style stream over the same sequence.
class PolyStream {
 public:
  PolyStream(unsigned n, PolyFilter filter);
  std::optional<IntPoly> next();

 private:
  bool advance();

  unsigned n_;
  PolyFilter filter_;
  std::uint64_t h_;
  std::vector<long long> digits_;  // a_n first
  bool started_ = false;
  bool done_ = false;
};

std::vector<IntPoly> enumerate_polys(unsigned n, const PolyFilter& filter);

// "[a0,a1,...,an]".
std::string to_string(const IntPoly& P);
IntPoly parse_poly(std::string_view text);

}  // namespace padiclab
