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
#include <optional>
#include <string>
#include <vector>

#include "padiclab/bigint.hpp"
#include "padiclab/padic.hpp"
#include "padiclab/polyzx.hpp"

namespace padiclab {

// Closed ball |omega - center|_p <= p^-k.
struct Disc {
  PadicInt center;
  unsigned radius_exp = 0;

  Rational measure() const;
  bool contains(const PadicInt& omega) const;
  const Context& context() const { return center.context(); }
};

Disc make_disc(const PadicInt& center, unsigned k);
Disc whole_zp(const Context& ctx);
// "center:k" with an integer center, or "Zp".
Disc parse_disc(std::string_view text, const Context& ctx);
std::string to_string(const Disc& disc);

struct AlgebraicNumber {
  IntPoly minpoly;  // irreducible, primitive, positive leading coefficient
  PadicInt root;
  BigInt height;

  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return a.minpoly == b.minpoly && a.root == b.root;
  }
};

// Visits degree-n algebraic numbers in disc with height in [hmin, hmax] in
// the order (H, a_n, ..., a_0, residue). Returning false stops the scan.
void for_each_algebraic(unsigned n, std::uint64_t hmin, std::uint64_t hmax, const Disc& disc,
                        const std::function<bool(const AlgebraicNumber&)>& visit);
std::vector<AlgebraicNumber> enumerate_algebraic(unsigned n, std::uint64_t hmax, const Disc& disc);
std::uint64_t count_by_height(unsigned n, std::uint64_t h, const Disc& disc);

struct DirichletResult {
  IntPoly poly;
  unsigned threshold_exp = 0;  // |P(omega)|_p < theta  <=>  v(P(omega)) >= threshold_exp
  BigInt box_bound;            // p^k Q
  bool pigeonhole_guaranteed = false;
};

// Box polynomials with |P(omega)|_p < p^{-2k} C Q^{-n-1}, ordered by
// (H, a_n, ..., a_0). Throws BoxExhausted when there are none.
std::vector<IntPoly> dirichlet_solutions(const PadicInt& omega, unsigned n, const BigInt& Q, unsigned delta_exp,
                                         const Rational& C);
DirichletResult dirichlet_polynomial(const PadicInt& omega, unsigned n, const BigInt& Q, unsigned delta_exp,
                                     const Rational& C);

enum class RejectReason { DerivativeTooSmall, NotIrreducibleFallbackExhausted };
std::string_view reject_reason_name(RejectReason r);

struct ApproxResult {
  std::optional<AlgebraicNumber> alpha;
  std::optional<RejectReason> rejected;
  std::optional<IntPoly> source;  // Dirichlet polynomial the root came from
  Valuation distance = Valuation::exact(0);
  unsigned candidates_tried = 0;
  unsigned derivative_failures = 0;
  unsigned reducible_failures = 0;
};

ApproxResult constructive_approximant(const PadicInt& omega, unsigned n, const BigInt& Q, unsigned delta_exp,
                                      const Rational& C);

struct RegularSystemReport {
  std::uint32_t p = 0;
  unsigned m = 0;
  unsigned n = 0;
  unsigned s = 0;  // T = p^{s(n+1)}
  BigInt T;
  Disc disc;
  std::vector<AlgebraicNumber> points;
  std::uint64_t candidates = 0;
  Rational density_constant;
  bool separation_ok = false;
  bool maximality_ok = false;
};

RegularSystemReport regular_witness(const Disc& disc, unsigned s, unsigned n);

// Independent replays of the two regular-system properties.
bool audit_separation(const RegularSystemReport& r);
bool audit_maximality(const RegularSystemReport& r);

}  // namespace padiclab
