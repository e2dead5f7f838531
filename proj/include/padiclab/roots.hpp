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

#include <optional>
#include <string>
#include <vector>

#include "padiclab/bigint.hpp"
#include "padiclab/padic.hpp"
#include "padiclab/polyzx.hpp"

namespace padiclab {

struct RootSet {
  IntPoly poly;
  std::vector<PadicInt> roots;  // sorted by residue
  // True when every root of poly (over an algebraic closure) lies in Z_p,
  // i.e. the listed simple roots account for the full degree.
  bool complete_in_Zp = false;
};

// zp_roots without the fail-loud policy: residues mod p^m of branches that
// neither died nor separated are returned alongside the resolved roots.
struct RootSearch {
  RootSet set;
  std::vector<BigInt> unresolved;
};

enum class HenselStatus { Holds, Fails, Undecidable };

// |P(xi0)|_p < |P'(xi0)|_p^2, decided on residues mod p^m.
HenselStatus hensel_precondition(const IntPoly& P, const PadicInt& xi0);

PadicInt hensel_lift(const IntPoly& P, const PadicInt& xi0);

RootSearch find_zp_roots(const IntPoly& P, const Context& ctx);
RootSet zp_roots(const IntPoly& P, const Context& ctx);

struct NearestRoot {
  PadicInt alpha;
  Valuation distance;
};

NearestRoot nearest_root(const IntPoly& P, const PadicInt& omega);
// Same, reusing a root set computed in omega's context.
NearestRoot nearest_root(const RootSet& roots, const PadicInt& omega);

// A valuation that may be infinite (P(omega) == 0 exactly).
struct ValRecord {
  enum Kind { Exact, AtLeast, Infinite } kind = Exact;
  long value = 0;  // may be negative for the ratio side
  std::string to_string() const;
};

struct Lemma4Record {
  IntPoly poly;
  PadicInt omega;
  PadicInt alpha;
  ValRecord lhs_val;  // v(omega - alpha)
  ValRecord rhs_val;  // v(P(omega)) - v(P'(alpha))
  bool holds = false;
};

Lemma4Record lemma4_check(const IntPoly& P, const PadicInt& omega);
Lemma4Record lemma4_check(const RootSet& roots, const PadicInt& omega);

// Does some root y of P(x + y) (over an algebraic closure) have v(y) >= k?
bool has_root_near(const IntPoly& P, const BigInt& x, unsigned k, std::uint32_t p);

// Every root (Z_p roots and, via the Newton polygon, all others) has
// |alpha|_p < p^n.  P must be leading.
bool root_size_check(const IntPoly& P, const Context& ctx);

struct RootSeparationProfile {
  unsigned grid_T = 0;
  Rational eps1{};
  unsigned alpha1_index = 0;
  std::vector<unsigned> order{};     // indices into roots for j = 2..k
  std::vector<unsigned> distance{};  // v(alpha_1 - alpha_j)
  std::vector<double> rho{};         // rho_j for j = 2..k
  std::vector<std::optional<Rational>> rho_exact{};  // set when H is a power of p
  std::vector<unsigned> l{};         // l_j for j = 2..k
  std::vector<Rational> r{};         // r_j for j = 1..k-1
  BigInt height{};
  RootSet roots;
};

RootSeparationProfile separation_profile(const IntPoly& P, const Context& ctx, const Rational& eps, unsigned d,
                                         unsigned alpha1_index = 0);

struct Lemma5Record {
  unsigned derivative_val = 0;  // v(P'(alpha_1))
  double log_abs_derivative = 0;  // ln |P'(alpha_1)|_p
  double log_lower = 0;  // ln H^{-r_1}
  double log_upper = 0;  // ln H^{-r_1 + (k-1) eps1}
  double lower_ratio = 0;  // ln(|P'| / lower)
  double upper_ratio = 0;  // ln(|P'| / upper)
};

Lemma5Record lemma5_check(const IntPoly& P, const RootSeparationProfile& profile);

}  // namespace padiclab
