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
#include <string>
#include <string_view>
#include <vector>

#include "padiclab/algnum.hpp"
#include "padiclab/bigint.hpp"
#include "padiclab/polyzx.hpp"

namespace padiclab {

struct MeasureEstimate {
  Rational value;
  unsigned resolution_exp = 0;  // value is a count of residue classes mod p^resolution_exp
  bool exact = true;
  // Pieces left out of value: balls where the nearest root could not be
  // resolved at precision m, and balls whose nearest root lies outside Q_p.
  Rational unresolved_measure;
  Rational no_root_measure;
  std::uint64_t polynomials = 0;
};

// mu{omega in disc : v(P(omega)) >= k}. resolution == 0 uses the ball tree;
// otherwise residues mod p^resolution are scanned one by one.
MeasureEstimate solution_measure(const IntPoly& P, unsigned k, const Disc& disc, unsigned resolution = 0);

struct UnionOptions {
  unsigned resolution = 0;  // 0 = max(k_theta, disc radius)
  unsigned threads = 1;
};

// E(delta, Q, disc): union over nonzero P, deg <= n, H(P) <= Q of
// {|P(omega)|_p < delta Q^{-n-1}}.
MeasureEstimate union_measure_E(const Rational& delta, const BigInt& Q, unsigned n, const Disc& disc,
                                UnionOptions opts = {});

// E1: the union restricted to omega with |P'(alpha_{omega,P})|_p >= H(P)^{-xi}.
MeasureEstimate e1_measure(const Rational& delta, const BigInt& Q, const Rational& xi, unsigned n, const Disc& disc);

// Largest 2^26 residue classes a measure scan may allocate.
inline constexpr std::uint64_t kMaxResidueClasses = std::uint64_t{1} << 26;

struct PsiModel {
  enum class Family { Power, PowerLog };
  Family family = Family::Power;
  double s = -2;
  double q = 0;

  double operator()(std::uint64_t h) const;
  bool convergent() const;
  // Exact threshold exponent is available for integer power families.
  bool integer_power() const;
  std::string spec() const;
};

PsiModel parse_psi(std::string_view text);

// Smallest k with p^{-k} < H^{-n} Psi(H).
unsigned psi_threshold_exp(const PsiModel& psi, std::uint64_t H, unsigned n, std::uint32_t p);

struct TailSum {
  double partial = 0;              // sum over [h_lo, h_hi]
  std::vector<double> dyadic;      // sum_{t <= j} 2^t Psi(2^t), 2^j <= h_hi
  std::vector<double> h_times_psi; // h Psi(h) at h = 2^t
  bool convergent = false;
  bool monotone = true;            // non-increasing on the evaluated range
};

TailSum tail_sum(const PsiModel& psi, std::uint64_t h_lo, std::uint64_t h_hi);

}  // namespace padiclab
