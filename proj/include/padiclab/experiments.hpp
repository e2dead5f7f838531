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
#include <vector>

#include "padiclab/algnum.hpp"
#include "padiclab/measure.hpp"
#include "padiclab/padic.hpp"
#include "padiclab/polyzx.hpp"

namespace padiclab {

// Counter-based generator: splitmix64 over (seed, stream index, counter).
class DigitStream {
 public:
  static constexpr const char* kAlgorithm = "splitmix64-stream/rejection-digits/v1";

  DigitStream(std::uint64_t seed, std::uint64_t index);
  std::uint64_t next_u64();
  // Uniform in [0, p) by rejection sampling.
  std::uint32_t next_digit(std::uint32_t p);

 private:
  std::uint64_t state_;
};

// omega = sum_{i < digits} d_i p^i with digits drawn from the stream.
BigInt sample_residue(DigitStream& stream, std::uint32_t p, unsigned digits);

// All nonzero P with deg <= n, H(P) <= hmax and |P(omega)|_p < H(P)^{-n} Psi(H(P)),
// ordered by (H, a_n, ..., a_0). Throws PrecisionExhausted when a candidate
// cannot be decided at omega's precision.
std::vector<IntPoly> dichotomy_trial(const PadicInt& omega, const PsiModel& psi, unsigned n, std::uint64_t hmax);

struct ShapeCheck {
  std::string kind;  // "last_increment" (convergent psi) or "log_slope" (divergent psi)
  double value = 0;
  double threshold = 0;
  bool pass = false;
};

struct DichotomyReport {
  PsiModel psi;
  unsigned n = 0;
  std::uint32_t p = 0;
  unsigned m = 0;
  std::vector<std::uint64_t> h_grid;
  std::uint64_t seed = 0;
  std::string rng = DigitStream::kAlgorithm;
  // Digits drawn per sample: at least m, extended so every threshold up to
  // max(h_grid) is decidable. omegas holds the full drawn residues.
  unsigned working_precision = 0;
  std::vector<BigInt> omegas;
  std::vector<std::vector<std::uint64_t>> counts;  // sample x cutoff
  std::vector<Rational> mean_curve;
  ShapeCheck shape;
};

struct ExperimentOptions {
  unsigned threads = 1;
};

DichotomyReport dichotomy_report(std::size_t num_samples, std::uint64_t seed, const PsiModel& psi, unsigned n,
                                 const std::vector<std::uint64_t>& h_grid, const Context& ctx,
                                 ExperimentOptions opts = {});

// Algebraic numbers of degree n in Z_p with |omega - alpha|_p < H(alpha)^{-n} Psi(H(alpha)).
std::vector<AlgebraicNumber> thm2_trial(const PadicInt& omega, const PsiModel& psi, unsigned n, std::uint64_t hmax);

struct Thm2Report {
  PsiModel psi;
  unsigned n = 0;
  std::uint32_t p = 0;
  unsigned m = 0;
  unsigned working_precision = 0;
  std::vector<std::uint64_t> h_grid;
  std::uint64_t seed = 0;
  std::string rng = DigitStream::kAlgorithm;
  std::vector<BigInt> omegas;
  std::vector<std::vector<std::uint64_t>> counts;
  std::vector<Rational> mean_curve;
  // Convergence side: sum of mu(chi(alpha)) over H(alpha) <= h versus sum Psi(h).
  std::vector<Rational> mass;
  std::vector<double> psi_sum;
  double kappa = 0;
  ShapeCheck shape;
};

Thm2Report thm2_report(std::size_t num_samples, std::uint64_t seed, const PsiModel& psi, unsigned n,
                       const std::vector<std::uint64_t>& h_grid, const Context& ctx, ExperimentOptions opts = {});

struct ResultantRecord {
  BigInt resultant;
  unsigned p_valuation = 0;  // |R|_p = p^-v
  bool holds = false;        // |R|_p * |R| >= 1
};

ResultantRecord resultant_bound_check(const IntPoly& P, const IntPoly& Q, std::uint32_t p);

// Shape statistics on a mean curve.
double last_increment(const std::vector<Rational>& mean_curve);
double log_slope(const std::vector<std::uint64_t>& h_grid, const std::vector<Rational>& mean_curve);

inline constexpr double kConvergentIncrementMax = 0.1;
inline constexpr double kDivergentSlopeMin = 0.2;

}  // namespace padiclab
