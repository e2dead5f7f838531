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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracle.hpp"
#include "padiclab/errors.hpp"
#include "padiclab/experiments.hpp"
#include "padiclab/roots.hpp"

using namespace padiclab;

namespace {

std::set<std::string> names(const std::vector<IntPoly>& v) {
  std::set<std::string> out;
  for (const auto& P : v) out.insert(to_string(P));
  return out;
}

}  // namespace

TEST_CASE("digit stream is deterministic and in range") {
  DigitStream a(42, 3), b(42, 3), c(42, 4);
  bool differs = false;
  std::vector<int> hist(5, 0);
  for (int i = 0; i < 5000; ++i) {
    const auto x = a.next_digit(5), y = b.next_digit(5), z = c.next_digit(5);
    CHECK(x == y);
    differs = differs || x != z;
    REQUIRE(x < 5);
    ++hist[x];
  }
  CHECK(differs);
  for (int h : hist) CHECK(std::abs(h - 1000) < 150);
  DigitStream s1(9, 0), s2(9, 0);
  CHECK(sample_residue(s1, 3, 10) == sample_residue(s2, 3, 10));
}

TEST_CASE("trial at omega = 0 contains x") {
  auto c = make_context(3, 12);
  const auto sols = dichotomy_trial(make_padic(0, c), parse_psi("pow:-1"), 1, 3);
  CHECK(names(sols).count("[0,1]") == 1);
}

TEST_CASE("trial matches the double-loop oracle") {
  auto c = make_context(3, 12);
  const PsiModel psi = parse_psi("pow:-2");
  for (unsigned long w : {0ul, 1ul, 4ul, 100ul, 5000ul, 123456ul, 531440ul}) {
    const auto sols = dichotomy_trial(make_padic(w, c), psi, 1, 10);
    std::set<std::string> want;
    for (long a1 = -10; a1 <= 10; ++a1)
      for (long a0 = -10; a0 <= 10; ++a0) {
        if (a0 == 0 && a1 == 0) continue;
        const long H = std::max(std::labs(a0), std::labs(a1));
        const long he = std::max(H, 2L);
        // |P(w)|_3 < H^-1 he^-2.
        const unsigned k = oracle::strict_exp(Rational(1, H * he * he), 3);
        if (oracle::val(oracle::eval({a0, a1}, w), 3, 12) >= k)
          want.insert(to_string(IntPoly(std::vector<BigInt>{a0, a1}, 1)));
      }
    CHECK(names(sols) == want);
    // Sorted by (H, a_n, ..., a_0).
    for (std::size_t i = 1; i < sols.size(); ++i) CHECK(height(sols[i - 1]) <= height(sols[i]));
  }
}

TEST_CASE("trial nesting") {
  auto c = make_context(3, 16);
  const PadicInt w = make_padic(777, c);
  const auto small = names(dichotomy_trial(w, parse_psi("pow:-2"), 2, 6));
  const auto large = names(dichotomy_trial(w, parse_psi("pow:-2"), 2, 12));
  const auto tighter = names(dichotomy_trial(w, parse_psi("pow:-3"), 2, 12));
  CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  CHECK(std::includes(large.begin(), large.end(), tighter.begin(), tighter.end()));
}

TEST_CASE("trial reports undecidable thresholds") {
  auto c = make_context(3, 4);
  CHECK_THROWS_AS(dichotomy_trial(make_padic(0, c), parse_psi("pow:-2"), 2, 20), Error);
}

TEST_CASE("dichotomy report determinism and structure") {
  auto c = make_context(3, 8);
  const PsiModel psi = parse_psi("pow:-1");
  const std::vector<std::uint64_t> grid{5, 10, 20};
  const auto a = dichotomy_report(12, 99, psi, 2, grid, c);
  const auto b = dichotomy_report(12, 99, psi, 2, grid, c, ExperimentOptions{4});
  CHECK(a.omegas == b.omegas);
  CHECK(a.counts == b.counts);
  CHECK(a.mean_curve == b.mean_curve);
  CHECK(a.rng == DigitStream::kAlgorithm);
  CHECK(a.working_precision >= 8);
  for (std::size_t i = 0; i < a.counts.size(); ++i) {
    CHECK(std::is_sorted(a.counts[i].begin(), a.counts[i].end()));
    // The first m digits are the precision-m sample from the same stream.
    DigitStream s(99, i);
    CHECK(a.omegas[i] % 6561 == sample_residue(s, 3, 8));
    // Counts equal trial sizes at the working precision.
    const PadicInt w = make_padic(a.omegas[i], make_context(3, a.working_precision));
    CHECK(a.counts[i].back() == dichotomy_trial(w, psi, 2, 20).size());
  }
  Rational total = 0;
  for (const auto& row : a.counts) total += row[1];
  CHECK(a.mean_curve[1] == total / 12);
  CHECK(a.shape.kind == "log_slope");
  CHECK_THROWS_AS(dichotomy_report(3, 1, psi, 2, {10, 5}, c), Error);
}

TEST_CASE("thm2 trial contains algebraic omega and matches a filtered scan") {
  auto c = make_context(3, 14);
  const PadicInt omega = zp_roots(IntPoly{-7, 0, 1}, c).roots.front();
  const PsiModel psi = parse_psi("pow:-1");
  const auto sols = thm2_trial(omega, psi, 2, 7);
  bool found = false;
  for (const auto& a : sols) found = found || (a.minpoly == IntPoly{-7, 0, 1} && a.root == omega);
  CHECK(found);
  // Brute force: every enumerated alpha, distance against H^-2 Psi(H).
  std::size_t want = 0;
  for (const auto& a : enumerate_algebraic(2, 7, whole_zp(c))) {
    const unsigned long H = a.height.get_ui(), he = std::max(H, 2ul);
    const unsigned k = oracle::strict_exp(Rational(1, H * H * he), 3);
    if (oracle::val(a.root.residue() - omega.residue(), 3, 14) >= k) ++want;
  }
  CHECK(sols.size() == want);
}

TEST_CASE("thm2 report mass bound") {
  auto c = make_context(3, 10);
  const auto r = thm2_report(10, 5, parse_psi("pow:-2"), 1, {5, 10, 20}, c, ExperimentOptions{2});
  REQUIRE(r.mass.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(r.mass[i].get_d() <= r.kappa * r.psi_sum[i] * (1 + 1e-12));
    if (i) CHECK(r.mass[i - 1] <= r.mass[i]);
  }
  for (const auto& row : r.counts) CHECK(std::is_sorted(row.begin(), row.end()));
}

TEST_CASE("resultant bound examples") {
  ResultantRecord r = resultant_bound_check(IntPoly{0, 1}, IntPoly{-2, 1}, 2);
  CHECK(abs(r.resultant) == 2);
  CHECK(r.p_valuation == 1);
  CHECK(r.holds);
  r = resultant_bound_check(IntPoly{0, 1}, IntPoly{-3, 1}, 2);
  CHECK(abs(r.resultant) == 3);
  CHECK(r.p_valuation == 0);
  CHECK(r.holds);
  bool common = false;
  try {
    resultant_bound_check(IntPoly{-1, 1}, IntPoly{-1, 1}, 2);
  } catch (const Error& e) {
    common = e.code() == Errc::CommonFactor;
  }
  CHECK(common);
}

TEST_CASE("resultant bound sweep") {
  const auto polys = enumerate_polys(2, PolyFilter{.height_max = 3});
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::size_t i = 0; i < polys.size(); i += 3)
      for (std::size_t j = i + 1; j < polys.size(); j += 5) {
        const BigInt R = oracle::resultant({polys[i].coeffs().begin(), polys[i].coeffs().end()},
                                           {polys[j].coeffs().begin(), polys[j].coeffs().end()});
        if (R == 0) continue;
        const ResultantRecord r = resultant_bound_check(polys[i], polys[j], p);
        CHECK(r.resultant == R);
        CHECK(r.holds);
      }
}

TEST_CASE("shape statistics") {
  CHECK(last_increment({Rational(1), Rational(3, 2), Rational(2)}) == doctest::Approx(0.5));
  // mean = 2 ln H exactly gives slope 2.
  const std::vector<std::uint64_t> grid{10, 100, 1000};
  std::vector<Rational> mean;
  for (auto h : grid) mean.emplace_back(2 * std::log(static_cast<double>(h)));
  CHECK(log_slope(grid, mean) == doctest::Approx(2.0));
}
