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

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "padiclab/errors.hpp"
#include "padiclab/measure.hpp"

using namespace padiclab;

namespace {

// E1 for linear polynomials: the root -a0/a1 lies in Z_p iff v(a1) <= v(a0),
// and the derivative is a1 itself, so everything reduces to a residue scan.
Rational e1_linear_oracle(const Rational& delta, long Q, const Rational& xi, unsigned long p) {
  Rational theta = delta / Rational(Q * Q);
  theta.canonicalize();
  const unsigned kt = oracle::strict_exp(theta, p);
  const oracle::Z total = oracle::ipow(p, kt);
  oracle::Z hits = 0;
  for (oracle::Z r = 0; r < total; ++r) {
    bool in = false;
    for (long a1 = -Q; a1 <= Q && !in; ++a1) {
      if (a1 == 0) continue;
      for (long a0 = -Q; a0 <= Q && !in; ++a0) {
        const unsigned v1 = oracle::val(a1, p, 64), v0 = oracle::val(a0, p, 64);
        if (v1 > v0) continue;
        const long H = std::max(std::labs(a0), std::labs(a1));
        // |a1|_p >= H^-xi  <=>  p^(v1 den) <= H^num.
        const oracle::Z lhs = oracle::ipow(p, v1 * static_cast<unsigned>(xi.get_den().get_ui()));
        const oracle::Z rhs = oracle::ipow(static_cast<unsigned long>(H), static_cast<unsigned>(xi.get_num().get_ui()));
        if (lhs > rhs) continue;
        const oracle::Z v = oracle::eval({a0, a1}, r);
        if (v % total == 0) in = true;
      }
    }
    if (in) ++hits;
  }
  Rational out(hits, total);
  out.canonicalize();
  return out;
}

}  // namespace

TEST_CASE("solution measure examples") {
  auto c = make_context(3, 12);
  const Disc z = whole_zp(c);
  CHECK(solution_measure(IntPoly{0, 1}, 2, z).value == Rational(1, 9));
  CHECK(solution_measure(IntPoly{-2, 0, 1}, 1, z).value == 0);
  CHECK(solution_measure(IntPoly{5}, 1, z).value == 0);
  CHECK(solution_measure(IntPoly{9}, 2, z).value == 1);
  CHECK_THROWS_AS(solution_measure(IntPoly{0, 1}, 13, z), Error);
}

TEST_CASE("solution measure agrees with residue counting") {
  std::mt19937 rng(23);
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    auto c = make_context(static_cast<std::uint32_t>(p), 7);
    const auto polys = oracle::all_polys(3, 3);
    for (int t = 0; t < 150; ++t) {
      const auto& co = polys[rng() % polys.size()];
      const IntPoly P(std::vector<BigInt>(co.begin(), co.end()));
      const unsigned k = 1 + rng() % (p == 5 ? 3 : 5);
      const unsigned radius = rng() % 3;
      const BigInt center = static_cast<unsigned long>(rng() % 200);
      const Disc d = make_disc(make_padic(center, c), radius);
      const Rational want = oracle::solution_measure(co, p, k, d.center.residue(), radius);
      const MeasureEstimate tree = solution_measure(P, k, d);
      CHECK(tree.exact);
      CHECK_MESSAGE(tree.value == want, to_string(P), " k=", k);
      const unsigned res = std::max(k, radius);
      CHECK(solution_measure(P, k, d, res).value == want);
      CHECK(solution_measure(P, k, d, res + 1).value == want);
    }
  }
}

TEST_CASE("ball additivity") {
  auto c = make_context(3, 8);
  const IntPoly P{-7, 0, 1};
  for (unsigned j = 0; j < 4; ++j) {
    const Disc parent = make_disc(make_padic(1, c), j);
    Rational sum = 0;
    for (unsigned d = 0; d < 3; ++d)
      sum += solution_measure(P, 5, make_disc(make_padic(1 + d * pow_ui(3, j), c), j + 1)).value;
    CHECK(sum == solution_measure(P, 5, parent).value);
  }
}

TEST_CASE("strict thresholds round to the next norm value") {
  CHECK(strict_threshold_exponent(Rational(1, 10), 3) == 3);
  CHECK(strict_threshold_exponent(Rational(1, 9), 3) == 3);
  CHECK(strict_threshold_exponent(Rational(1, 8), 3) == 2);
  CHECK(strict_threshold_exponent(Rational(1), 3) == 1);
  CHECK(strict_threshold_exponent(Rational(3), 3) == 0);
  for (long den = 1; den < 500; ++den) {
    const Rational t(1, den);
    CHECK(strict_threshold_exponent(t, 2) == oracle::strict_exp(t, 2));
    CHECK(strict_threshold_exponent(t, 7) == oracle::strict_exp(t, 7));
  }
}

TEST_CASE("union measure example and oracle") {
  auto c = make_context(3, 12);
  const Disc z = whole_zp(c);
  const MeasureEstimate e = union_measure_E(Rational(1), 3, 1, z);
  CHECK(e.value == Rational(17, 27));
  CHECK(e.exact);
  // theta = 1/9 strict gives k = 3.
  CHECK(oracle::union_measure(1, 3, 3, 3) == Rational(17, 27));
  CHECK(union_measure_E(Rational(1), 3, 1, z, UnionOptions{e.resolution_exp + 1, 1}).value == e.value);
  CHECK(union_measure_E(Rational(1), 3, 1, z, UnionOptions{0, 3}).value == e.value);
  // n = 2, Q = 3, delta = 1/3: theta = 1/81, k = 5.
  CHECK(union_measure_E(Rational(1, 3), 3, 2, z).value == oracle::union_measure(2, 3, 3, 5));
  // p = 2, n = 2, Q = 2, delta = 1: theta = 1/8, k = 4.
  auto c2 = make_context(2, 10);
  CHECK(union_measure_E(Rational(1), 2, 2, whole_zp(c2)).value == oracle::union_measure(2, 2, 2, 4));
  CHECK_THROWS_AS(union_measure_E(Rational(1), 0, 1, z), Error);
}

TEST_CASE("union measure monotonicity and subadditivity") {
  auto c = make_context(3, 12);
  const Disc z = whole_zp(c);
  const Rational a = union_measure_E(Rational(1, 9), 3, 2, z).value;
  const Rational b = union_measure_E(Rational(1, 3), 3, 2, z).value;
  const Rational d = union_measure_E(Rational(1), 3, 2, z).value;
  CHECK(a <= b);
  CHECK(b <= d);
  CHECK(union_measure_E(Rational(1, 3), 2, 2, z).value <= union_measure_E(Rational(1), 2, 2, z).value);
  // Subadditivity over the family with n = 1, Q = 3, k = 3.
  Rational sum = 0;
  for (const auto& P : enumerate_polys(1, PolyFilter{.height_max = 3})) sum += solution_measure(P, 3, z).value;
  CHECK(union_measure_E(Rational(1), 3, 1, z).value <= sum);
}

TEST_CASE("union measure in a disc") {
  auto c = make_context(3, 12);
  const Disc d = parse_disc("2:1", c);
  const Rational inside = union_measure_E(Rational(1), 3, 1, d).value;
  const Rational whole = union_measure_E(Rational(1), 3, 1, whole_zp(c)).value;
  CHECK(inside <= d.measure());
  // The three discs of radius 1/3 partition Z_3.
  Rational sum = 0;
  for (int r = 0; r < 3; ++r) sum += union_measure_E(Rational(1), 3, 1, parse_disc(std::to_string(r) + ":1", c)).value;
  CHECK(sum == whole);
}

TEST_CASE("e1 against the linear oracle") {
  auto c = make_context(3, 12);
  for (long Q : {2L, 3L, 5L})
    for (const Rational& delta : {Rational(1), Rational(1, 3)})
      for (const Rational& xi : {Rational(0), Rational(1, 2), Rational(1)}) {
        const MeasureEstimate e = e1_measure(delta, Q, xi, 1, whole_zp(c));
        CHECK(e.exact);
        CHECK_MESSAGE(e.value == e1_linear_oracle(delta, Q, xi, 3), "Q=", Q, " delta=", delta.get_str(),
                      " xi=", xi.get_str());
      }
}

TEST_CASE("e1 bounded by the union and monotone in xi") {
  auto c = make_context(3, 12);
  const Disc z = whole_zp(c);
  const Rational u = union_measure_E(Rational(1, 3), 9, 2, z).value;
  Rational prev = 0;
  for (const Rational& xi : {Rational(0), Rational(1, 2), Rational(1), Rational(3)}) {
    const MeasureEstimate e = e1_measure(Rational(1, 3), 9, xi, 2, z);
    CHECK(e.exact);
    CHECK(e.value <= u);
    CHECK(e.value >= prev);
    prev = e.value;
  }
}

TEST_CASE("psi models") {
  const PsiModel two = parse_psi("pow:-2");
  CHECK(two(1) == two(2));
  CHECK(two(10) == doctest::Approx(0.01));
  CHECK(two.convergent());
  CHECK_FALSE(parse_psi("pow:-1").convergent());
  CHECK(parse_psi("powlog:-1:1.1").convergent());
  CHECK_FALSE(parse_psi("powlog:-1:1").convergent());
  CHECK(parse_psi("powlog:-1:1.1").spec() == "powlog:-1:1.1");
  CHECK_THROWS_AS(parse_psi("pow:1"), Error);
  CHECK_THROWS_AS(parse_psi("exp:2"), Error);
  CHECK_THROWS_AS(parse_psi("pow:0"), Error);
}

TEST_CASE("psi threshold exponents") {
  const PsiModel two = parse_psi("pow:-2");
  // H = 10, n = 2: theta = 10^-4, and 3^-9 < 10^-4 <= 3^-8.
  CHECK(psi_threshold_exp(two, 10, 2, 3) == 9);
  for (std::uint64_t H = 1; H <= 60; ++H) {
    const std::uint64_t he = std::max<std::uint64_t>(H, 2);
    const Rational theta(1, oracle::ipow(H, 2) * oracle::ipow(he, 2));
    CHECK(psi_threshold_exp(two, H, 2, 3) == oracle::strict_exp(theta, 3));
  }
  // Non-integer family: check the bracket p^-k < theta <= p^-(k-1) in long double.
  const PsiModel pl = parse_psi("powlog:-1:1.1");
  for (std::uint64_t H = 2; H <= 200; H += 7) {
    const unsigned k = psi_threshold_exp(pl, H, 2, 3);
    const long double lt = -2 * std::log(static_cast<long double>(H)) + std::log(static_cast<long double>(pl(H)));
    CHECK(-static_cast<long double>(k) * std::log(3.0L) < lt + 1e-12L);
    CHECK(lt <= -static_cast<long double>(k - 1) * std::log(3.0L) + 1e-12L);
  }
}

TEST_CASE("tail sums") {
  const TailSum s = tail_sum(parse_psi("pow:-2"), 1, 1000000);
  CHECK(s.convergent);
  CHECK(s.monotone);
  // Psi(1) = Psi(2) = 1/4 replaces the first term 1.
  CHECK(s.partial == doctest::Approx(M_PI * M_PI / 6 - 0.75).epsilon(1e-5));
  CHECK(s.h_times_psi.back() < s.h_times_psi.front());
  CHECK(s.h_times_psi.back() < 1e-5);
  // Psi(1) = 1/4, then 2^t 4^-t sums to 1.
  CHECK(s.dyadic.back() == doctest::Approx(1.25).epsilon(1e-3));
  const TailSum h = tail_sum(parse_psi("pow:-1"), 1, 1000000);
  CHECK_FALSE(h.convergent);
  CHECK(h.partial == doctest::Approx(std::log(1e6) + 0.5772156649 - 0.5).epsilon(1e-5));
  // Dyadic partial sums of the harmonic case grow linearly in t.
  CHECK(h.dyadic.back() > h.dyadic[h.dyadic.size() / 2] * 1.8);
}
