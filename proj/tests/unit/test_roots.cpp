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

#include "oracle.hpp"
#include "padiclab/errors.hpp"
#include "padiclab/roots.hpp"

using namespace padiclab;

namespace {

std::vector<BigInt> residues(const RootSet& r) {
  std::vector<BigInt> out;
  for (const auto& a : r.roots) out.push_back(a.residue());
  return out;
}

oracle::Coeffs coeffs_of(const IntPoly& P) { return {P.coeffs().begin(), P.coeffs().end()}; }

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::Internal;
}

}  // namespace

TEST_CASE("hensel lift examples") {
  const IntPoly P{-2, 0, 1};
  CHECK(hensel_lift(P, make_padic(3, make_context(7, 2))).residue() == 10);
  CHECK(hensel_lift(P, make_padic(3, make_context(7, 3))).residue() == 108);
  CHECK(hensel_lift(IntPoly{-5, 1}, make_padic(5, make_context(3, 6))).residue() == 5);
  // 10^2 - 2 = 2 * 49 and 108^2 - 2 = 34 * 343.
  CHECK(oracle::eval({-2, 0, 1}, 10) == 98);
  CHECK(oracle::eval({-2, 0, 1}, 108) == 11662);
}

TEST_CASE("hensel precondition failures") {
  auto c = make_context(3, 6);
  // x^2 - 2 at 1: P(1) = -1 is a unit, so |P| < |P'|^2 fails.
  CHECK(hensel_precondition(IntPoly{-2, 0, 1}, make_padic(1, c)) == HenselStatus::Fails);
  CHECK(code_of([&] { hensel_lift(IntPoly{-2, 0, 1}, make_padic(1, c)); }) == Errc::HenselPreconditionFailed);
  // x^2 at 0: P(0) = 0 and P'(0) = 0, undecidable at any precision.
  CHECK(hensel_precondition(IntPoly{0, 0, 1}, make_padic(0, c)) == HenselStatus::Undecidable);
  CHECK(code_of([&] { hensel_lift(IntPoly{0, 0, 1}, make_padic(0, c)); }) == Errc::PrecisionExhausted);
}

TEST_CASE("hensel contract on a sweep") {
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    auto ctx = make_context(static_cast<std::uint32_t>(p), 8);
    const oracle::Z pm = oracle::ipow(p, 8);
    for (const auto& c : oracle::all_polys(3, 3)) {
      const IntPoly P(std::vector<BigInt>(c.begin(), c.end()));
      for (unsigned long x = 0; x < p; ++x) {
        const PadicInt xi = make_padic(x, ctx);
        if (hensel_precondition(P, xi) != HenselStatus::Holds) continue;
        const PadicInt a = hensel_lift(P, xi);
        CHECK(oracle::eval(c, a.residue()) % pm == 0);
        const oracle::Z fx = oracle::eval(c, x), dx = oracle::eval(oracle::derivative(c), x);
        const unsigned vf = oracle::val(fx, p, 100), vd = oracle::val(dx, p, 100);
        REQUIRE(vf > 2 * vd);
        const unsigned need = std::min<unsigned>(8, vf - 2 * vd);
        CHECK(oracle::val(a.residue() - x, p, 8) >= need);
      }
    }
  }
}

TEST_CASE("zp_roots examples") {
  CHECK(residues(zp_roots(IntPoly{-1, 0, 1}, make_context(3, 4))) == std::vector<BigInt>{1, 80});
  const RootSet none = zp_roots(IntPoly{-2, 0, 1}, make_context(3, 4));
  CHECK(none.roots.empty());
  CHECK_FALSE(none.complete_in_Zp);
  const RootSet two = zp_roots(IntPoly{-2, 0, 1}, make_context(7, 2));
  CHECK(residues(two) == std::vector<BigInt>{10, 39});
  CHECK(two.complete_in_Zp);
  CHECK(code_of([] { zp_roots(IntPoly{0, 0, 1}, make_context(3, 6)); }) == Errc::UnresolvedBranch);
  // Constants have no roots; content does not matter.
  CHECK(zp_roots(IntPoly{9}, make_context(3, 4)).roots.empty());
  CHECK(residues(zp_roots(IntPoly{0, 3}, make_context(3, 4))) == std::vector<BigInt>{0});
}

TEST_CASE("zp_roots equals the digit-tree oracle") {
  for (unsigned long p : {2ul, 3ul}) {
    for (unsigned m : {1u, 3u, 6u}) {
      auto ctx = make_context(static_cast<std::uint32_t>(p), m);
      for (const auto& c : oracle::all_polys(3, 3)) {
        const IntPoly P(std::vector<BigInt>(c.begin(), c.end()));
        const RootSearch rs = find_zp_roots(P, ctx);
        if (!rs.unresolved.empty()) {
          // At m = 6 open branches only come from repeated factors; at shallow
          // precision distinct roots may still share their first m digits.
          if (m == 6) CHECK(oracle::resultant(c, oracle::derivative(c)) == 0);
          continue;
        }
        const auto prim = content_and_primitive(P).primitive;
        std::vector<BigInt> want;
        if (prim.degree() > 0) want = oracle::roots(coeffs_of(prim), p, m, 3 * m);
        CHECK_MESSAGE(residues(rs.set) == want, to_string(P), " p=", p, " m=", m);
        for (const auto& a : rs.set.roots) CHECK(valuation(eval_padic(P, a)) == Valuation::at_least(m));
      }
    }
  }
}

TEST_CASE("nearest root examples") {
  auto c = make_context(3, 6);
  NearestRoot r = nearest_root(IntPoly{0, -3, 1}, make_padic(9, c));
  CHECK(r.alpha.residue() == 0);
  CHECK(r.distance == Valuation::exact(2));
  r = nearest_root(IntPoly{-5, 1}, make_padic(5, c));
  CHECK(r.alpha.residue() == 5);
  CHECK(r.distance == Valuation::at_least(6));
  r = nearest_root(IntPoly{0, -9, 1}, make_padic(1, c));
  CHECK(r.alpha.residue() == 0);
  CHECK(r.distance == Valuation::exact(0));
  CHECK(code_of([&] { nearest_root(IntPoly{-2, 0, 1}, make_padic(1, c)); }) == Errc::NoRootInZp);
}

TEST_CASE("nearest root refuses when an extension root is closer") {
  // x((x-1)^2 - 27): the quadratic factor has roots 1 +- sqrt(27), not in Q_3,
  // at distance 3^-3/2 from 28 while the only Z_3 root 0 is at distance 1.
  const IntPoly P = IntPoly{0, 1} * IntPoly{-26, -2, 1};
  CHECK(code_of([&] { nearest_root(P, make_padic(28, make_context(3, 8))); }) == Errc::NoRootInZp);
  // x(x^2 + 1) at p = 2: +-i sit at distance 2^-1/2 from 1, strictly between
  // the Z_2 root 0 (distance 1) and the next integral level.
  CHECK(code_of([&] { nearest_root(IntPoly{0, 1, 0, 1}, make_padic(1, make_context(2, 8))); }) == Errc::NoRootInZp);
  CHECK(code_of([&] { lemma4_check(IntPoly{0, -1, 0, -1}, make_padic(3, make_context(2, 8))); }) == Errc::NoRootInZp);
}

TEST_CASE("nearest-root bound examples") {
  auto c = make_context(3, 6);
  Lemma4Record r = lemma4_check(IntPoly{0, -3, 1}, make_padic(9, c));
  CHECK(r.alpha.residue() == 0);
  CHECK(r.lhs_val.to_string() == "2");
  // P(9) = 54 = 2 * 3^3 and P'(0) = -3, so the right side is 3^-(3-1).
  CHECK(r.rhs_val.to_string() == "2");
  CHECK(r.holds);
  r = lemma4_check(IntPoly{-5, 1}, make_padic(5, c));
  CHECK(r.lhs_val.kind == ValRecord::AtLeast);
  CHECK(r.rhs_val.kind == ValRecord::Infinite);
  CHECK(r.holds);
}

TEST_CASE("nearest-root bound sweep") {
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    auto ctx = make_context(static_cast<std::uint32_t>(p), 8);
    const unsigned long count = oracle::ipow(p, 2).get_ui();
    for (const auto& c : oracle::all_polys(2, 4)) {
      const IntPoly P(std::vector<BigInt>(c.begin(), c.end()));
      if (P.degree() == 0) continue;
      const RootSearch rs = find_zp_roots(P, ctx);
      if (!rs.unresolved.empty()) continue;
      for (unsigned long w = 0; w < count; ++w) {
        try {
          const Lemma4Record r = lemma4_check(rs.set, make_padic(w, ctx));
          CHECK_MESSAGE(r.holds, to_string(P), " omega=", w);
          // Independent replay: v(omega - alpha) >= v(P(omega)) - v(P'(alpha)).
          const oracle::Z pw = oracle::eval(c, w);
          const unsigned lhs = oracle::val(r.alpha.residue() - w, p, 8);
          if (pw != 0 && lhs < 8) {
            const long vd = oracle::val(oracle::eval(oracle::derivative(c), r.alpha.residue()), p, 8);
            CHECK(static_cast<long>(lhs) >= static_cast<long>(oracle::val(pw, p, 100)) - vd);
          }
        } catch (const Error& e) {
          CHECK((e.code() == Errc::NoRootInZp || e.code() == Errc::PrecisionExhausted));
        }
      }
    }
  }
}

TEST_CASE("root size check") {
  auto c = make_context(3, 6);
  CHECK(root_size_check(IntPoly{1, 3, 5}, c));
  for (const auto& P : enumerate_polys(2, PolyFilter{.require_leading = true, .require_exact_degree = true,
                                                      .height_max = 5, .prime = 3}))
    CHECK(root_size_check(P, c));
}

TEST_CASE("has_root_near") {
  // x^2 - 2 over Z_7 has a root congruent to 3 mod 7 and to 4567 mod 7^5.
  CHECK(has_root_near(IntPoly{-2, 0, 1}, 3, 1, 7));
  CHECK_FALSE(has_root_near(IntPoly{-2, 0, 1}, 3, 2, 7));
  CHECK(has_root_near(IntPoly{-2, 0, 1}, 4567, 5, 7));
  CHECK_FALSE(has_root_near(IntPoly{-2, 0, 1}, 4567, 6, 7));
  CHECK_FALSE(has_root_near(IntPoly{-2, 0, 1}, 2, 1, 7));
  // (x-1)^2 - 27 near 28: roots at valuation 3/2 from 1, so within 3^-1 but not 3^-2.
  CHECK(has_root_near(IntPoly{-26, -2, 1}, 28, 1, 3));
  CHECK_FALSE(has_root_near(IntPoly{-26, -2, 1}, 28, 2, 3));
}

TEST_CASE("separation profile examples") {
  auto c = make_context(3, 10);
  // x(x-9): roots 0 and 9, H = 9.
  RootSeparationProfile prof = separation_profile(IntPoly{0, -9, 1}, c, Rational(1, 2), 4);
  CHECK(prof.grid_T == 9);
  REQUIRE(prof.rho.size() == 1);
  CHECK(prof.rho_exact[0].has_value());
  CHECK(*prof.rho_exact[0] == 1);
  // (l-1)/T <= rho < l/T with rho = 1 gives l = T + 1.
  CHECK(prof.l[0] == 10);
  prof = separation_profile(IntPoly{-3, -2, 1}, c, Rational(1, 2), 8);  // roots -1, 3 at distance 1
  CHECK(prof.grid_T == 17);
  CHECK(prof.rho[0] == 0);
  CHECK(prof.l[0] == 1);
  CHECK(code_of([&] { separation_profile(IntPoly{-2, 0, 1}, c, Rational(1, 2), 4); }) == Errc::ProfileUnavailable);
}

TEST_CASE("separation profile invariants") {
  auto c = make_context(3, 10);
  const Rational eps(1, 2);
  for (const auto& P : enumerate_polys(3, PolyFilter{.height_max = 4, .height_min = 2})) {
    const RootSearch rs = find_zp_roots(P, c);
    if (!rs.unresolved.empty() || rs.set.roots.size() < 2) continue;
    for (unsigned d : {1u, 3u}) {
      const auto prof = separation_profile(P, c, eps, d);
      const double T = prof.grid_T;
      for (std::size_t j = 0; j < prof.rho.size(); ++j) {
        if (j > 0) {
          CHECK(prof.rho[j - 1] >= prof.rho[j]);
          CHECK(prof.l[j - 1] >= prof.l[j]);
        }
        if (prof.rho_exact[j]) {
          Rational lo(prof.l[j] - 1, prof.grid_T), hi(prof.l[j], prof.grid_T);
          lo.canonicalize();
          hi.canonicalize();
          CHECK(lo <= *prof.rho_exact[j]);
          CHECK(*prof.rho_exact[j] < hi);
        } else {
          CHECK((prof.l[j] - 1) / T <= prof.rho[j] + 1e-9);
          CHECK(prof.rho[j] < prof.l[j] / T);
        }
      }
      // r_j = (l_{j+1} + ... + l_k) / T.
      for (std::size_t j = 0; j < prof.r.size(); ++j) {
        unsigned long sum = 0;
        for (std::size_t i = j; i < prof.l.size(); ++i) sum += prof.l[i];
        Rational want(sum, prof.grid_T);
        want.canonicalize();
        CHECK(prof.r[j] == want);
      }
    }
  }
}

TEST_CASE("derivative diagnostic") {
  auto c = make_context(3, 10);
  // Well separated roots 1 and 2 of (x-1)(x-2) at p = 3: r_1 = 0 and |P'(1)| = 1.
  const IntPoly P{2, -3, 1};
  const auto prof = separation_profile(P, c, Rational(1, 2), 4);
  const Lemma5Record r = lemma5_check(P, prof);
  Rational r1(prof.l[0], prof.grid_T);
  r1.canonicalize();
  CHECK(prof.r[0] == r1);
  CHECK(r.derivative_val == 0);
  CHECK(r.log_abs_derivative == doctest::Approx(0));
  // Roots 0 and 9 with H = 9: |P'(0)|_3 = |-9|_3 = 3^-2 against 9^-r_1.
  const IntPoly P2{0, -9, 1};
  const auto prof2 = separation_profile(P2, c, Rational(1, 2), 4);
  const Lemma5Record r2 = lemma5_check(P2, prof2);
  CHECK(r2.derivative_val == 2);
  CHECK(r2.log_lower == doctest::Approx(-prof2.r[0].get_d() * std::log(9.0)));
  CHECK(r2.lower_ratio == doctest::Approx(r2.log_abs_derivative - r2.log_lower));
}
