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

#include <random>
#include <set>

#include "oracle.hpp"
#include "padiclab/errors.hpp"
#include "padiclab/polyzx.hpp"

using namespace padiclab;

namespace {

oracle::Coeffs coeffs_of(const IntPoly& P) { return {P.coeffs().begin(), P.coeffs().end()}; }

IntPoly poly_of(const oracle::Coeffs& c) { return IntPoly(std::vector<BigInt>(c.begin(), c.end())); }

}  // namespace

TEST_CASE("zero polynomial is rejected") {
  CHECK_THROWS_AS(IntPoly({0, 0, 0}), Error);
  CHECK_THROWS_AS(parse_poly("[0]"), Error);
}

TEST_CASE("height") {
  CHECK(height(IntPoly{1, -5, 1}) == 5);
  CHECK(height(IntPoly{7}) == 7);
  CHECK(height(IntPoly{3, 0, 0, 3}) == 3);
}

TEST_CASE("content and primitive part") {
  auto s = content_and_primitive(IntPoly{18, 12, 6});
  CHECK(s.content == 6);
  CHECK(s.primitive == IntPoly{3, 2, 1});
  s = content_and_primitive(IntPoly{1, 1});
  CHECK(s.content == 1);
  CHECK(s.primitive == IntPoly{1, 1});
  s = content_and_primitive(IntPoly{8, 0, -4});
  CHECK(s.content == 4);
  CHECK(s.primitive == IntPoly{2, 0, -1});
}

TEST_CASE("content is multiplicative on random pairs") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> coef(-20, 20);
  for (int t = 0; t < 300; ++t) {
    std::vector<BigInt> a(3), b(3);
    for (auto& c : a) c = coef(rng);
    for (auto& c : b) c = coef(rng);
    if (a == std::vector<BigInt>(3, 0) || b == std::vector<BigInt>(3, 0)) continue;
    const IntPoly P(a), Q(b);
    CHECK(content(P * Q) == content(P) * content(Q));
    const auto s = content_and_primitive(P);
    CHECK(height(P) == s.content * height(s.primitive));
  }
}

TEST_CASE("derivatives") {
  CHECK(*derivative(IntPoly{0, 0, 0, 1}, 1) == IntPoly{0, 0, 3});
  CHECK(*derivative(IntPoly{0, 0, 0, 1}, 3) == IntPoly{6});
  CHECK(*derivative(IntPoly{1, 3, 5}, 2) == IntPoly{10});
  CHECK_FALSE(derivative(IntPoly{1, 3, 5}, 3).has_value());
}

TEST_CASE("p-adic evaluation") {
  auto c34 = make_context(3, 4);
  const PadicInt v = eval_padic(IntPoly{0, 1}, make_padic(9, c34));
  CHECK(v.residue() == 9);
  CHECK(valuation(v) == Valuation::exact(2));
  CHECK(eval_padic(IntPoly{-2, 0, 1}, make_padic(10, make_context(7, 2))).residue() == 0);
  CHECK(eval_padic(IntPoly{1, 1}, make_padic(-1, c34)).residue() == 0);
}

TEST_CASE("evaluation locality") {
  std::mt19937_64 rng(3);
  auto ctx = make_context(3, 8);
  const IntPoly P{5, -7, 0, 2, 11};
  for (int t = 0; t < 200; ++t) {
    const unsigned k = 1 + rng() % 8;
    const BigInt pk = pow_ui(3, k);
    const BigInt w = static_cast<unsigned long>(rng() % 6561);
    const BigInt w2 = w + pk * static_cast<unsigned long>(rng() % 50);
    const BigInt a = eval_padic(P, make_padic(w, ctx)).residue(), b = eval_padic(P, make_padic(w2, ctx)).residue();
    CHECK((a - b) % pk == 0);
    CHECK(a == ((oracle::eval(coeffs_of(P), w) % 6561) + 6561) % 6561);
  }
}

TEST_CASE("resultant examples") {
  CHECK(abs(resultant(IntPoly{0, 1}, IntPoly{-2, 1})) == 2);
  CHECK(resultant(IntPoly{-1, 1}, IntPoly{-1, 1}) == 0);
  CHECK(resultant(IntPoly{1, 0, 1}, IntPoly{0, 1}) == 1);
}

TEST_CASE("resultant agrees with rational elimination") {
  const auto polys = oracle::all_polys(2, 2);
  std::mt19937 rng(5);
  for (int t = 0; t < 2000; ++t) {
    const auto& a = polys[rng() % polys.size()];
    const auto& b = polys[rng() % polys.size()];
    CHECK(resultant(poly_of(a), poly_of(b)) == oracle::resultant(a, b));
  }
}

TEST_CASE("resultant root form on products of linear factors") {
  // P = 2(x-1)(x+3), Q = 3(x-2)(x-5)(x+1).
  const IntPoly P = IntPoly{2} * IntPoly{-1, 1} * IntPoly{3, 1};
  const IntPoly Q = IntPoly{3} * IntPoly{-2, 1} * IntPoly{-5, 1} * IntPoly{1, 1};
  const long a[] = {1, -3}, b[] = {2, 5, -1};
  BigInt prod = BigInt(8) * 9;  // 2^3 * 3^2
  for (long x : a)
    for (long y : b) prod *= x - y;
  CHECK(resultant(P, Q) == prod);
}

TEST_CASE("irreducibility examples") {
  CHECK(is_irreducible(IntPoly{-2, 0, 1}));
  CHECK_FALSE(is_irreducible(IntPoly{-1, 0, 1}));
  CHECK_FALSE(is_irreducible(IntPoly{1, 3, 2}));
  // Quartic with no rational root that splits into quadratics.
  CHECK_FALSE(is_irreducible(IntPoly{1, 0, 0, 0, 4}));  // (2x^2+2x+1)(2x^2-2x+1)
  CHECK(is_irreducible(IntPoly{-2, 0, 0, 0, 1}));
  CHECK_THROWS_AS(is_irreducible(IntPoly{1, 0, 0, 0, 0, 1}), Error);
}

TEST_CASE("irreducibility matches the factor-search oracle") {
  for (unsigned n : {2u, 3u}) {
    for (const auto& c : oracle::all_polys(n, n == 2 ? 3 : 2)) {
      const IntPoly P = poly_of(c);
      if (content(P) != 1) continue;
      CHECK_MESSAGE(is_irreducible(P) == oracle::irreducible(c), to_string(P));
    }
  }
  std::mt19937 rng(9);
  const auto quartics = oracle::all_polys(4, 2);
  for (int t = 0; t < 300; ++t) {
    const auto& c = quartics[rng() % quartics.size()];
    const IntPoly P = poly_of(c);
    if (content(P) != 1) continue;
    CHECK_MESSAGE(is_irreducible(P) == oracle::irreducible(c), to_string(P));
  }
}

TEST_CASE("leading predicate") {
  CHECK(is_leading(IntPoly{1, 3, 5}, 3));
  CHECK_FALSE(is_leading(IntPoly{0, 7, 1}, 3));
  CHECK_FALSE(is_leading(IntPoly{1, 2, 9}, 3));
}

TEST_CASE("squarefree part and derivative gcd") {
  const IntPoly P = IntPoly{-1, 1} * IntPoly{-1, 1} * IntPoly{2, 0, 1};
  CHECK(derivative_gcd(P) == IntPoly{-1, 1});
  CHECK(squarefree_part(P) == IntPoly{-1, 1} * IntPoly{2, 0, 1});
  CHECK(squarefree_part(IntPoly{0, 0, 6}) == IntPoly{0, 1});
}

TEST_CASE("enumeration counts and order") {
  CHECK(enumerate_polys(1, PolyFilter{.height_max = 1}).size() == 8);
  for (unsigned n : {1u, 2u})
    for (unsigned long h : {1ul, 2ul, 3ul}) {
      const auto all = enumerate_polys(n, PolyFilter{.height_max = h});
      const unsigned long side = 2 * h + 1;
      unsigned long box = 1;
      for (unsigned i = 0; i <= n; ++i) box *= side;
      CHECK(all.size() == box - 1);
      std::set<std::string> seen;
      for (const auto& P : all) seen.insert(to_string(P));
      CHECK(seen.size() == all.size());
    }
  // Lexicographic on (H, a_n, ..., a_0).
  const auto all = enumerate_polys(2, PolyFilter{.height_max = 3});
  for (std::size_t i = 1; i < all.size(); ++i) {
    const auto key = [](const IntPoly& P) {
      std::vector<BigInt> k{height(P)};
      for (unsigned j = 3; j-- > 0;) k.push_back(P.coeff(j));
      return k;
    };
    CHECK(key(all[i - 1]) < key(all[i]));
  }
  // The pull stream yields the same sequence.
  PolyStream s(2, PolyFilter{.height_max = 3});
  std::size_t i = 0;
  while (auto P = s.next()) CHECK(*P == all[i++]);
  CHECK(i == all.size());
}

TEST_CASE("enumeration filters") {
  for (const auto& P : enumerate_polys(2, PolyFilter{.require_leading = true, .height_max = 1, .prime = 3}))
    CHECK(P.coeff(2) == 1);
  std::size_t want = 0;
  for (const auto& c : oracle::all_polys(2, 3))
    if (oracle::irreducible(c)) ++want;
  CHECK(enumerate_polys(2, PolyFilter{.require_irreducible = true, .require_primitive = true, .height_max = 3})
            .size() == want);
}

TEST_CASE("text form") {
  CHECK(to_string(IntPoly{1, -5, 1}) == "[1,-5,1]");
  CHECK(parse_poly(" [1, -5, 1] ") == IntPoly{1, -5, 1});
  CHECK(parse_poly("[1,-5,1,0]").nominal_degree() == 3);
  CHECK_THROWS_AS(parse_poly("[1,x]"), Error);
}
