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

#include "padiclab/algnum.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

#include "padiclab/errors.hpp"
#include "padiclab/roots.hpp"

namespace padiclab {

Rational Disc::measure() const {
  Rational mu(1, pow_ui(center.prime(), radius_exp));
  mu.canonicalize();
  return mu;
}

bool Disc::contains(const PadicInt& omega) const { return dist(omega, center).reaches(radius_exp); }

Disc make_disc(const PadicInt& center, unsigned k) {
  if (k > center.precision())
    fail(Errc::PrecisionExhausted,
         "disc radius p^-" + std::to_string(k) + " finer than precision " + std::to_string(center.precision()));
  return Disc{center, k};
}

Disc whole_zp(const Context& ctx) { return Disc{make_padic(0, ctx), 0}; }

Disc parse_disc(std::string_view text, const Context& ctx) {
  if (text.empty() || text == "Zp" || text == "zp") return whole_zp(ctx);
  auto colon = text.rfind(':');
  if (colon == std::string_view::npos) fail(Errc::Usage, "disc must be 'center:k' or 'Zp', got '" + std::string(text) + "'");
  BigInt center = parse_bigint(text.substr(0, colon));
  BigInt k = parse_bigint(text.substr(colon + 1));
  require(k >= 0 && k <= 1000, "disc radius exponent out of range");
  return make_disc(make_padic(center, ctx), static_cast<unsigned>(k.get_ui()));
}

std::string to_string(const Disc& disc) { return disc.center.residue().get_str() + ":" + std::to_string(disc.radius_exp); }

void for_each_algebraic(unsigned n, std::uint64_t hmin, std::uint64_t hmax, const Disc& disc,
                        const std::function<bool(const AlgebraicNumber&)>& visit) {
  require(n >= 1 && n <= 4, "algebraic degree must be in [1, 4]");
  require(hmin >= 1, "heights start at 1");
  const Context& ctx = disc.context();
  for_each_coeffs(n, hmin, hmax, [&](std::span<const long long> c) {
    if (c[n] <= 0) return true;
    long long g = 0;
    for (long long v : c) g = std::gcd(g, v);
    if (g != 1) return true;
    IntPoly P = IntPoly::from_ints(c);
    if (!is_irreducible(P)) return true;
    const RootSet rs = zp_roots(P, ctx);
    const BigInt h = height(P);
    for (const auto& r : rs.roots) {
      if (!disc.contains(r)) continue;
      if (!visit(AlgebraicNumber{P, r, h})) return false;
    }
    return true;
  });
}

std::vector<AlgebraicNumber> enumerate_algebraic(unsigned n, std::uint64_t hmax, const Disc& disc) {
  std::vector<AlgebraicNumber> out;
  for_each_algebraic(n, 1, hmax, disc, [&](const AlgebraicNumber& a) {
    out.push_back(a);
    return true;
  });
  return out;
}

std::uint64_t count_by_height(unsigned n, std::uint64_t h, const Disc& disc) {
  require(h >= 1, "heights start at 1");
  std::uint64_t count = 0;
  for_each_algebraic(n, h, h, disc, [&](const AlgebraicNumber&) {
    ++count;
    return true;
  });
  return count;
}

namespace {

struct DirichletSetup {
  BigInt box;       // p^k Q
  unsigned kt = 0;  // strict threshold exponent of p^{-2k} C Q^{-n-1}
  BigInt modulus;   // p^kt
};

DirichletSetup dirichlet_setup(const PadicInt& omega, unsigned n, const BigInt& Q, unsigned k, const Rational& C) {
  require(n >= 1, "degree must be at least 1");
  require(Q > 1, "Q must exceed 1");
  require(C > 0, "C must be positive");
  const std::uint32_t p = omega.prime();
  DirichletSetup s;
  s.box = pow_ui(p, k) * Q;
  BigInt qpow;
  mpz_pow_ui(qpow.get_mpz_t(), Q.get_mpz_t(), n + 1);
  Rational theta = C / Rational(pow_ui(p, 2 * k) * qpow);
  theta.canonicalize();
  s.kt = strict_threshold_exponent(theta, p);
  if (s.kt > omega.precision())
    fail(Errc::PrecisionExhausted, "Dirichlet threshold needs " + std::to_string(s.kt) + " digits, precision is " +
                                       std::to_string(omega.precision()));
  s.modulus = pow_ui(p, s.kt);
  return s;
}

}  // namespace

std::vector<IntPoly> dirichlet_solutions(const PadicInt& omega, unsigned n, const BigInt& Q, unsigned k,
                                         const Rational& C) {
  const DirichletSetup s = dirichlet_setup(omega, n, Q, k, C);
  if (!s.box.fits_slong_p() || s.box > (BigInt(1) << 40)) fail(Errc::Unsupported, "Dirichlet box too large");
  const long long B = s.box.get_si();
  const long long Qs = Q.get_si();
  const long long pk = pow_ui(omega.prime(), k).get_si();
  const BigInt& M = s.modulus;

  std::vector<BigInt> wpow(n + 1);
  wpow[0] = 1;
  for (unsigned i = 1; i <= n; ++i) wpow[i] = (wpow[i - 1] * omega.residue()) % M;

  // c holds a_0..a_n; a_1 ranges over [-B, B], a_j = p^k b_j with |b_j| <= Q.
  std::vector<long long> c(n + 1, 0);
  c[1] = -B;
  for (unsigned j = 2; j <= n; ++j) c[j] = -Qs * pk;
  std::vector<std::vector<long long>> sols;
  const std::size_t cap = 20'000'000;
  for (;;) {
    BigInt sum = 0;
    for (unsigned i = 1; i <= n; ++i) sum += BigInt(static_cast<long>(c[i])) * wpow[i];
    BigInt r;
    BigInt neg = -sum;
    mpz_fdiv_r(r.get_mpz_t(), neg.get_mpz_t(), M.get_mpz_t());
    // a_0 = r + t M within [-B, B].
    BigInt lo = BigInt(static_cast<long>(-B)) - r;
    BigInt t0;
    mpz_cdiv_q(t0.get_mpz_t(), lo.get_mpz_t(), M.get_mpz_t());
    for (BigInt a0 = r + t0 * M; a0 <= static_cast<long>(B); a0 += M) {
      c[0] = a0.get_si();
      if (std::all_of(c.begin(), c.end(), [](long long v) { return v == 0; })) continue;
      sols.push_back(c);
      if (sols.size() > cap) fail(Errc::Unsupported, "Dirichlet solution set exceeds the desk-scale cap");
    }
    // Odometer over (a_1, b_2, ..., b_n).
    unsigned j = 1;
    for (; j <= n; ++j) {
      const long long step = j == 1 ? 1 : pk;
      const long long top = j == 1 ? B : Qs * pk;
      if (c[j] < top) {
        c[j] += step;
        break;
      }
      c[j] = -top;
    }
    if (j > n) break;
  }
  if (sols.empty())
    fail(Errc::BoxExhausted, "no box polynomial reaches |P(omega)|_p < p^-" + std::to_string(s.kt) + "; enlarge C");

  auto key_height = [](const std::vector<long long>& v) {
    long long h = 0;
    for (long long x : v) h = std::max(h, x < 0 ? -x : x);
    return h;
  };
  std::sort(sols.begin(), sols.end(), [&](const auto& a, const auto& b) {
    const long long ha = key_height(a), hb = key_height(b);
    if (ha != hb) return ha < hb;
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  std::vector<IntPoly> out;
  out.reserve(sols.size());
  for (const auto& v : sols) out.emplace_back(IntPoly::from_ints(v).coeffs(), n);
  return out;
}

DirichletResult dirichlet_polynomial(const PadicInt& omega, unsigned n, const BigInt& Q, unsigned k,
                                     const Rational& C) {
  const DirichletSetup s = dirichlet_setup(omega, n, Q, k, C);
  auto sols = dirichlet_solutions(omega, n, Q, k, C);
  // Pigeonhole: half-box polynomials outnumber residue classes mod p^kt.
  BigInt count = (s.box + 1) * (s.box + 1);
  for (unsigned j = 2; j <= n; ++j) count *= (Q + 1);
  return DirichletResult{sols.front(), s.kt, s.box, count > s.modulus};
}

std::string_view reject_reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::DerivativeTooSmall:
      return "DerivativeTooSmall";
    case RejectReason::NotIrreducibleFallbackExhausted:
      return "NotIrreducibleFallbackExhausted";
  }
  return "Unknown";
}

ApproxResult constructive_approximant(const PadicInt& omega, unsigned n, const BigInt& Q, unsigned k,
                                      const Rational& C) {
  const std::uint32_t p = omega.prime();
  BigInt qpow;
  mpz_pow_ui(qpow.get_mpz_t(), Q.get_mpz_t(), n + 1);
  require(C < Rational(qpow), "constructive approximant needs C < Q^(n+1)");
  Rational bound = C / Rational(qpow);
  bound.canonicalize();
  const unsigned kC = strict_threshold_exponent(bound, p);

  ApproxResult res;
  for (const IntPoly& P : dirichlet_solutions(omega, n, Q, k, C)) {
    ++res.candidates_tried;
    const auto dP = derivative(P, 1);
    if (!dP || valuation(eval_padic(*dP, omega)).exceeds(k)) {
      ++res.derivative_failures;
      continue;
    }
    const PadicInt alpha = hensel_lift(P, omega);
    IntPoly prim = content_and_primitive(P).primitive;
    if (prim.degree() != n || !is_irreducible(prim)) {
      ++res.reducible_failures;
      continue;
    }
    if (prim.leading() < 0) prim = -prim;
    const Valuation d = dist(omega, alpha);
    if (!d.reaches(std::min(kC, omega.precision())))
      fail(Errc::Internal, "approximant violates |omega - alpha|_p < C Q^(-n-1)");
    res.alpha = AlgebraicNumber{prim, alpha, height(prim)};
    res.source = P;
    res.distance = d;
    return res;
  }
  res.rejected = res.derivative_failures == res.candidates_tried ? RejectReason::DerivativeTooSmall
                                                                 : RejectReason::NotIrreducibleFallbackExhausted;
  return res;
}

namespace {

// Residue classes mod p^L, with a u64 fast path.
class ClassSet {
 public:
  explicit ClassSet(const BigInt& modulus) : mod_(modulus), small_(modulus.fits_ulong_p()) {}

  bool insert(const BigInt& residue) {
    if (small_) return fast_.insert(mpz_fdiv_ui(residue.get_mpz_t(), mod_.get_ui())).second;
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), residue.get_mpz_t(), mod_.get_mpz_t());
    return slow_.insert(r).second;
  }

 private:
  BigInt mod_;
  bool small_;
  std::unordered_set<unsigned long> fast_;
  std::set<BigInt> slow_;
};

}  // namespace

RegularSystemReport regular_witness(const Disc& disc, unsigned s, unsigned n) {
  require(s >= 1, "T exponent s must be at least 1");
  const Context& ctx = disc.context();
  const std::uint32_t p = ctx->prime();
  const unsigned L = s * (n + 1);
  if (ctx->precision() <= L)
    fail(Errc::PrecisionExhausted, "regular witness with T = p^" + std::to_string(L) + " needs precision > " +
                                       std::to_string(L));
  RegularSystemReport rep{p, ctx->precision(), n, s, pow_ui(p, L), disc, {}, 0, Rational(0), false, false};
  ClassSet taken(pow_ui(p, L + 1));
  const std::uint64_t hmax = pow_ui(p, s).get_ui();
  for_each_algebraic(n, 1, hmax, disc, [&](const AlgebraicNumber& a) {
    ++rep.candidates;
    if (taken.insert(a.root.residue())) rep.points.push_back(a);
    return true;
  });
  rep.density_constant = Rational(BigInt(static_cast<unsigned long>(rep.points.size()))) / (Rational(rep.T) * disc.measure());
  rep.density_constant.canonicalize();
  rep.separation_ok = audit_separation(rep);
  rep.maximality_ok = audit_maximality(rep);
  return rep;
}

namespace {

std::vector<BigInt> selected_classes(const RegularSystemReport& r) {
  const BigInt mod = pow_ui(r.p, r.s * (r.n + 1) + 1);
  std::vector<BigInt> cls;
  cls.reserve(r.points.size());
  for (const auto& a : r.points) {
    BigInt c;
    mpz_fdiv_r(c.get_mpz_t(), a.root.residue().get_mpz_t(), mod.get_mpz_t());
    cls.push_back(c);
  }
  std::sort(cls.begin(), cls.end());
  return cls;
}

}  // namespace

// Pairwise |g_i - g_j|_p >= 1/T  <=>  v(g_i - g_j) <= L  <=>  distinct classes mod p^{L+1}.
bool audit_separation(const RegularSystemReport& r) {
  const auto cls = selected_classes(r);
  return std::adjacent_find(cls.begin(), cls.end()) == cls.end();
}

bool audit_maximality(const RegularSystemReport& r) {
  const auto cls = selected_classes(r);
  const BigInt mod = pow_ui(r.p, r.s * (r.n + 1) + 1);
  bool ok = true;
  for_each_algebraic(r.n, 1, pow_ui(r.p, r.s).get_ui(), r.disc, [&](const AlgebraicNumber& a) {
    BigInt c;
    mpz_fdiv_r(c.get_mpz_t(), a.root.residue().get_mpz_t(), mod.get_mpz_t());
    ok = std::binary_search(cls.begin(), cls.end(), c);
    return ok;
  });
  return ok;
}

}  // namespace padiclab
