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

#include "padiclab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>

#include "detail/ring.hpp"
#include "padiclab/errors.hpp"

namespace padiclab {

using detail::horner;
using detail::horner2;
using detail::to_ring;
using detail::with_ring;

namespace {

// Newton iteration in a ring of m + vd digits, vd = v(P'(x)). Returns the
// root mod p^m once P(x) vanishes to m + vd digits.
BigInt newton_lift(const IntPoly& P, const BigInt& x0, std::uint32_t p, unsigned m, unsigned vd) {
  return with_ring(p, m + vd, [&](const auto& ring) -> BigInt {
    const auto cs = to_ring(ring, std::span<const BigInt>(P.coeffs()));
    auto x = ring.from(x0);
    // y tracks 1 / (P'(x) / p^vd) by its own Newton step, so only the first
    // inverse needs an extended gcd.
    typename std::decay_t<decltype(ring)>::Elem y = 0;
    const auto two = ring.from_int(2);
    for (int iter = 0; iter < 256; ++iter) {
      auto [f, fd] = horner2(ring, std::span(cs), x);
      if (ring.is_zero(f)) return ring.to_big(ring.reduce_to(x, m));
      if (ring.val(fd) != vd || ring.val(f) <= vd) fail(Errc::Internal, "Newton step lost the simple-root invariant");
      const auto u = ring.div_pow(fd, vd);
      y = iter == 0 ? ring.inv(u) : ring.mul(y, ring.sub(two, ring.mul(u, y)));
      auto q = ring.mul(ring.div_pow(f, vd), y);
      x = ring.sub(x, ring.reduce_to(q, m));
    }
    fail(Errc::Internal, "Newton iteration did not converge");
  });
}

struct PreValues {
  HenselStatus status;
  unsigned vd;
};

PreValues precondition_values(const IntPoly& P, const PadicInt& xi0) {
  const unsigned m = xi0.precision();
  return with_ring(xi0.prime(), m, [&](const auto& ring) -> PreValues {
    const auto cs = to_ring(ring, std::span<const BigInt>(P.coeffs()));
    auto [f, fd] = horner2(ring, std::span(cs), ring.from(xi0.residue()));
    if (ring.is_zero(fd)) return {HenselStatus::Undecidable, m};
    const unsigned vd = ring.val(fd);
    if (!ring.is_zero(f)) return {ring.val(f) > 2 * vd ? HenselStatus::Holds : HenselStatus::Fails, vd};
    return {m > 2 * vd ? HenselStatus::Holds : HenselStatus::Undecidable, vd};
  });
}

// Exact valuation of P(x) for the integer x; nullopt when P(x) == 0.
std::optional<unsigned> exact_value_val(const IntPoly& P, const BigInt& x, std::uint32_t p) {
  const unsigned n = P.nominal_degree();
  std::size_t cbits = 0;
  for (const auto& c : P.coeffs()) cbits = std::max(cbits, mpz_sizeinbase(c.get_mpz_t(), 2));
  const std::size_t bits = cbits + mpz_sizeinbase(x.get_mpz_t(), 2) * n + n + 2;
  if (bits < 120 && x.fits_slong_p()) {
    bool small = true;
    for (const auto& c : P.coeffs()) small = small && c.fits_slong_p();
    if (small) {
      __int128 acc = 0;
      const __int128 xv = x.get_si();
      for (std::size_t i = P.coeffs().size(); i-- > 0;) acc = acc * xv + P.coeffs()[i].get_si();
      if (acc == 0) return std::nullopt;
      unsigned v = 0;
      while (acc % p == 0) {
        acc /= p;
        ++v;
      }
      return v;
    }
  }
  return vp(eval(P, x), p);
}

// Taylor coefficients of P at x as exact integers, b_i = P^(i)(x)/i!.
std::vector<BigInt> taylor_exact(const IntPoly& P, const BigInt& x) {
  std::vector<BigInt> w = P.coeffs();
  const std::size_t n = w.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) w[j - 1] += w[j] * x;
  return w;
}

}  // namespace

// Newton polygon of P(x + y): the count of roots with v(y) >= k is the
// largest index attaining min_i v(b_i) + k i.
bool has_root_near(const IntPoly& P, const BigInt& x, unsigned k, std::uint32_t p) {
  const auto b = taylor_exact(P, x);
  if (b[0] == 0) return true;
  const long long v0 = *vp(b[0], p);
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (b[i] == 0) continue;
    if (static_cast<long long>(*vp(b[i], p)) + static_cast<long long>(k) * static_cast<long long>(i) <= v0) return true;
  }
  return false;
}

namespace {

// Some root y of P(x + y) has v(y) > d, fractional valuations included.
bool has_root_beyond(const IntPoly& P, const BigInt& x, unsigned d, std::uint32_t p) {
  const auto b = taylor_exact(P, x);
  if (b[0] == 0) return true;
  const long long v0 = *vp(b[0], p);
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (b[i] == 0) continue;
    if (static_cast<long long>(*vp(b[i], p)) + static_cast<long long>(d) * static_cast<long long>(i) < v0) return true;
  }
  return false;
}

}  // namespace

HenselStatus hensel_precondition(const IntPoly& P, const PadicInt& xi0) { return precondition_values(P, xi0).status; }

PadicInt hensel_lift(const IntPoly& P, const PadicInt& xi0) {
  const auto pre = precondition_values(P, xi0);
  if (pre.status == HenselStatus::Fails)
    fail(Errc::HenselPreconditionFailed, "|P(xi0)|_p < |P'(xi0)|_p^2 does not hold");
  if (pre.status == HenselStatus::Undecidable)
    fail(Errc::PrecisionExhausted, "Hensel precondition not decidable at precision " + std::to_string(xi0.precision()));
  const unsigned m = xi0.precision();
  const std::uint32_t p = xi0.prime();
  const BigInt root = newton_lift(P, xi0.residue(), p, m, pre.vd);

  // Contract replay: residual and the distance bound v(alpha - xi0) >= v(P(xi0)) - 2 v'.
  const auto v0 = exact_value_val(P, xi0.residue(), p);
  const unsigned need = v0 ? std::min<unsigned>(m, *v0 - 2 * pre.vd) : m;
  with_ring(p, m, [&](const auto& ring) {
    const auto cs = to_ring(ring, std::span<const BigInt>(P.coeffs()));
    const auto a = ring.from(root);
    if (!ring.is_zero(horner(ring, std::span(cs), a))) fail(Errc::Internal, "lifted value is not a root mod p^m");
    if (ring.val(ring.sub(a, ring.from(xi0.residue()))) < need)
      fail(Errc::Internal, "lifted root violates the Hensel distance bound");
  });
  return PadicInt(root, xi0.context());
}

RootSearch find_zp_roots(const IntPoly& P, const Context& ctx) {
  require(ctx != nullptr, "missing prime context");
  const IntPoly prim = content_and_primitive(P).primitive;
  const std::uint32_t p = ctx->prime();
  const unsigned m = ctx->precision();
  RootSearch out{RootSet{P, {}, false}, {}};
  std::vector<BigInt> found;

  if (prim.degree() == 0) {
    out.set.complete_in_Zp = true;
    return out;
  }
  if (prim.degree() == 1) {
    const BigInt& a1 = prim.coeff(1);
    const BigInt& a0 = prim.coeff(0);
    if (mpz_divisible_ui_p(a1.get_mpz_t(), p) == 0) {
      PadicInt inv = invert(make_padic(a1, ctx));
      out.set.roots.push_back(make_padic(-a0, ctx) * inv);
    }
    out.set.complete_in_Zp = !out.set.roots.empty();
    return out;
  }

  const unsigned D = 2 * m;
  with_ring(p, D, [&](const auto& ring) {
    using Elem = typename std::decay_t<decltype(ring)>::Elem;
    const auto cs = to_ring(ring, std::span<const BigInt>(prim.coeffs()));
    const std::size_t n = cs.size();
    struct Node {
      Elem r;
      unsigned k;
    };
    std::vector<Node> stack;
    for (std::uint32_t j = p; j-- > 0;) stack.push_back({ring.from_int(j), 1});
    std::vector<Elem> pk_of(m + 1);
    for (unsigned k = 0; k <= m; ++k) pk_of[k] = ring.pow_p(k);

    while (!stack.empty()) {
      Node node = stack.back();
      stack.pop_back();
      const auto t = detail::taylor(ring, std::span<const Elem>(cs), node.r);
      // c_i = t_i p^{k i}; zero t_i counts as +infinity.
      const bool t0_zero = ring.is_zero(t[0]);
      const unsigned v0 = ring.val(t[0]);
      bool dies = !t0_zero;
      if (dies) {
        for (std::size_t i = 1; i < n && dies; ++i) {
          if (ring.is_zero(t[i])) continue;
          if (ring.val(t[i]) + node.k * i <= v0) dies = false;
        }
      }
      if (dies) continue;

      if (!ring.is_zero(t[1])) {
        const unsigned vd = ring.val(t[1]);
        if (vd < m && node.k >= vd + 1 && (t0_zero || v0 > 2 * vd)) {
          BigInt alpha = newton_lift(prim, ring.to_big(node.r), p, m, vd);
          BigInt pk = ring.to_big(pk_of[node.k]);
          if (node.k == m) pk = ctx->modulus();
          BigInt diff = alpha - ring.to_big(node.r);
          if (mpz_divisible_p(diff.get_mpz_t(), pk.get_mpz_t())) found.push_back(alpha);
          continue;
        }
      }
      if (node.k == m) {
        out.unresolved.push_back(ring.to_big(node.r));
        continue;
      }
      for (std::uint32_t j = p; j-- > 0;) {
        Elem child = ring.add(node.r, ring.mul(ring.from_int(j), pk_of[node.k]));
        stack.push_back({child, node.k + 1});
      }
    }
  });

  std::sort(found.begin(), found.end());
  std::sort(out.unresolved.begin(), out.unresolved.end());
  for (const auto& r : found) out.set.roots.emplace_back(r, ctx);
  out.set.complete_in_Zp = out.unresolved.empty() && out.set.roots.size() == prim.degree();
  return out;
}

RootSet zp_roots(const IntPoly& P, const Context& ctx) {
  RootSearch s = find_zp_roots(P, ctx);
  if (!s.unresolved.empty())
    fail(Errc::UnresolvedBranch, std::to_string(s.unresolved.size()) + " branch(es) of " + to_string(P) +
                                     " unresolved at precision " + std::to_string(ctx->precision()) +
                                     " (possible multiple root), first residue " + s.unresolved.front().get_str());
  return std::move(s.set);
}

NearestRoot nearest_root(const IntPoly& P, const PadicInt& omega) { return nearest_root(zp_roots(P, omega.context()), omega); }

NearestRoot nearest_root(const RootSet& rs, const PadicInt& omega) {
  if (rs.roots.empty()) fail(Errc::NoRootInZp, to_string(rs.poly) + " has no root in Z_p");
  std::size_t best = 0;
  Valuation best_d = dist(rs.roots[0], omega);
  for (std::size_t i = 1; i < rs.roots.size(); ++i) {
    Valuation d = dist(rs.roots[i], omega);
    if (d.value() > best_d.value()) {
      best = i;
      best_d = d;
    }
  }
  if (best_d.is_exact() && has_root_beyond(rs.poly, omega.residue(), best_d.value(), omega.prime()))
    fail(Errc::NoRootInZp, "nearest root of " + to_string(rs.poly) + " to " + to_string(omega) + " lies outside Q_p");
  return {rs.roots[best], best_d};
}

std::string ValRecord::to_string() const {
  switch (kind) {
    case Exact:
      return std::to_string(value);
    case AtLeast:
      return ">=" + std::to_string(value);
    case Infinite:
      return "inf";
  }
  return {};
}

Lemma4Record lemma4_check(const IntPoly& P, const PadicInt& omega) {
  return lemma4_check(zp_roots(P, omega.context()), omega);
}

Lemma4Record lemma4_check(const RootSet& rs, const PadicInt& omega) {
  const NearestRoot nr = nearest_root(rs, omega);
  const unsigned m = omega.precision();
  const std::uint32_t p = omega.prime();
  const auto dP = derivative(rs.poly, 1);
  if (!dP) fail(Errc::Internal, "constant polynomial has no roots");
  const Valuation vd = valuation(eval_padic(*dP, nr.alpha));
  if (!vd.is_exact()) fail(Errc::PrecisionExhausted, "|P'(alpha)|_p not decidable at precision " + std::to_string(m));
  const auto vP = exact_value_val(rs.poly, omega.residue(), p);

  Lemma4Record rec{rs.poly, omega, nr.alpha, {}, {}, false};
  rec.lhs_val = nr.distance.is_exact() ? ValRecord{ValRecord::Exact, static_cast<long>(nr.distance.value())}
                                       : ValRecord{ValRecord::AtLeast, static_cast<long>(m)};
  if (!vP) {
    rec.rhs_val = {ValRecord::Infinite, 0};
    rec.holds = !nr.distance.is_exact();
    return rec;
  }
  const long rhs = static_cast<long>(*vP) - static_cast<long>(vd.value());
  rec.rhs_val = {ValRecord::Exact, rhs};
  if (nr.distance.is_exact()) {
    rec.holds = static_cast<long>(nr.distance.value()) >= rhs;
  } else {
    if (rhs > static_cast<long>(m))
      fail(Errc::PrecisionExhausted, "nearest-root bound needs more than " + std::to_string(m) + " digits of the root");
    rec.holds = true;
  }
  return rec;
}

bool root_size_check(const IntPoly& P, const Context& ctx) {
  require(P.degree() == P.nominal_degree() && is_leading(P, *ctx), "root_size_check needs a leading polynomial");
  const std::uint32_t p = ctx->prime();
  const unsigned n = P.degree();
  const long vn = *vp(P.coeff(n), p);
  // Smallest root valuation is min_i (v_i - v_n)/(n - i); require it > -n.
  for (unsigned i = 0; i < n; ++i) {
    if (P.coeff(i) == 0) continue;
    const long vi = *vp(P.coeff(i), p);
    if (vi - vn <= -static_cast<long>(n) * static_cast<long>(n - i)) return false;
  }
  // Z_p roots have |alpha|_p <= 1 < p^n whenever n >= 1.
  return n >= 1;
}

RootSeparationProfile separation_profile(const IntPoly& P, const Context& ctx, const Rational& eps, unsigned d,
                                         unsigned alpha1_index) {
  require(eps > 0 && d >= 1, "separation profile needs eps > 0 and d >= 1");
  require(height(P) >= 2, "separation profile needs H(P) >= 2");
  RootSeparationProfile prof{.height = height(P), .roots = zp_roots(P, ctx)};
  const auto& roots = prof.roots.roots;
  if (roots.size() < 2)
    fail(Errc::ProfileUnavailable, to_string(P) + " has " + std::to_string(roots.size()) + " root(s) in Z_p, need 2");
  require(alpha1_index < roots.size(), "alpha1 index out of range");
  prof.alpha1_index = alpha1_index;

  prof.eps1 = eps / d;
  prof.eps1.canonicalize();
  BigInt inv_floor;
  mpz_fdiv_q(inv_floor.get_mpz_t(), prof.eps1.get_den_mpz_t(), prof.eps1.get_num_mpz_t());
  require(inv_floor < 1000000, "grid T too large");
  prof.grid_T = static_cast<unsigned>(inv_floor.get_ui()) + 1;
  const unsigned T = prof.grid_T;

  for (unsigned i = 0; i < roots.size(); ++i)
    if (i != alpha1_index) prof.order.push_back(i);
  std::stable_sort(prof.order.begin(), prof.order.end(), [&](unsigned a, unsigned b) {
    return dist(roots[alpha1_index], roots[a]).value() > dist(roots[alpha1_index], roots[b]).value();
  });

  // H = p^e makes rho_j = v/e exact.
  const std::uint32_t p = ctx->prime();
  unsigned e = 0;
  {
    BigInt h = prof.height;
    while (mpz_divisible_ui_p(h.get_mpz_t(), p)) {
      mpz_divexact_ui(h.get_mpz_t(), h.get_mpz_t(), p);
      ++e;
    }
    if (h != 1) e = 0;
  }
  const long double lnp = std::log(static_cast<long double>(p));
  const long double lnH = std::log(prof.height.get_d());
  for (unsigned idx : prof.order) {
    const unsigned v = dist(roots[alpha1_index], roots[idx]).value();
    prof.distance.push_back(v);
    unsigned l;
    if (e > 0) {
      Rational rho(v, e);
      rho.canonicalize();
      BigInt fl;
      Rational scaled = rho * T;
      mpz_fdiv_q(fl.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      l = static_cast<unsigned>(fl.get_ui()) + 1;
      prof.rho.push_back(rho.get_d());
      prof.rho_exact.push_back(rho);
    } else {
      const long double rho = v * lnp / lnH;
      const long double x = rho * T;
      const long double near = std::round(x);
      // rho is irrational here, so near a grid point decide rho < L/T exactly
      // as p^(vT) < H^L.
      if (near >= 1 && std::fabs(x - near) < 1e-9L) {
        const auto L = static_cast<unsigned long>(near);
        BigInt lhs, rhs;
        mpz_ui_pow_ui(lhs.get_mpz_t(), p, static_cast<unsigned long>(v) * T);
        mpz_pow_ui(rhs.get_mpz_t(), prof.height.get_mpz_t(), L);
        l = static_cast<unsigned>(lhs < rhs ? L : L + 1);
      } else {
        l = static_cast<unsigned>(std::floor(x)) + 1;
      }
      prof.rho.push_back(static_cast<double>(rho));
      prof.rho_exact.push_back(std::nullopt);
    }
    prof.l.push_back(l);
  }
  const std::size_t k = roots.size();
  prof.r.assign(k - 1, Rational(0));
  unsigned long tail = 0;
  for (std::size_t j = k - 1; j-- > 0;) {
    tail += prof.l[j];
    prof.r[j] = Rational(static_cast<long>(tail), T);
    prof.r[j].canonicalize();
  }
  return prof;
}

Lemma5Record lemma5_check(const IntPoly& P, const RootSeparationProfile& prof) {
  const auto& alpha = prof.roots.roots.at(prof.alpha1_index);
  const auto dP = derivative(P, 1);
  require(dP.has_value(), "lemma5_check needs a non-constant polynomial");
  const Valuation vd = valuation(eval_padic(*dP, alpha));
  if (!vd.is_exact()) fail(Errc::PrecisionExhausted, "|P'(alpha_1)|_p not decidable at this precision");
  Lemma5Record rec;
  rec.derivative_val = vd.value();
  const double lnp = std::log(static_cast<double>(alpha.prime()));
  const double lnH = std::log(prof.height.get_d());
  const double r1 = prof.r.empty() ? 0.0 : prof.r[0].get_d();
  const double k = static_cast<double>(prof.roots.roots.size());
  rec.log_abs_derivative = -static_cast<double>(vd.value()) * lnp;
  rec.log_lower = -r1 * lnH;
  rec.log_upper = (-r1 + (k - 1) * prof.eps1.get_d()) * lnH;
  rec.lower_ratio = rec.log_abs_derivative - rec.log_lower;
  rec.upper_ratio = rec.log_abs_derivative - rec.log_upper;
  return rec;
}

}  // namespace padiclab
