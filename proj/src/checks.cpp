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

#include "padiclab/checks.hpp"

#include <algorithm>
#include <set>

#include "padiclab/errors.hpp"
#include "padiclab/experiments.hpp"
#include "padiclab/roots.hpp"

namespace padiclab {

std::uint64_t CheckReport::total_violations() const {
  std::uint64_t t = 0;
  for (const auto& s : sections) t += s.violations;
  return t;
}

std::vector<BigInt> scan_root_residues(const IntPoly& P, std::uint32_t p, unsigned m, unsigned depth) {
  require(depth >= m, "scan depth must reach the precision");
  const BigInt pm = pow_ui(p, m);
  std::set<BigInt> out;
  std::vector<std::pair<BigInt, unsigned>> stack{{BigInt(0), 0}};
  while (!stack.empty()) {
    auto [r, k] = stack.back();
    stack.pop_back();
    if (k == depth) {
      BigInt red;
      mpz_fdiv_r(red.get_mpz_t(), r.get_mpz_t(), pm.get_mpz_t());
      out.insert(red);
      continue;
    }
    const BigInt pk = pow_ui(p, k);
    const BigInt pk1 = pk * p;
    for (std::uint32_t d = 0; d < p; ++d) {
      BigInt child = r + pk * d;
      BigInt v = eval(P, child);
      if (mpz_divisible_p(v.get_mpz_t(), pk1.get_mpz_t())) stack.push_back({child, k + 1});
    }
  }
  return {out.begin(), out.end()};
}

namespace {

void note(CheckSection& s, const std::string& what) {
  ++s.violations;
  if (s.examples.size() < 5) s.examples.push_back(what);
}

CheckSection hensel_section(const CheckConfig& cfg, const Context& ctx) {
  CheckSection s;
  s.name = "hensel";
  const BigInt& pm = ctx->modulus();
  for_each_poly(cfg.n, PolyFilter{.height_max = cfg.height_max}, [&](const IntPoly& P) {
    for (std::uint32_t x = 0; x < cfg.p; ++x) {
      const PadicInt xi0 = make_padic(x, ctx);
      if (hensel_precondition(P, xi0) != HenselStatus::Holds) {
        ++s.skipped;
        continue;
      }
      ++s.checked;
      try {
        const PadicInt alpha = hensel_lift(P, xi0);
        const BigInt res = eval(P, alpha.residue());
        const BigInt fx = eval(P, BigInt(x));
        const BigInt dx = eval(*derivative(P, 1), BigInt(x));
        const long need = fx == 0 ? static_cast<long>(cfg.m)
                                  : std::min<long>(cfg.m, static_cast<long>(*vp(fx, cfg.p)) - 2L * *vp(dx, cfg.p));
        BigInt diff = alpha.residue() - x;
        const bool close = diff == 0 || static_cast<long>(*vp(diff, cfg.p)) >= need;
        if (!mpz_divisible_p(res.get_mpz_t(), pm.get_mpz_t()) || !close)
          note(s, to_string(P) + " xi0=" + std::to_string(x));
      } catch (const Error& e) {
        note(s, to_string(P) + " xi0=" + std::to_string(x) + ": " + e.what());
      }
    }
    return true;
  });
  return s;
}

CheckSection roots_section(const CheckConfig& cfg) {
  CheckSection s;
  s.name = "roots_oracle";
  const unsigned m = std::min(cfg.m, 6u);
  const Context ctx = make_context(cfg.p, m);
  const std::uint64_t hmax = std::min<std::uint64_t>(cfg.height_max, 4);
  for_each_poly(std::min(cfg.n, 3u), PolyFilter{.height_max = hmax}, [&](const IntPoly& P) {
    const RootSearch rs = find_zp_roots(P, ctx);
    if (!rs.unresolved.empty()) {
      // Only repeated factors may leave branches open at this scale.
      const auto dP = derivative(P, 1);
      if (dP && resultant(P, *dP) != 0) note(s, to_string(P) + " unresolved but squarefree");
      ++s.skipped;
      return true;
    }
    ++s.checked;
    std::vector<BigInt> got;
    for (const auto& r : rs.set.roots) got.push_back(r.residue());
    const IntPoly prim = content_and_primitive(P).primitive;
    std::vector<BigInt> want;
    if (prim.degree() > 0) want = scan_root_residues(prim, cfg.p, m, 3 * m);
    if (got != want) note(s, to_string(P));
    return true;
  });
  return s;
}

CheckSection lemma3_section(const CheckConfig& cfg, const Context& ctx) {
  CheckSection s;
  s.name = "lemma3";
  PolyFilter f{.require_leading = true, .require_exact_degree = true, .height_max = cfg.height_max, .prime = cfg.p};
  for_each_poly(cfg.n, f, [&](const IntPoly& P) {
    ++s.checked;
    if (!root_size_check(P, ctx)) note(s, to_string(P));
    return true;
  });
  return s;
}

CheckSection lemma4_section(const CheckConfig& cfg, const Context& ctx) {
  CheckSection s;
  s.name = "lemma4";
  const unsigned digits = std::min(cfg.omega_digits, cfg.m);
  const std::uint64_t count = pow_ui(cfg.p, digits).get_ui();
  for_each_poly(cfg.n, PolyFilter{.height_max = cfg.height_max}, [&](const IntPoly& P) {
    if (P.degree() == 0) return true;
    const RootSearch rs = find_zp_roots(P, ctx);
    if (!rs.unresolved.empty()) {
      s.skipped += count;
      return true;
    }
    for (std::uint64_t w = 0; w < count; ++w) {
      const PadicInt omega = make_padic(BigInt(static_cast<unsigned long>(w)), ctx);
      try {
        const Lemma4Record rec = lemma4_check(rs.set, omega);
        ++s.checked;
        if (!rec.holds) note(s, to_string(P) + " omega=" + std::to_string(w));
      } catch (const Error& e) {
        if (e.code() != Errc::NoRootInZp && e.code() != Errc::PrecisionExhausted) throw;
        ++s.skipped;
      }
    }
    return true;
  });
  return s;
}

CheckSection lemma5_section(const CheckConfig& cfg, const Context& ctx) {
  CheckSection s;
  s.name = "lemma5";
  s.diagnostic = true;
  double lo_min = 1e300, lo_max = -1e300, up_min = 1e300, up_max = -1e300;
  for_each_poly(cfg.n, PolyFilter{.height_max = std::max<std::uint64_t>(cfg.height_max, 2), .height_min = 2},
                [&](const IntPoly& P) {
                  const RootSearch rs = find_zp_roots(P, ctx);
                  if (!rs.unresolved.empty() || rs.set.roots.size() < 2) return true;
                  try {
                    const auto prof = separation_profile(P, ctx, Rational(1, 2), 4);
                    const auto rec = lemma5_check(P, prof);
                    ++s.checked;
                    lo_min = std::min(lo_min, rec.lower_ratio);
                    lo_max = std::max(lo_max, rec.lower_ratio);
                    up_min = std::min(up_min, rec.upper_ratio);
                    up_max = std::max(up_max, rec.upper_ratio);
                  } catch (const Error&) {
                    ++s.skipped;
                  }
                  return true;
                });
  if (s.checked > 0)
    s.stats = {{"log_lower_ratio_min", lo_min},
               {"log_lower_ratio_max", lo_max},
               {"log_upper_ratio_min", up_min},
               {"log_upper_ratio_max", up_max}};
  return s;
}

CheckSection resultant_section(const CheckConfig& cfg) {
  CheckSection s;
  s.name = "resultant";
  const auto polys = enumerate_polys(std::min(cfg.n, 2u), PolyFilter{.height_max = std::min<std::uint64_t>(cfg.height_max, 3)});
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      if (resultant(polys[i], polys[j]) == 0) {
        ++s.skipped;
        continue;
      }
      ++s.checked;
      if (!resultant_bound_check(polys[i], polys[j], cfg.p).holds)
        note(s, to_string(polys[i]) + " " + to_string(polys[j]));
    }
  }
  return s;
}

CheckSection padic_section(const CheckConfig& cfg, const Context& ctx) {
  CheckSection s;
  s.name = "padic";
  DigitStream rng(cfg.seed, 0);
  auto draw = [&] { return PadicInt(sample_residue(rng, cfg.p, cfg.m), ctx); };
  for (unsigned t = 0; t < cfg.random_trials; ++t) {
    const PadicInt x = draw(), y = draw(), z = draw();
    s.checked += 4;
    const unsigned dxz = dist(x, z).value(), dxy = dist(x, y).value(), dyz = dist(y, z).value();
    if (dxz < std::min(dxy, dyz)) note(s, "ultrametric " + to_string(x) + " " + to_string(y) + " " + to_string(z));
    const Valuation vx = valuation(x), vy = valuation(y), vxy = valuation(x * y);
    if (vx.is_exact() && vy.is_exact() && vx.value() + vy.value() < cfg.m && vxy != Valuation::exact(vx.value() + vy.value()))
      note(s, "multiplicativity " + to_string(x) + " " + to_string(y));
    if (vx == Valuation::exact(0) && !(invert(invert(x)) == x)) note(s, "involution " + to_string(x));
    const BigInt a = x.residue() - 7 * y.residue(), b = z.residue() + 11;
    if (!(make_padic(a, ctx) + make_padic(b, ctx) == make_padic(a + b, ctx))) note(s, "homomorphism");
  }
  return s;
}

}  // namespace

CheckReport run_checks(const CheckConfig& cfg) {
  require(cfg.n >= 1 && cfg.n <= 4, "check degree must be in [1, 4]");
  require(cfg.height_max >= 1, "height_max must be at least 1");
  const Context ctx = make_context(cfg.p, cfg.m);
  CheckReport rep{cfg, {}};
  rep.sections.push_back(hensel_section(cfg, ctx));
  rep.sections.push_back(roots_section(cfg));
  rep.sections.push_back(lemma3_section(cfg, ctx));
  rep.sections.push_back(lemma4_section(cfg, ctx));
  rep.sections.push_back(lemma5_section(cfg, ctx));
  rep.sections.push_back(resultant_section(cfg));
  rep.sections.push_back(padic_section(cfg, ctx));
  return rep;
}

}  // namespace padiclab
