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

#include "padiclab/padiclab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "padiclab/errors.hpp"
#include "padiclab/serialize.hpp"

struct padiclab_context {
  padiclab::Context ctx;
};

struct padiclab_poly {
  padiclab::IntPoly poly;
};

namespace {

using namespace padiclab;

thread_local std::string g_last_error;

padiclab_status status_of(Errc code) {
  return static_cast<padiclab_status>(static_cast<int>(code) + 1);
}

template <class F>
padiclab_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return PADICLAB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PADICLAB_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PADICLAB_E_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const Json& j) {
  require(out != nullptr, "output pointer is null");
  *out = dup(j.dump(2));
}

const char* text(const char* s, const char* what) {
  require(s != nullptr, std::string(what) + " is null");
  return s;
}

const Context& context(const padiclab_context* c) {
  require(c != nullptr, "context is null");
  return c->ctx;
}

const IntPoly& poly(const padiclab_poly* p) {
  require(p != nullptr, "polynomial is null");
  return p->poly;
}

// Integer residue, or canonical "p:m:[digits]" form matching the context.
PadicInt parse_point(const char* s, const Context& ctx) {
  const std::string t = text(s, "omega");
  if (t.find(':') == std::string::npos) return make_padic(parse_bigint(t), ctx);
  PadicInt x = parse_padic(t);
  require(*x.context() == *ctx, "p-adic literal does not match the context prime and precision");
  return x;
}

Disc disc_of(const char* s, const Context& ctx) { return parse_disc(s ? s : "Zp", ctx); }

// delta = p^-k exactly.
unsigned delta_exponent(const char* s, std::uint32_t p) {
  const Rational d = parse_rational(text(s, "delta"));
  require(d > 0 && d <= 1 && d.get_num() == 1, "delta must be p^-k with k >= 0");
  const BigInt& den = d.get_den();
  const auto k = vp(den, p);
  require(k && pow_ui(p, *k) == den, "delta must be a power of p");
  return *k;
}

std::vector<std::uint64_t> grid(const std::uint64_t* h, std::size_t len) {
  require(h != nullptr && len > 0, "h_grid is empty");
  return {h, h + len};
}

template <class Report>
void emit_report(const Report& r, char** summary, char** lines, char** csv) {
  if (summary) *summary = dup(summary_json(r).dump(2));
  if (lines) *lines = dup(sample_lines(r));
  if (csv) *csv = dup(mean_curve_csv(r));
}

}  // namespace

extern "C" {

const char* padiclab_version(void) { return "0.1.0"; }

const char* padiclab_status_name(padiclab_status status) {
  switch (status) {
    case PADICLAB_OK:
      return "Ok";
    case PADICLAB_E_USAGE:
    case PADICLAB_E_NON_UNIT:
    case PADICLAB_E_PRECISION_EXHAUSTED:
    case PADICLAB_E_HENSEL_PRECONDITION_FAILED:
    case PADICLAB_E_UNRESOLVED_BRANCH:
    case PADICLAB_E_NO_ROOT_IN_ZP:
    case PADICLAB_E_BOX_EXHAUSTED:
    case PADICLAB_E_PROFILE_UNAVAILABLE:
    case PADICLAB_E_COMMON_FACTOR:
    case PADICLAB_E_UNSUPPORTED:
    case PADICLAB_E_INTERNAL:
      return errc_name(static_cast<Errc>(static_cast<int>(status) - 1)).data();
  }
  return "Unknown";
}

const char* padiclab_last_error(void) { return g_last_error.c_str(); }

void padiclab_string_free(char* s) { std::free(s); }

padiclab_status padiclab_context_new(uint32_t p, unsigned m, padiclab_context** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = new padiclab_context{make_context(p, m)};
  });
}

void padiclab_context_free(padiclab_context* ctx) { delete ctx; }

padiclab_status padiclab_poly_parse(const char* s, padiclab_poly** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = new padiclab_poly{parse_poly(text(s, "polynomial"))};
  });
}

padiclab_status padiclab_poly_to_string(const padiclab_poly* p, char** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = dup(to_string(poly(p)));
  });
}

padiclab_status padiclab_poly_degree(const padiclab_poly* p, unsigned* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = poly(p).degree();
  });
}

void padiclab_poly_free(padiclab_poly* p) { delete p; }

padiclab_status padiclab_roots(const padiclab_context* c, const padiclab_poly* p, char** json) {
  return guarded([&] { emit(json, to_json(zp_roots(poly(p), context(c)))); });
}

padiclab_status padiclab_hensel(const padiclab_context* c, const padiclab_poly* p, const char* xi0, char** json) {
  return guarded([&] {
    const PadicInt start = parse_point(xi0, context(c));
    const PadicInt alpha = hensel_lift(poly(p), start);
    emit(json, Json{{"poly", to_string(poly(p))},
                    {"xi0", to_string(start)},
                    {"alpha", to_string(alpha)},
                    {"residue", alpha.residue().get_str()},
                    {"distance_val", dist(alpha, start).to_string()}});
  });
}

padiclab_status padiclab_nearest_root(const padiclab_context* c, const padiclab_poly* p, const char* omega,
                                      char** json) {
  return guarded([&] {
    const PadicInt w = parse_point(omega, context(c));
    const RootSet rs = zp_roots(poly(p), context(c));
    const NearestRoot nr = nearest_root(rs, w);
    emit(json, Json{{"poly", to_string(poly(p))},
                    {"omega", to_string(w)},
                    {"alpha", to_string(nr.alpha)},
                    {"distance_val", nr.distance.to_string()},
                    {"lemma4", to_json(lemma4_check(rs, w))}});
  });
}

padiclab_status padiclab_profile(const padiclab_context* c, const padiclab_poly* p, const char* eps, unsigned d,
                                 char** json) {
  return guarded([&] {
    const auto prof = separation_profile(poly(p), context(c), parse_rational(text(eps, "eps")), d);
    Json j = to_json(prof);
    j["lemma5"] = to_json(lemma5_check(poly(p), prof));
    emit(json, j);
  });
}

padiclab_status padiclab_resultant(const padiclab_poly* a, const padiclab_poly* b, uint32_t p, char** json) {
  return guarded([&] {
    Json j = to_json(resultant_bound_check(poly(a), poly(b), p));
    j["p"] = p;
    j["P"] = to_string(poly(a));
    j["Q"] = to_string(poly(b));
    emit(json, j);
  });
}

padiclab_status padiclab_enum_alg(const padiclab_context* c, unsigned n, uint64_t height_max, const char* disc,
                                  char** json) {
  return guarded([&] {
    const Disc d = disc_of(disc, context(c));
    Json pts = Json::array();
    for_each_algebraic(n, 1, height_max, d, [&](const AlgebraicNumber& a) {
      pts.push_back(to_json(a));
      return true;
    });
    emit(json, Json{{"p", context(c)->prime()},
                    {"m", context(c)->precision()},
                    {"n", n},
                    {"height_max", height_max},
                    {"disc", Json{{"center", to_string(d.center)}, {"k", d.radius_exp}}},
                    {"count", pts.size()},
                    {"points", pts}});
  });
}

padiclab_status padiclab_dirichlet(const padiclab_context* c, const char* omega, unsigned n, const char* Q,
                                   const char* delta, const char* C, char** json) {
  return guarded([&] {
    const PadicInt w = parse_point(omega, context(c));
    Json j = to_json(dirichlet_polynomial(w, n, parse_bigint(text(Q, "Q")), delta_exponent(delta, w.prime()),
                                          parse_rational(text(C, "C"))));
    j["omega"] = to_string(w);
    emit(json, j);
  });
}

padiclab_status padiclab_approx(const padiclab_context* c, const char* omega, unsigned n, const char* Q,
                                const char* delta, const char* C, char** json) {
  return guarded([&] {
    const PadicInt w = parse_point(omega, context(c));
    Json j = to_json(constructive_approximant(w, n, parse_bigint(text(Q, "Q")), delta_exponent(delta, w.prime()),
                                              parse_rational(text(C, "C"))));
    j["omega"] = to_string(w);
    emit(json, j);
  });
}

padiclab_status padiclab_regsys(const padiclab_context* c, const char* disc, const char* T, unsigned n, char** json) {
  return guarded([&] {
    const std::uint32_t p = context(c)->prime();
    const BigInt t = parse_bigint(text(T, "T"));
    require(t > 1, "T must exceed 1");
    const auto e = vp(t, p);
    require(e && pow_ui(p, *e) == t && *e % (n + 1) == 0, "T must be p^(s(n+1))");
    const RegularSystemReport r = regular_witness(disc_of(disc, context(c)), *e / (n + 1), n);
    emit(json, to_json(r));
  });
}

padiclab_status padiclab_measure_solution(const padiclab_context* c, const padiclab_poly* p, unsigned k,
                                          const char* disc, unsigned resolution, char** json) {
  return guarded([&] {
    Json j{{"poly", to_string(poly(p))}, {"k", k}};
    j.update(to_json(solution_measure(poly(p), k, disc_of(disc, context(c)), resolution)));
    emit(json, j);
  });
}

padiclab_status padiclab_measure_union(const padiclab_context* c, const char* delta, const char* Q, unsigned n,
                                       const char* disc, unsigned resolution, unsigned threads, char** json) {
  return guarded([&] {
    const Rational d = parse_rational(text(delta, "delta"));
    const BigInt q = parse_bigint(text(Q, "Q"));
    Json j{{"delta", fraction_string(d)}, {"Q", q.get_str()}, {"n", n}};
    j.update(to_json(union_measure_E(d, q, n, disc_of(disc, context(c)), UnionOptions{resolution, threads})));
    emit(json, j);
  });
}

padiclab_status padiclab_measure_e1(const padiclab_context* c, const char* delta, const char* Q, const char* xi,
                                    unsigned n, const char* disc, char** json) {
  return guarded([&] {
    const Rational d = parse_rational(text(delta, "delta"));
    const BigInt q = parse_bigint(text(Q, "Q"));
    const Rational x = parse_rational(text(xi, "xi"));
    Json j{{"delta", fraction_string(d)}, {"Q", q.get_str()}, {"xi", fraction_string(x)}, {"n", n}};
    j.update(to_json(e1_measure(d, q, x, n, disc_of(disc, context(c)))));
    emit(json, j);
  });
}

padiclab_status padiclab_dichotomy(const padiclab_context* c, size_t samples, uint64_t seed, const char* psi,
                                   unsigned n, const uint64_t* h_grid, size_t h_grid_len, unsigned threads,
                                   char** summary, char** lines, char** csv) {
  return guarded([&] {
    const auto r = dichotomy_report(samples, seed, parse_psi(text(psi, "psi")), n, grid(h_grid, h_grid_len),
                                    context(c), ExperimentOptions{threads});
    emit_report(r, summary, lines, csv);
  });
}

padiclab_status padiclab_thm2(const padiclab_context* c, size_t samples, uint64_t seed, const char* psi, unsigned n,
                              const uint64_t* h_grid, size_t h_grid_len, unsigned threads, char** summary,
                              char** lines, char** csv) {
  return guarded([&] {
    const auto r = thm2_report(samples, seed, parse_psi(text(psi, "psi")), n, grid(h_grid, h_grid_len), context(c),
                               ExperimentOptions{threads});
    emit_report(r, summary, lines, csv);
  });
}

padiclab_status padiclab_check(uint32_t p, unsigned m, unsigned n, uint64_t height_max, uint64_t seed, char** json,
                               uint64_t* violations) {
  return guarded([&] {
    CheckConfig cfg;
    cfg.p = p;
    cfg.m = m;
    cfg.n = n;
    cfg.height_max = height_max;
    cfg.seed = seed;
    const CheckReport r = run_checks(cfg);
    if (violations) *violations = r.total_violations();
    emit(json, to_json(r));
  });
}

}  // extern "C"
