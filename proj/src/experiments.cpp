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

#include "padiclab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <type_traits>

#include "detail/ring.hpp"
#include "padiclab/errors.hpp"
#include "padiclab/roots.hpp"

namespace padiclab {

using detail::with_ring;

namespace {

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

DigitStream::DigitStream(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = index;
  state_ = seed ^ splitmix(s);
}

std::uint64_t DigitStream::next_u64() { return splitmix(state_); }

std::uint32_t DigitStream::next_digit(std::uint32_t p) {
  const std::uint64_t bound = (UINT64_MAX / p) * p;
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x < bound) return static_cast<std::uint32_t>(x % p);
  }
}

BigInt sample_residue(DigitStream& stream, std::uint32_t p, unsigned digits) {
  BigInt r = 0, pk = 1;
  for (unsigned i = 0; i < digits; ++i) {
    r += pk * stream.next_digit(p);
    pk *= p;
  }
  return r;
}

namespace {

std::vector<unsigned> threshold_table(const PsiModel& psi, unsigned n, std::uint32_t p, std::uint64_t hmax) {
  std::vector<unsigned> k(hmax + 1, 0);
  for (std::uint64_t h = 1; h <= hmax; ++h) k[h] = psi_threshold_exp(psi, h, n, p);
  return k;
}

long long height_of(const std::vector<long long>& c) {
  long long h = 0;
  for (long long x : c) h = std::max(h, x < 0 ? -x : x);
  return h;
}

void sort_by_height_lex(std::vector<std::vector<long long>>& sols) {
  std::sort(sols.begin(), sols.end(), [](const auto& a, const auto& b) {
    const long long ha = height_of(a), hb = height_of(b);
    if (ha != hb) return ha < hb;
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
}

// Coefficient tuples (a_0..a_n) solving |P(omega)|_p < H^-n Psi(H).
std::vector<std::vector<long long>> trial_coeffs(const PadicInt& omega, const std::vector<unsigned>& kreq, unsigned n,
                                                 std::uint64_t hmax_u) {
  require(n >= 1, "degree must be at least 1");
  require(hmax_u >= 1 && hmax_u < (std::uint64_t{1} << 40), "height bound out of range");
  const long long hmax = static_cast<long long>(hmax_u);
  const std::uint32_t p = omega.prime();
  const unsigned m = omega.precision();
  std::vector<std::vector<long long>> sols;
  with_ring(p, m, [&](const auto& ring) {
    using Elem = typename std::decay_t<decltype(ring)>::Elem;
    std::vector<Elem> wpow(n + 1);
    wpow[0] = ring.from_int(1);
    const Elem w = ring.from(omega.residue());
    for (unsigned i = 1; i <= n; ++i) wpow[i] = ring.mul(wpow[i - 1], w);
    std::vector<BigInt> pk_big(m + 1);
    for (unsigned k = 0; k <= m; ++k) pk_big[k] = pow_ui(p, k);

    std::vector<long long> c(n + 1, 0);
    for (unsigned j = 1; j <= n; ++j) c[j] = -hmax;
    for (;;) {
      long long h0 = 0;
      Elem s = ring.from_int(0);
      for (unsigned i = 1; i <= n; ++i) {
        h0 = std::max(h0, c[i] < 0 ? -c[i] : c[i]);
        s = ring.add(s, ring.mul(ring.from_int(c[i]), wpow[i]));
      }
      const unsigned kc = std::min(kreq[std::max<long long>(h0, 1)], m);
      const Elem target = ring.reduce_to(ring.neg(s), kc);
      // a_0 = target + t p^kc within [-hmax, hmax].
      const BigInt& step = pk_big[kc];
      BigInt first = ring.to_big(target);
      {
        BigInt shift = first + static_cast<long>(hmax);
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), shift.get_mpz_t(), step.get_mpz_t());
        first -= q * step;
      }
      if (step.fits_slong_p()) {
        const long long st = step.get_si();
        for (long long a0 = first.get_si(); a0 <= hmax; a0 += st) {
          c[0] = a0;
          if (a0 == 0 && h0 == 0) continue;
          const long long H = std::max(h0, a0 < 0 ? -a0 : a0);
          const unsigned v = ring.val(ring.add(s, ring.from_int(a0)));
          const unsigned k = kreq[H];
          if (v < m) {
            if (v >= k) sols.push_back(c);
          } else if (k <= m) {
            sols.push_back(c);
          } else {
            fail(Errc::PrecisionExhausted, "deciding " + to_string(IntPoly::from_ints(c)) + " needs " +
                                               std::to_string(k) + " digits of omega, have " + std::to_string(m));
          }
          if (st > 2 * hmax) break;
        }
      } else if (first <= static_cast<long>(hmax)) {
        c[0] = first.get_si();
        if (!(c[0] == 0 && h0 == 0)) {
          const long long H = std::max(h0, c[0] < 0 ? -c[0] : c[0]);
          const unsigned v = ring.val(ring.add(s, ring.from_int(c[0])));
          if (v >= m && kreq[H] > m)
            fail(Errc::PrecisionExhausted, "threshold needs more digits of omega than available");
          if (v >= kreq[H]) sols.push_back(c);
        }
      }
      unsigned j = 1;
      for (; j <= n; ++j) {
        if (c[j] < hmax) {
          ++c[j];
          break;
        }
        c[j] = -hmax;
      }
      if (j > n) break;
    }
  });
  sort_by_height_lex(sols);
  return sols;
}

void shape_for(const PsiModel& psi, const std::vector<std::uint64_t>& grid, const std::vector<Rational>& mean,
               ShapeCheck& shape) {
  if (psi.convergent()) {
    shape.kind = "last_increment";
    shape.threshold = kConvergentIncrementMax;
    shape.value = last_increment(mean);
    shape.pass = shape.value <= shape.threshold;
  } else {
    shape.kind = "log_slope";
    shape.threshold = kDivergentSlopeMin;
    shape.value = log_slope(grid, mean);
    shape.pass = shape.value >= shape.threshold;
  }
}

void check_grid(const std::vector<std::uint64_t>& grid) {
  require(!grid.empty(), "h_grid must not be empty");
  require(grid.front() >= 1, "h_grid entries must be at least 1");
  for (std::size_t i = 1; i < grid.size(); ++i) require(grid[i] > grid[i - 1], "h_grid must be increasing");
}

template <class F>
void run_parallel(std::size_t count, unsigned threads, F&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<Rational> mean_of(const std::vector<std::vector<std::uint64_t>>& counts, std::size_t cells) {
  std::vector<Rational> mean(cells, Rational(0));
  if (counts.empty()) return mean;
  for (std::size_t g = 0; g < cells; ++g) {
    BigInt total = 0;
    for (const auto& row : counts) total += static_cast<unsigned long>(row[g]);
    mean[g] = Rational(total, static_cast<unsigned long>(counts.size()));
    mean[g].canonicalize();
  }
  return mean;
}

}  // namespace

std::vector<IntPoly> dichotomy_trial(const PadicInt& omega, const PsiModel& psi, unsigned n, std::uint64_t hmax) {
  const auto kreq = threshold_table(psi, n, omega.prime(), hmax);
  std::vector<IntPoly> out;
  for (const auto& c : trial_coeffs(omega, kreq, n, hmax)) out.emplace_back(IntPoly::from_ints(c).coeffs(), n);
  return out;
}

double last_increment(const std::vector<Rational>& mean) {
  if (mean.size() < 2) return 0;
  return Rational(mean[mean.size() - 1] - mean[mean.size() - 2]).get_d();
}

double log_slope(const std::vector<std::uint64_t>& grid, const std::vector<Rational>& mean) {
  const std::size_t n = std::min(grid.size(), mean.size());
  if (n < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(static_cast<double>(grid[i]));
    const double y = mean[i].get_d();
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double N = static_cast<double>(n);
  return (N * sxy - sx * sy) / (N * sxx - sx * sx);
}

DichotomyReport dichotomy_report(std::size_t num_samples, std::uint64_t seed, const PsiModel& psi, unsigned n,
                                 const std::vector<std::uint64_t>& h_grid, const Context& ctx,
                                 ExperimentOptions opts) {
  check_grid(h_grid);
  require(num_samples >= 1, "need at least one sample");
  const std::uint32_t p = ctx->prime();
  const std::uint64_t hmax = h_grid.back();
  const auto kreq = threshold_table(psi, n, p, hmax);
  const unsigned W = std::max(ctx->precision(), *std::max_element(kreq.begin(), kreq.end()));
  const Context wctx = make_context(p, W);

  DichotomyReport rep;
  rep.psi = psi;
  rep.n = n;
  rep.p = p;
  rep.m = ctx->precision();
  rep.h_grid = h_grid;
  rep.seed = seed;
  rep.working_precision = W;
  rep.omegas.resize(num_samples);
  rep.counts.assign(num_samples, std::vector<std::uint64_t>(h_grid.size(), 0));

  run_parallel(num_samples, opts.threads, [&](std::size_t i) {
    DigitStream stream(seed, i);
    const BigInt residue = sample_residue(stream, p, W);
    rep.omegas[i] = residue;
    const auto sols = trial_coeffs(PadicInt(residue, wctx), kreq, n, hmax);
    for (const auto& c : sols) {
      const auto H = static_cast<std::uint64_t>(height_of(c));
      for (std::size_t g = 0; g < h_grid.size(); ++g)
        if (H <= h_grid[g]) ++rep.counts[i][g];
    }
  });
  rep.mean_curve = mean_of(rep.counts, h_grid.size());
  shape_for(psi, h_grid, rep.mean_curve, rep.shape);
  return rep;
}

std::vector<AlgebraicNumber> thm2_trial(const PadicInt& omega, const PsiModel& psi, unsigned n, std::uint64_t hmax) {
  const auto kreq = threshold_table(psi, n, omega.prime(), hmax);
  std::vector<AlgebraicNumber> out;
  for (auto& a : enumerate_algebraic(n, hmax, whole_zp(omega.context()))) {
    const unsigned k = kreq[a.height.get_ui()];
    const Valuation d = dist(omega, a.root);
    if (!d.is_exact() && k > omega.precision())
      fail(Errc::PrecisionExhausted, "deciding |omega - alpha|_p needs " + std::to_string(k) + " digits");
    if (d.value() >= k) out.push_back(std::move(a));
  }
  return out;
}

Thm2Report thm2_report(std::size_t num_samples, std::uint64_t seed, const PsiModel& psi, unsigned n,
                       const std::vector<std::uint64_t>& h_grid, const Context& ctx, ExperimentOptions opts) {
  check_grid(h_grid);
  require(num_samples >= 1, "need at least one sample");
  const std::uint32_t p = ctx->prime();
  const std::uint64_t hmax = h_grid.back();
  const auto kreq = threshold_table(psi, n, p, hmax);
  const unsigned W = std::max(ctx->precision(), *std::max_element(kreq.begin(), kreq.end()));
  const Context wctx = make_context(p, W);
  const auto alphas = enumerate_algebraic(n, hmax, whole_zp(wctx));

  Thm2Report rep;
  rep.psi = psi;
  rep.n = n;
  rep.p = p;
  rep.m = ctx->precision();
  rep.working_precision = W;
  rep.h_grid = h_grid;
  rep.seed = seed;
  rep.omegas.resize(num_samples);
  rep.counts.assign(num_samples, std::vector<std::uint64_t>(h_grid.size(), 0));

  run_parallel(num_samples, opts.threads, [&](std::size_t i) {
    DigitStream stream(seed, i);
    const PadicInt omega(sample_residue(stream, p, W), wctx);
    rep.omegas[i] = omega.residue();
    for (const auto& a : alphas) {
      const std::uint64_t H = a.height.get_ui();
      if (dist(omega, a.root).value() < kreq[H]) continue;
      for (std::size_t g = 0; g < h_grid.size(); ++g)
        if (H <= h_grid[g]) ++rep.counts[i][g];
    }
  });
  rep.mean_curve = mean_of(rep.counts, h_grid.size());
  shape_for(psi, h_grid, rep.mean_curve, rep.shape);

  // mu(chi(alpha)) = p^-k for the ball v(omega - alpha) >= k.
  rep.mass.assign(h_grid.size(), Rational(0));
  rep.psi_sum.assign(h_grid.size(), 0.0);
  for (const auto& a : alphas) {
    const std::uint64_t H = a.height.get_ui();
    Rational mu(1, pow_ui(p, kreq[H]));
    for (std::size_t g = 0; g < h_grid.size(); ++g)
      if (H <= h_grid[g]) rep.mass[g] += mu;
  }
  double acc = 0;
  std::size_t g = 0;
  for (std::uint64_t h = 1; h <= hmax; ++h) {
    acc += psi(h);
    while (g < h_grid.size() && h_grid[g] == h) rep.psi_sum[g++] = acc;
  }
  for (std::size_t i = 0; i < h_grid.size(); ++i) {
    rep.mass[i].canonicalize();
    rep.kappa = std::max(rep.kappa, rep.mass[i].get_d() / rep.psi_sum[i]);
  }
  return rep;
}

ResultantRecord resultant_bound_check(const IntPoly& P, const IntPoly& Q, std::uint32_t p) {
  ResultantRecord rec;
  rec.resultant = resultant(P, Q);
  if (rec.resultant == 0) fail(Errc::CommonFactor, to_string(P) + " and " + to_string(Q) + " share a factor");
  rec.p_valuation = *vp(rec.resultant, p);
  rec.holds = pow_ui(p, rec.p_valuation) <= abs(rec.resultant);
  return rec;
}

}  // namespace padiclab
