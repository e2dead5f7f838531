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

#include "padiclab/measure.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "detail/ring.hpp"
#include "padiclab/errors.hpp"
#include "padiclab/roots.hpp"

namespace padiclab {

using detail::to_ring;
using detail::with_ring;

namespace {

// Splits the disc into maximal balls on which v(P) >= k holds throughout.
// emit(residue, depth) receives each ball r + p^depth Z_p.
template <class Emit>
void solve_balls(const IntPoly& P, unsigned k, const Disc& disc, Emit&& emit) {
  const std::uint32_t p = disc.center.prime();
  const unsigned kd = disc.radius_exp;
  BigInt c0;
  mpz_fdiv_r(c0.get_mpz_t(), disc.center.residue().get_mpz_t(), pow_ui(p, kd).get_mpz_t());
  if (k == 0) {
    emit(c0, kd);
    return;
  }
  with_ring(p, k, [&](const auto& ring) {
    using Elem = typename std::decay_t<decltype(ring)>::Elem;
    const auto cs = to_ring(ring, std::span<const BigInt>(P.coeffs()));
    const std::size_t n = cs.size();
    // Returns +1 when the ball lies inside the set, -1 when disjoint, 0 to split.
    auto classify = [&](const Elem& r, unsigned j) {
      const auto t = detail::taylor(ring, std::span<const Elem>(cs), r);
      unsigned cv0 = ring.val(t[0]);
      unsigned rest = k;
      for (std::size_t i = 1; i < n; ++i) {
        if (ring.is_zero(t[i])) continue;
        rest = std::min<unsigned>(rest, std::min<unsigned long>(k, ring.val(t[i]) + static_cast<unsigned long>(j) * i));
      }
      if (cv0 >= k && rest >= k) return 1;
      if (cv0 < k && cv0 < rest) return -1;
      return 0;
    };
    const int top = classify(ring.from(c0), kd);
    if (top == 1) emit(c0, kd);
    if (top != 0) return;
    struct Node {
      Elem r;
      unsigned j;
    };
    std::vector<Node> stack{{ring.from(c0), kd}};
    while (!stack.empty()) {
      Node node = stack.back();
      stack.pop_back();
      const Elem step = ring.pow_p(node.j);
      for (std::uint32_t d = p; d-- > 0;) {
        Elem child = ring.add(node.r, ring.mul(ring.from_int(d), step));
        const int c = classify(child, node.j + 1);
        if (c == 1)
          emit(ring.to_big(child), node.j + 1);
        else if (c == 0)
          stack.push_back({child, node.j + 1});
      }
    }
  });
}

Rational ball_measure(std::uint32_t p, unsigned j) {
  Rational r(1, pow_ui(p, j));
  r.canonicalize();
  return r;
}

std::uint64_t checked_classes(std::uint32_t p, unsigned digits) {
  if (!detail::fits_u64(p, digits) || pow_ui(p, digits) > kMaxResidueClasses)
    fail(Errc::Unsupported, "residue scan over p^" + std::to_string(digits) + " classes exceeds the 2^26 cap");
  return pow_ui(p, digits).get_ui();
}

void require_precision(unsigned k, const Disc& disc) {
  if (k > disc.center.precision())
    fail(Errc::PrecisionExhausted, "threshold needs " + std::to_string(k) + " digits, precision is " +
                                       std::to_string(disc.center.precision()));
}

// Skip -P when P is visited: both define the same sets.
bool sign_representative(std::span<const long long> c) {
  for (std::size_t i = c.size(); i-- > 0;)
    if (c[i] != 0) return c[i] > 0;
  return false;
}

// Digits (least significant first) of (r - c0) / p^kd, j - kd of them.
std::vector<unsigned> relative_digits(const BigInt& r, const BigInt& c0, std::uint32_t p, unsigned kd, unsigned j) {
  BigInt x = r - c0;
  mpz_fdiv_q(x.get_mpz_t(), x.get_mpz_t(), pow_ui(p, kd).get_mpz_t());
  std::vector<unsigned> out(j - kd);
  for (auto& d : out) d = static_cast<unsigned>(mpz_fdiv_q_ui(x.get_mpz_t(), x.get_mpz_t(), p));
  return out;
}

// Union of balls inside a disc, as a digit trie.
class BallUnion {
 public:
  BallUnion(std::uint32_t p, unsigned kd) : p_(p), kd_(kd), nodes_(1, Node(p)) {}

  void insert(const std::vector<unsigned>& digits) {
    std::size_t cur = 0;
    for (unsigned d : digits) {
      if (nodes_[cur].full) return;
      std::size_t next = nodes_[cur].child[d];
      if (next == 0) {
        next = nodes_.size();
        nodes_[cur].child[d] = next;
        nodes_.emplace_back(p_);
      }
      cur = next;
    }
    nodes_[cur].full = true;
    max_depth_ = std::max<unsigned>(max_depth_, kd_ + static_cast<unsigned>(digits.size()));
  }

  Rational measure() const {
    Rational total = 0;
    std::vector<std::pair<std::size_t, unsigned>> stack{{0, kd_}};
    while (!stack.empty()) {
      auto [id, depth] = stack.back();
      stack.pop_back();
      if (nodes_[id].full) {
        total += ball_measure(p_, depth);
        continue;
      }
      for (std::size_t c : nodes_[id].child)
        if (c != 0) stack.push_back({c, depth + 1});
    }
    total.canonicalize();
    return total;
  }

  unsigned max_depth() const { return max_depth_; }

 private:
  struct Node {
    explicit Node(std::uint32_t p) : child(p, 0) {}
    bool full = false;
    std::vector<std::size_t> child;
  };
  std::uint32_t p_;
  unsigned kd_;
  unsigned max_depth_ = 0;
  std::vector<Node> nodes_;
};

unsigned union_threshold(const Rational& delta, const BigInt& Q, unsigned n, std::uint32_t p) {
  require(delta > 0, "delta must be positive");
  require(Q >= 1, "Q must be at least 1");
  BigInt qpow;
  mpz_pow_ui(qpow.get_mpz_t(), Q.get_mpz_t(), n + 1);
  Rational theta = delta / Rational(qpow);
  theta.canonicalize();
  return strict_threshold_exponent(theta, p);
}

}  // namespace

MeasureEstimate solution_measure(const IntPoly& P, unsigned k, const Disc& disc, unsigned resolution) {
  require_precision(k, disc);
  const std::uint32_t p = disc.center.prime();
  const unsigned kd = disc.radius_exp;
  MeasureEstimate est;
  est.polynomials = 1;
  if (resolution == 0) {
    est.resolution_exp = std::max(k, kd);
    solve_balls(P, k, disc, [&](const BigInt&, unsigned j) { est.value += ball_measure(p, j); });
    est.value.canonicalize();
    return est;
  }
  require(resolution >= std::max(k, kd), "resolution must be at least max(k, disc radius)");
  const std::uint64_t count = checked_classes(p, resolution - kd);
  est.resolution_exp = resolution;
  if (k == 0) {
    est.value = disc.measure();
    return est;
  }
  std::uint64_t hits = with_ring(p, k, [&](const auto& ring) {
    const auto cs = to_ring(ring, std::span<const BigInt>(P.coeffs()));
    // r = c + p^kd x for x < p^(resolution - kd); reduce mod p^k for evaluation.
    const BigInt stepb = pow_ui(p, kd);
    const auto base = ring.from(disc.center.residue());
    const auto step = ring.from(stepb);
    std::uint64_t h = 0;
    auto r = base;
    for (std::uint64_t x = 0; x < count; ++x) {
      if (ring.is_zero(detail::horner(ring, std::span(cs), r))) ++h;
      r = ring.add(r, step);
    }
    return h;
  });
  est.value = Rational(BigInt(static_cast<unsigned long>(hits))) * ball_measure(p, resolution);
  est.value.canonicalize();
  return est;
}

MeasureEstimate union_measure_E(const Rational& delta, const BigInt& Q, unsigned n, const Disc& disc,
                                UnionOptions opts) {
  const std::uint32_t p = disc.center.prime();
  const unsigned kt = union_threshold(delta, Q, n, p);
  require_precision(kt, disc);
  require(Q.fits_ulong_p(), "Q too large");
  const unsigned kd = disc.radius_exp;
  const unsigned R = opts.resolution ? opts.resolution : std::max(kt, kd);
  require(R >= std::max(kt, kd), "resolution must be at least max(k_theta, disc radius)");
  const unsigned W = R - kd;
  const std::uint64_t nbits = checked_classes(p, W);
  BigInt c0;
  mpz_fdiv_r(c0.get_mpz_t(), disc.center.residue().get_mpz_t(), pow_ui(p, kd).get_mpz_t());
  std::vector<std::uint64_t> pw(W + 1, 1);
  for (unsigned i = 1; i <= W; ++i) pw[i] = pw[i - 1] * p;

  using Bits = std::vector<std::uint64_t>;
  auto set_range = [](Bits& b, std::uint64_t lo, std::uint64_t hi) {
    while (lo < hi && (lo & 63)) b[lo >> 6] |= std::uint64_t{1} << (lo & 63), ++lo;
    while (lo + 64 <= hi) b[lo >> 6] = ~std::uint64_t{0}, lo += 64;
    while (lo < hi) b[lo >> 6] |= std::uint64_t{1} << (lo & 63), ++lo;
  };
  // A ball of depth j fixes the low j - kd digits of x; in digit-reversed
  // order those become the high digits, so the ball is a contiguous range.
  auto mark = [&](Bits& b, const BigInt& r, unsigned j) {
    const auto digs = relative_digits(r, c0, p, kd, j);
    std::uint64_t hi = 0;
    for (unsigned d : digs) hi = hi * p + d;
    const std::uint64_t len = pw[W - (j - kd)];
    set_range(b, hi * len, (hi + 1) * len);
  };

  const unsigned threads = std::max(1u, opts.threads);
  std::vector<Bits> parts(threads, Bits((nbits + 63) / 64, 0));
  std::vector<std::uint64_t> counts(threads, 0);
  auto worker = [&](unsigned tid) {
    std::uint64_t idx = 0;
    for_each_coeffs(n, 1, Q.get_ui(), [&](std::span<const long long> c) {
      if (!sign_representative(c)) return true;
      if (idx++ % threads != tid) return true;
      ++counts[tid];
      const IntPoly P = IntPoly::from_ints(c);
      solve_balls(P, kt, disc, [&](const BigInt& r, unsigned j) { mark(parts[tid], r, j); });
      return true;
    });
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  Bits& acc = parts[0];
  for (unsigned t = 1; t < threads; ++t)
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] |= parts[t][i];
  std::uint64_t total = 0;
  for (auto w : acc) total += static_cast<std::uint64_t>(std::popcount(w));

  MeasureEstimate est;
  est.resolution_exp = R;
  for (auto c : counts) est.polynomials += c;
  est.value = Rational(BigInt(static_cast<unsigned long>(total))) * ball_measure(p, R);
  est.value.canonicalize();
  return est;
}

MeasureEstimate e1_measure(const Rational& delta, const BigInt& Q, const Rational& xi, unsigned n, const Disc& disc) {
  const Context& ctx = disc.context();
  const std::uint32_t p = ctx->prime();
  const unsigned m = ctx->precision();
  const unsigned kt = union_threshold(delta, Q, n, p);
  require_precision(kt, disc);
  require(xi >= 0, "xi must be non-negative");
  require(Q.fits_ulong_p(), "Q too large");
  const unsigned kd = disc.radius_exp;
  BigInt c0;
  mpz_fdiv_r(c0.get_mpz_t(), disc.center.residue().get_mpz_t(), pow_ui(p, kd).get_mpz_t());

  BallUnion inside(p, kd), unresolved(p, kd), no_root(p, kd);
  MeasureEstimate est;
  const BigInt& xnum = xi.get_num();
  const unsigned long xden = xi.get_den().get_ui();

  for_each_coeffs(n, 1, Q.get_ui(), [&](std::span<const long long> c) {
    if (!sign_representative(c)) return true;
    ++est.polynomials;
    const IntPoly P = IntPoly::from_ints(c);
    if (P.degree() == 0) {
      // A nonzero constant has no roots; any ball it contributes has no nearest root.
      solve_balls(P, kt, disc, [&](const BigInt& r, unsigned j) { no_root.insert(relative_digits(r, c0, p, kd, j)); });
      return true;
    }
    // Distinct roots come from the squarefree part; a repeated root has P' = 0.
    const IntPoly S = squarefree_part(P);
    const RootSearch rs = find_zp_roots(S, ctx);
    const IntPoly dP = *derivative(P, 1);
    BigInt hnum;
    mpz_pow_ui(hnum.get_mpz_t(), height(P).get_mpz_t(), xnum.get_ui());
    // |P'(alpha)|_p >= H^-xi  <=>  p^(v den) <= H^num; nullopt when undecidable.
    auto derivative_ok = [&](const PadicInt& alpha) -> std::optional<bool> {
      const Valuation v = valuation(eval_padic(dP, alpha));
      const bool ok = pow_ui(p, v.value() * xden) <= hnum;
      if (!v.is_exact() && ok) return std::nullopt;
      return ok;
    };
    auto root_index_near = [&](const BigInt& r, unsigned depth) -> std::optional<std::size_t> {
      const BigInt pj = pow_ui(p, depth);
      for (std::size_t i = 0; i < rs.set.roots.size(); ++i) {
        BigInt diff = rs.set.roots[i].residue() - r;
        if (mpz_divisible_p(diff.get_mpz_t(), pj.get_mpz_t())) return i;
      }
      return std::nullopt;
    };

    std::vector<std::pair<BigInt, unsigned>> work;
    solve_balls(P, kt, disc, [&](const BigInt& r, unsigned j) { work.emplace_back(r, j); });
    while (!work.empty()) {
      auto [r, j] = work.back();
      work.pop_back();
      const auto digs = relative_digits(r, c0, p, kd, j);
      // Distinct roots inside the ball: largest index attaining min_i v(b_i) + j i.
      std::vector<BigInt> b = S.coeffs();
      for (std::size_t i = 0; i + 1 < b.size(); ++i)
        for (std::size_t t = b.size() - 1; t > i; --t) b[t - 1] += b[t] * r;
      long best = std::numeric_limits<long>::max();
      std::size_t inside_count = 0;
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] == 0) continue;
        const long val = static_cast<long>(*vp(b[i], p)) + static_cast<long>(j) * static_cast<long>(i);
        if (val <= best) {
          best = val;
          inside_count = i;
        }
      }
      if (inside_count >= 2) {
        if (j >= m) {
          unresolved.insert(digs);
          continue;
        }
        for (std::uint32_t d = 0; d < p; ++d) work.emplace_back(r + BigInt(d) * pow_ui(p, j), j + 1);
        continue;
      }
      std::optional<std::size_t> chosen;
      if (inside_count == 1) {
        chosen = root_index_near(r, j);
        if (!chosen) {
          unresolved.insert(digs);
          continue;
        }
      } else {
        // No root in the ball: the nearest root is the same for every point.
        long dz = -1;
        for (std::size_t i = 0; i < rs.set.roots.size(); ++i) {
          const long v = static_cast<long>(*vp(rs.set.roots[i].residue() - r, p));
          if (v > dz) {
            dz = v;
            chosen = i;
          }
        }
        const bool closer = has_root_near(S, r, static_cast<unsigned>(dz + 1), p);
        if (!rs.unresolved.empty() && (closer || !chosen)) {
          unresolved.insert(digs);
          continue;
        }
        if (!chosen || closer) {
          no_root.insert(digs);
          continue;
        }
      }
      const auto ok = derivative_ok(rs.set.roots[*chosen]);
      if (!ok)
        unresolved.insert(digs);
      else if (*ok)
        inside.insert(digs);
    }
    return true;
  });

  est.value = inside.measure();
  est.unresolved_measure = unresolved.measure();
  est.no_root_measure = no_root.measure();
  est.exact = est.unresolved_measure == 0;
  est.resolution_exp = std::max({kt, kd, inside.max_depth()});
  return est;
}

double PsiModel::operator()(std::uint64_t h) const {
  const double x = static_cast<double>(h < 2 ? 2 : h);
  double v = std::pow(x, s);
  if (family == Family::PowerLog) v *= std::pow(std::log(x), -q);
  return v;
}

bool PsiModel::convergent() const {
  if (s < -1) return true;
  if (s > -1) return false;
  return family == Family::PowerLog && q > 1;
}

bool PsiModel::integer_power() const { return family == Family::Power && s == std::floor(s); }

std::string PsiModel::spec() const {
  // Shortest round-trip form, so parse_psi(spec()) reproduces the model.
  auto num = [](double x) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
  };
  if (family == Family::Power) return "pow:" + num(s);
  return "powlog:" + num(s) + ":" + num(q);
}

namespace {

// mpq get_d truncates; a quotient of two exact doubles rounds to nearest.
double to_double(const Rational& x) {
  if (mpz_sizeinbase(x.get_num_mpz_t(), 2) <= 53 && mpz_sizeinbase(x.get_den_mpz_t(), 2) <= 53)
    return x.get_num().get_d() / x.get_den().get_d();
  return x.get_d();
}

}  // namespace

PsiModel parse_psi(std::string_view text) {
  auto bad = [&] { fail(Errc::Usage, "psi must be 'pow:s' or 'powlog:s:q', got '" + std::string(text) + "'"); };
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  PsiModel psi;
  try {
    if (parts.size() == 2 && parts[0] == "pow") {
      psi.family = PsiModel::Family::Power;
      psi.s = to_double(parse_rational(parts[1]));
    } else if (parts.size() == 3 && parts[0] == "powlog") {
      psi.family = PsiModel::Family::PowerLog;
      psi.s = to_double(parse_rational(parts[1]));
      psi.q = to_double(parse_rational(parts[2]));
    } else {
      bad();
    }
  } catch (const Error&) {
    bad();
  }
  if (psi.s > 0 || (psi.s == 0 && (psi.family == PsiModel::Family::Power || psi.q <= 0)))
    fail(Errc::Usage, "psi must be decreasing: need s < 0, or s = 0 with q > 0");
  return psi;
}

unsigned psi_threshold_exp(const PsiModel& psi, std::uint64_t H, unsigned n, std::uint32_t p) {
  require(H >= 1, "heights start at 1");
  const std::uint64_t he = H < 2 ? 2 : H;
  if (psi.integer_power()) {
    // theta = H^-n he^s with integer s <= 0.
    BigInt den = pow_ui(H, n) * pow_ui(he, static_cast<unsigned>(-psi.s));
    Rational theta(1, den);
    theta.canonicalize();
    return strict_threshold_exponent(theta, p);
  }
  const long double L =
      (n * std::log(static_cast<long double>(H)) - std::log(static_cast<long double>(psi(he)))) /
      std::log(static_cast<long double>(p));
  const long double near = std::round(L);
  if (std::fabs(L - near) < 1e-9L) return static_cast<unsigned>(std::max<long double>(near, -1) + 1);
  if (L < 0) return 0;
  return static_cast<unsigned>(std::floor(L)) + 1;
}

TailSum tail_sum(const PsiModel& psi, std::uint64_t h_lo, std::uint64_t h_hi) {
  require(h_lo >= 1 && h_lo <= h_hi, "tail_sum needs 1 <= h_lo <= h_hi");
  TailSum out;
  out.convergent = psi.convergent();
  double prev = psi(h_lo);
  for (std::uint64_t h = h_lo; h <= h_hi; ++h) {
    const double v = psi(h);
    if (v > prev * (1 + 1e-15)) out.monotone = false;
    prev = v;
    out.partial += v;
  }
  double acc = 0;
  for (std::uint64_t t = 0; (std::uint64_t{1} << t) <= h_hi && t < 63; ++t) {
    const std::uint64_t h = std::uint64_t{1} << t;
    acc += static_cast<double>(h) * psi(h);
    out.dyadic.push_back(acc);
    out.h_times_psi.push_back(static_cast<double>(h) * psi(h));
  }
  return out;
}

}  // namespace padiclab
