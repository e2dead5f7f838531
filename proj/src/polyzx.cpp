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

#include "padiclab/polyzx.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "padiclab/errors.hpp"

namespace padiclab {

namespace {

unsigned true_degree(const std::vector<BigInt>& c) {
  for (std::size_t i = c.size(); i-- > 0;)
    if (c[i] != 0) return static_cast<unsigned>(i);
  fail(Errc::Usage, "the zero polynomial is not allowed");
}

const BigInt kZero = 0;

}  // namespace

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  require(!coeffs_.empty(), "polynomial needs at least one coefficient");
  degree_ = true_degree(coeffs_);
}

IntPoly::IntPoly(std::vector<BigInt> coeffs, unsigned nominal_degree) : coeffs_(std::move(coeffs)) {
  require(!coeffs_.empty(), "polynomial needs at least one coefficient");
  degree_ = true_degree(coeffs_);
  require(degree_ <= nominal_degree, "degree exceeds nominal bound");
  coeffs_.resize(nominal_degree + 1, BigInt(0));
}

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  for (long c : coeffs) coeffs_.emplace_back(c);
  require(!coeffs_.empty(), "polynomial needs at least one coefficient");
  degree_ = true_degree(coeffs_);
}

IntPoly IntPoly::from_ints(std::span<const long long> coeffs) {
  std::vector<BigInt> c;
  c.reserve(coeffs.size());
  for (long long v : coeffs) c.emplace_back(static_cast<long>(v));
  return IntPoly(std::move(c));
}

const BigInt& IntPoly::coeff(unsigned i) const { return i < coeffs_.size() ? coeffs_[i] : kZero; }

IntPoly IntPoly::operator-() const {
  std::vector<BigInt> c = coeffs_;
  for (auto& x : c) x = -x;
  return IntPoly(std::move(c));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> c(a.nominal_degree() + b.nominal_degree() + 1, BigInt(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPoly(std::move(c));
}

bool operator==(const IntPoly& a, const IntPoly& b) {
  if (a.degree_ != b.degree_) return false;
  for (unsigned i = 0; i <= a.degree_; ++i)
    if (a.coeffs_[i] != b.coeffs_[i]) return false;
  return true;
}

BigInt height(const IntPoly& P) {
  BigInt h = 0;
  for (const auto& c : P.coeffs()) {
    BigInt a = abs(c);
    if (a > h) h = a;
  }
  return h;
}

BigInt content(const IntPoly& P) {
  BigInt g = 0;
  for (const auto& c : P.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ContentSplit content_and_primitive(const IntPoly& P) {
  BigInt g = content(P);
  std::vector<BigInt> c = P.coeffs();
  for (auto& x : c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return {g, IntPoly(std::move(c), P.nominal_degree())};
}

std::optional<IntPoly> derivative(const IntPoly& P, unsigned j) {
  require(j >= 1, "derivative order must be at least 1");
  if (j > P.degree()) return std::nullopt;
  std::vector<BigInt> c;
  for (unsigned i = j; i <= P.nominal_degree(); ++i) {
    BigInt f = 1;
    for (unsigned t = 0; t < j; ++t) f *= (i - t);
    c.push_back(f * P.coeff(i));
  }
  return IntPoly(std::move(c));
}

BigInt eval(const IntPoly& P, const BigInt& x) {
  BigInt acc = 0;
  const auto& c = P.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

PadicInt eval_padic(const IntPoly& P, const PadicInt& omega) {
  const BigInt& mod = omega.context()->modulus();
  BigInt acc = 0;
  const auto& c = P.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = acc * omega.residue() + c[i];
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
  }
  return PadicInt(acc, omega.context());
}

namespace {

// Fraction-free Gaussian elimination (Bareiss); exact over the integers.
BigInt bareiss_det(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

BigInt resultant(const IntPoly& P, const IntPoly& Q) {
  const unsigned dp = P.degree(), dq = Q.degree();
  if (dp == 0 && dq == 0) return 1;
  const std::size_t size = dp + dq;
  std::vector<std::vector<BigInt>> syl(size, std::vector<BigInt>(size, BigInt(0)));
  // Rows 0..dq-1 hold shifted copies of P, rows dq.. hold shifted copies of Q,
  // coefficients ordered from the leading term down.
  for (unsigned r = 0; r < dq; ++r)
    for (unsigned i = 0; i <= dp; ++i) syl[r][r + i] = P.coeff(dp - i);
  for (unsigned r = 0; r < dp; ++r)
    for (unsigned i = 0; i <= dq; ++i) syl[dq + r][r + i] = Q.coeff(dq - i);
  return bareiss_det(std::move(syl));
}

namespace {

std::vector<BigInt> positive_divisors(BigInt n) {
  n = abs(n);
  std::vector<BigInt> small, large;
  for (BigInt d = 1; d * d <= n; ++d) {
    if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
      small.push_back(d);
      BigInt q = n / d;
      if (q != d) large.push_back(q);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Does P vanish at num/den?  Evaluates sum a_i num^i den^(n-i).
bool vanishes_at(const IntPoly& P, const BigInt& num, const BigInt& den) {
  const unsigned n = P.degree();
  BigInt acc = 0, num_pow = 1;
  std::vector<BigInt> den_pow(n + 1, BigInt(1));
  for (unsigned i = 1; i <= n; ++i) den_pow[i] = den_pow[i - 1] * den;
  for (unsigned i = 0; i <= n; ++i) {
    acc += P.coeff(i) * num_pow * den_pow[n - i];
    num_pow *= num;
  }
  return acc == 0;
}

bool has_rational_root(const IntPoly& P) {
  if (P.coeff(0) == 0) return true;
  auto nums = positive_divisors(P.coeff(0));
  auto dens = positive_divisors(P.leading());
  for (const auto& s : dens)
    for (const auto& r : nums) {
      BigInt g;
      mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t());
      if (g != 1) continue;
      if (vanishes_at(P, r, s) || vanishes_at(P, BigInt(-r), s)) return true;
    }
  return false;
}

// Exact division check: does G divide P in Z[x]?
bool divides(const std::vector<BigInt>& g, const IntPoly& P) {
  std::vector<BigInt> rem(P.coeffs().begin(), P.coeffs().begin() + P.degree() + 1);
  const std::size_t dg = g.size() - 1;
  const BigInt& lc = g[dg];
  for (std::size_t top = rem.size(); top-- > dg;) {
    if (rem[top] == 0) continue;
    if (!mpz_divisible_p(rem[top].get_mpz_t(), lc.get_mpz_t())) return false;
    BigInt q = rem[top] / lc;
    for (std::size_t i = 0; i <= dg; ++i) rem[top - dg + i] -= q * g[i];
  }
  for (const auto& r : rem)
    if (r != 0) return false;
  return true;
}

bool has_quadratic_factor(const IntPoly& P) {
  BigInt norm2 = 0;
  for (unsigned i = 0; i <= P.degree(); ++i) norm2 += P.coeff(i) * P.coeff(i);
  BigInt root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  // A factor G of degree 2 has M(G) <= M(P) <= ||P||_2, and |g_1| <= 2 M(G).
  const BigInt bound = 2 * (root + 1);
  auto lead_divs = positive_divisors(P.leading());
  auto const_divs = positive_divisors(P.coeff(0));
  for (const auto& A : lead_divs)
    for (const auto& c_abs : const_divs)
      for (int sign : {-1, 1}) {
        BigInt C = sign * c_abs;
        for (BigInt B = -bound; B <= bound; ++B) {
          std::vector<BigInt> g = {C, B, A};
          if (divides(g, P)) return true;
        }
      }
  return false;
}

}  // namespace

bool is_irreducible(const IntPoly& P) {
  const unsigned d = P.degree();
  if (d > 4) fail(Errc::Unsupported, "irreducibility test supports degree <= 4, got " + std::to_string(d));
  if (d == 0) return false;
  const IntPoly prim = content_and_primitive(P).primitive;
  if (d == 1) return true;
  if (d == 2) {
    BigInt disc = prim.coeff(1) * prim.coeff(1) - 4 * prim.coeff(2) * prim.coeff(0);
    return !is_perfect_square(disc);
  }
  if (has_rational_root(prim)) return false;
  if (d == 3) return true;
  return !has_quadratic_factor(prim);
}

namespace {

using Coeffs = std::vector<BigInt>;

void trim(Coeffs& a) {
  while (a.size() > 1 && a.back() == 0) a.pop_back();
}

Coeffs primitive_of(Coeffs a) {
  BigInt g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& c : a) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return a;
}

bool is_zero(const Coeffs& a) { return a.size() == 1 && a[0] == 0; }

// Pseudo-remainder of a by b (b nonzero).
Coeffs pseudo_rem(Coeffs a, const Coeffs& b) {
  const std::size_t db = b.size() - 1;
  while (!is_zero(a) && a.size() - 1 >= db) {
    const std::size_t shift = a.size() - 1 - db;
    const BigInt lead = a.back();
    for (auto& c : a) c *= b.back();
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= lead * b[i];
    a.pop_back();
    if (a.empty()) a.push_back(0);
    trim(a);
  }
  return a;
}

// Exact quotient a / b over Q, scaled to a primitive integer polynomial.
Coeffs primitive_quotient(Coeffs a, const Coeffs& b) {
  const std::size_t db = b.size() - 1;
  std::vector<Rational> rem(a.begin(), a.end()), quo(a.size() - db, Rational(0));
  for (std::size_t top = rem.size(); top-- > db;) {
    Rational q = rem[top] / Rational(b.back());
    quo[top - db] = q;
    for (std::size_t i = 0; i <= db; ++i) rem[top - db + i] -= q * Rational(b[i]);
  }
  BigInt l = 1;
  for (const auto& q : quo) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  Coeffs out;
  for (const auto& q : quo) out.push_back(BigInt(q * Rational(l)));
  return primitive_of(out);
}

}  // namespace

IntPoly derivative_gcd(const IntPoly& P) {
  Coeffs a(P.coeffs().begin(), P.coeffs().begin() + P.degree() + 1);
  if (P.degree() == 0) return IntPoly({BigInt(1)});
  const auto d = derivative(P, 1);
  Coeffs b(d->coeffs().begin(), d->coeffs().begin() + d->degree() + 1);
  a = primitive_of(a);
  b = primitive_of(b);
  while (!is_zero(b)) {
    Coeffs r = pseudo_rem(a, b);
    a = std::move(b);
    b = is_zero(r) ? r : primitive_of(r);
  }
  if (a.back() < 0)
    for (auto& c : a) c = -c;
  return IntPoly(std::move(a));
}

IntPoly squarefree_part(const IntPoly& P) {
  Coeffs a(P.coeffs().begin(), P.coeffs().begin() + P.degree() + 1);
  const IntPoly g = derivative_gcd(P);
  Coeffs q = primitive_quotient(a, g.coeffs());
  if ((q.back() < 0) != (P.leading() < 0))
    for (auto& c : q) c = -c;
  return IntPoly(std::move(q));
}

bool is_leading(const IntPoly& P, std::uint32_t p) {
  const unsigned n = P.nominal_degree();
  const BigInt& an = P.coeff(n);
  if (an == 0 || an != height(P)) return false;
  return *vp(an, p) < n;
}

bool passes(const IntPoly& P, const PolyFilter& f) {
  const unsigned n = P.nominal_degree();
  if (f.require_exact_degree && P.degree() != n) return false;
  if (f.require_primitive && content(P) != 1) return false;
  if (f.require_leading) {
    require(f.prime != 0, "require_leading needs a prime");
    if (!is_leading(P, f.prime)) return false;
  }
  if (f.require_irreducible && !is_irreducible(P)) return false;
  return true;
}

namespace {

// Emits tuples (a_n..a_0) in lexicographic order with max |a_i| == h.
struct HeightShell {
  long long h;
  std::vector<long long> top_first;
  std::vector<long long> low_first;
  const CoeffVisitor& visit;

  bool rec(std::size_t pos, bool hit) {
    const std::size_t len = top_first.size();
    if (pos == len) {
      for (std::size_t i = 0; i < len; ++i) low_first[i] = top_first[len - 1 - i];
      return visit(low_first);
    }
    if (pos + 1 == len && !hit) {
      for (long long v : {-h, h}) {
        top_first[pos] = v;
        if (!rec(pos + 1, true)) return false;
      }
      return true;
    }
    for (long long v = -h; v <= h; ++v) {
      top_first[pos] = v;
      if (!rec(pos + 1, hit || v == h || v == -h)) return false;
    }
    return true;
  }
};

}  // namespace

void for_each_coeffs(unsigned n, std::uint64_t height_min, std::uint64_t height_max, const CoeffVisitor& visit) {
  require(height_min >= 1, "heights start at 1");
  for (std::uint64_t h = height_min; h <= height_max; ++h) {
    HeightShell shell{static_cast<long long>(h), std::vector<long long>(n + 1), std::vector<long long>(n + 1), visit};
    if (!shell.rec(0, false)) return;
  }
}

void for_each_poly(unsigned n, const PolyFilter& filter, const std::function<bool(const IntPoly&)>& visit) {
  require(filter.height_max >= 1, "height_max must be at least 1");
  for_each_coeffs(n, filter.height_min, filter.height_max, [&](std::span<const long long> c) {
    if (filter.require_exact_degree && c[n] == 0) return true;
    IntPoly P = IntPoly::from_ints(c);
    P = IntPoly(P.coeffs(), n);
    if (!passes(P, filter)) return true;
    return visit(P);
  });
}

PolyStream::PolyStream(unsigned n, PolyFilter filter)
    : n_(n), filter_(filter), h_(filter.height_min), digits_(n + 1) {
  require(filter_.height_max >= 1 && filter_.height_min >= 1, "height bounds must be at least 1");
  if (h_ > filter_.height_max) done_ = true;
}

// Odometer over [-h, h]^(n+1); moves to the next height when exhausted.
bool PolyStream::advance() {
  for (;;) {
    if (!started_) {
      const auto h = static_cast<long long>(h_);
      std::fill(digits_.begin(), digits_.end(), -h);
      started_ = true;
    } else {
      const auto h = static_cast<long long>(h_);
      std::size_t i = digits_.size();
      while (i-- > 0) {
        if (digits_[i] < h) {
          ++digits_[i];
          break;
        }
        digits_[i] = -h;
      }
      if (i == static_cast<std::size_t>(-1)) {
        if (++h_ > filter_.height_max) return false;
        started_ = false;
        continue;
      }
    }
    const auto h = static_cast<long long>(h_);
    if (std::any_of(digits_.begin(), digits_.end(), [h](long long v) { return v == h || v == -h; })) return true;
  }
}

std::optional<IntPoly> PolyStream::next() {
  while (!done_) {
    if (!advance()) {
      done_ = true;
      break;
    }
    std::vector<long long> low(digits_.rbegin(), digits_.rend());
    IntPoly P(IntPoly::from_ints(low).coeffs(), n_);
    if (passes(P, filter_)) return P;
  }
  return std::nullopt;
}

std::vector<IntPoly> enumerate_polys(unsigned n, const PolyFilter& filter) {
  std::vector<IntPoly> out;
  for_each_poly(n, filter, [&](const IntPoly& P) {
    out.push_back(P);
    return true;
  });
  return out;
}

std::string to_string(const IntPoly& P) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < P.coeffs().size(); ++i) os << (i ? "," : "") << P.coeffs()[i].get_str();
  os << ']';
  return os.str();
}

IntPoly parse_poly(std::string_view text) {
  std::string_view t = text;
  while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
  while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    fail(Errc::Usage, "polynomial must look like [a0,a1,...], got '" + std::string(text) + "'");
  t = t.substr(1, t.size() - 2);
  std::vector<BigInt> c;
  while (true) {
    auto comma = t.find(',');
    c.push_back(parse_bigint(t.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    t.remove_prefix(comma + 1);
  }
  return IntPoly(std::move(c));
}

}  // namespace padiclab
