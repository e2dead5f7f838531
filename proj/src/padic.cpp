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

#include "padiclab/padic.hpp"

#include <sstream>

#include "padiclab/errors.hpp"

namespace padiclab {

PrimeContext::PrimeContext(std::uint32_t p, unsigned m) : p_(p), m_(m) {
  require(is_prime_u64(p), "p = " + std::to_string(p) + " is not prime");
  require(m >= 1, "precision m must be at least 1");
  pm_ = pow_ui(p, m);
}

Context make_context(std::uint32_t p, unsigned m) { return std::make_shared<const PrimeContext>(p, m); }

bool Valuation::exceeds(unsigned k) const {
  if (exact_) return k_ > k;
  if (k_ > k) return true;
  fail(Errc::PrecisionExhausted,
       "cannot decide v > " + std::to_string(k) + " from a residue known mod p^" + std::to_string(k_));
}

bool Valuation::reaches(unsigned k) const {
  if (exact_) return k_ >= k;
  if (k_ >= k) return true;
  fail(Errc::PrecisionExhausted,
       "cannot decide v >= " + std::to_string(k) + " from a residue known mod p^" + std::to_string(k_));
}

std::string Valuation::to_string() const {
  return exact_ ? std::to_string(k_) : ">=" + std::to_string(k_);
}

namespace {

void check_same(const PadicInt& x, const PadicInt& y) {
  if (x.context() != y.context() && !(*x.context() == *y.context()))
    fail(Errc::Usage, "p-adic operands carry different contexts");
}

BigInt reduce(const BigInt& z, const BigInt& pm) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), pm.get_mpz_t());
  return r;
}

}  // namespace

PadicInt::PadicInt(const BigInt& z, Context ctx) : ctx_(std::move(ctx)) {
  require(ctx_ != nullptr, "null p-adic context");
  residue_ = reduce(z, ctx_->modulus());
}

std::vector<unsigned> PadicInt::digits() const {
  std::vector<unsigned> out(ctx_->precision(), 0);
  BigInt t = residue_;
  for (auto& d : out) {
    d = static_cast<unsigned>(mpz_fdiv_q_ui(t.get_mpz_t(), t.get_mpz_t(), ctx_->prime()));
  }
  return out;
}

PadicInt PadicInt::operator-() const { return PadicInt(-residue_, ctx_); }

PadicInt operator+(const PadicInt& x, const PadicInt& y) {
  check_same(x, y);
  return PadicInt(x.residue_ + y.residue_, x.ctx_);
}

PadicInt operator-(const PadicInt& x, const PadicInt& y) {
  check_same(x, y);
  return PadicInt(x.residue_ - y.residue_, x.ctx_);
}

PadicInt operator*(const PadicInt& x, const PadicInt& y) {
  check_same(x, y);
  return PadicInt(x.residue_ * y.residue_, x.ctx_);
}

bool operator==(const PadicInt& x, const PadicInt& y) {
  return *x.ctx_ == *y.ctx_ && x.residue_ == y.residue_;
}

PadicInt make_padic(const BigInt& z, const Context& ctx) { return PadicInt(z, ctx); }

Valuation valuation(const PadicInt& x) {
  auto v = vp(x.residue(), x.prime());
  if (!v) return Valuation::at_least(x.precision());
  return Valuation::exact(*v);
}

PadicInt invert(const PadicInt& x) {
  if (x.residue() == 0 || mpz_divisible_ui_p(x.residue().get_mpz_t(), x.prime()))
    fail(Errc::NonUnit, "cannot invert " + to_string(x) + ": not a unit");
  BigInt r;
  mpz_invert(r.get_mpz_t(), x.residue().get_mpz_t(), x.context()->modulus().get_mpz_t());
  return PadicInt(r, x.context());
}

Valuation dist(const PadicInt& x, const PadicInt& y) { return valuation(x - y); }

PadicInt truncate(const PadicInt& x, const Context& coarser) {
  require(coarser->prime() == x.prime(), "truncate: prime mismatch");
  require(coarser->precision() <= x.precision(), "truncate: target precision is finer");
  return PadicInt(x.residue(), coarser);
}

std::string to_string(const PadicInt& x) {
  std::ostringstream os;
  os << x.prime() << ':' << x.precision() << ":[";
  auto ds = x.digits();
  for (std::size_t i = 0; i < ds.size(); ++i) os << (i ? "," : "") << ds[i];
  os << ']';
  return os.str();
}

PadicInt parse_padic(std::string_view text) {
  auto c1 = text.find(':');
  auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) fail(Errc::Usage, "expected p:m:[digits], got '" + std::string(text) + "'");
  BigInt p = parse_bigint(text.substr(0, c1));
  BigInt m = parse_bigint(text.substr(c1 + 1, c2 - c1 - 1));
  require(p > 1 && p.fits_uint_p() && m > 0 && m.fits_uint_p(), "bad p or m in '" + std::string(text) + "'");
  auto ctx = make_context(static_cast<std::uint32_t>(p.get_ui()), static_cast<unsigned>(m.get_ui()));

  std::string_view body = text.substr(c2 + 1);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    fail(Errc::Usage, "digit list must be bracketed in '" + std::string(text) + "'");
  body = body.substr(1, body.size() - 2);
  std::vector<unsigned long> ds;
  while (!body.empty()) {
    auto comma = body.find(',');
    BigInt d = parse_bigint(body.substr(0, comma));
    require(d >= 0 && d < p, "digit out of range in '" + std::string(text) + "'");
    ds.push_back(d.get_ui());
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  require(ds.size() == ctx->precision(), "digit count must equal m in '" + std::string(text) + "'");
  BigInt z = 0;
  for (auto it = ds.rbegin(); it != ds.rend(); ++it) z = z * p + *it;
  return PadicInt(z, ctx);
}

}  // namespace padiclab
