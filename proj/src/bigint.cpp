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

#include "padiclab/bigint.hpp"

#include <cctype>
#include <cstdio>

#include "padiclab/errors.hpp"

namespace padiclab {

BigInt pow_ui(unsigned long base, unsigned exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

std::optional<unsigned> vp(const BigInt& x, unsigned long p) {
  if (x == 0) return std::nullopt;
  if (p == 2) return static_cast<unsigned>(mpz_scan1(x.get_mpz_t(), 0));
  BigInt t = x;
  unsigned v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
    mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
    ++v;
  }
  return v;
}

unsigned strict_threshold_exponent(const Rational& theta, unsigned long p) {
  require(theta > 0, "threshold must be positive");
  // p^k > 1/theta  <=>  p^k * num > den
  const BigInt& num = theta.get_num();
  const BigInt& den = theta.get_den();
  unsigned k = 0;
  BigInt pk = 1;
  while (pk * num <= den) {
    pk *= p;
    ++k;
  }
  return k;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_perfect_square(const BigInt& x) {
  if (x < 0) return false;
  return mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  std::string_view t = trim(text);
  if (!is_integer_literal(t)) fail(Errc::Usage, "not an integer: '" + std::string(text) + "'");
  std::string s(t[0] == '+' ? t.substr(1) : t);
  return BigInt(s, 10);
}

Rational parse_rational(std::string_view text) {
  std::string_view t = trim(text);
  if (auto slash = t.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_bigint(t.substr(0, slash));
    BigInt den = parse_bigint(t.substr(slash + 1));
    if (den == 0) fail(Errc::Usage, "zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = t.find('.'); dot != std::string_view::npos) {
    std::string_view whole = t.substr(0, dot);
    std::string_view frac = t.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    std::string digits(neg ? whole.substr(1) : whole);
    if (digits.empty() || digits == "+") digits = "0";
    if (!is_integer_literal(digits) || (!frac.empty() && !is_integer_literal(frac)) ||
        (!frac.empty() && (frac[0] == '-' || frac[0] == '+')))
      fail(Errc::Usage, "not a number: '" + std::string(text) + "'");
    BigInt num = parse_bigint(digits + std::string(frac));
    Rational q(num, pow_ui(10, static_cast<unsigned>(frac.size())));
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  return Rational(parse_bigint(t));
}

std::string fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string decimal_string(const Rational& q, int significant) {
  mpf_class f(q, 256);
  mp_exp_t exp = 0;
  std::string digits = f.get_str(exp, 10, static_cast<std::size_t>(significant));
  if (digits.empty()) return "0";
  bool neg = digits[0] == '-';
  if (neg) digits.erase(0, 1);
  std::string out;
  if (exp <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + digits;
  } else if (static_cast<std::size_t>(exp) >= digits.size()) {
    out = digits + std::string(static_cast<std::size_t>(exp) - digits.size(), '0');
  } else {
    out = digits.substr(0, static_cast<std::size_t>(exp)) + "." + digits.substr(static_cast<std::size_t>(exp));
  }
  return neg ? "-" + out : out;
}

}  // namespace padiclab
