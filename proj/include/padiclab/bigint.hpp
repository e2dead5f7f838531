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

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace padiclab {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt pow_ui(unsigned long base, unsigned exp);

// p-adic valuation of a nonzero integer; nullopt for zero.
std::optional<unsigned> vp(const BigInt& x, unsigned long p);

// Smallest k >= 0 with p^-k < theta, i.e. the valuation a value must reach
// to satisfy |value|_p < theta. theta must be positive.
unsigned strict_threshold_exponent(const Rational& theta, unsigned long p);

bool is_prime_u64(std::uint64_t n);
bool is_perfect_square(const BigInt& x);

BigInt parse_bigint(std::string_view text);

// Accepts "a", "a/b" or a finite decimal such as "0.25".
Rational parse_rational(std::string_view text);

// Canonical "a/b" rendering; the denominator is always present.
std::string fraction_string(const Rational& q);
std::string decimal_string(const Rational& q, int significant = 17);

}  // namespace padiclab
