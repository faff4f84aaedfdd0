// Copyright 2026 The Authors.
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
#ifndef SANTA_RATIONAL_H_
#define SANTA_RATIONAL_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace santa {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

// Exact binary value of a finite double.
Rational rational_from_double(double value);
double to_double(const Rational& value);

// Accepts "7", "-3/4" and decimal literals such as "0.25" or "1e-3".
Rational parse_rational(std::string_view text);
// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

Integer floor_integer(const Rational& value);
int64_t floor_int64(const Rational& value);
int64_t ceil_int64(const Rational& value);

// Exponent e with 2^e <= value < 2^(e+1). Requires value > 0.
int floor_log2(const Rational& value);
// 2^e for any integer e.
Rational pow2(int e);
bool is_power_of_two(const Rational& value);

// ceil(log2(x)) for x >= 1; 0 for x <= 1.
int ceil_log2(uint64_t x);

}  // namespace santa

#endif  // SANTA_RATIONAL_H_
