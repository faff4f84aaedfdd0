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
#include "santa/rational.h"

#include <cctype>
#include <cmath>
#include <string>

#include "santa/errors.h"

namespace santa {

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw StructuralError("non-finite number");
  }
  return Rational(value);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

namespace {

Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty() || s == "-" || s == "+") {
    throw StructuralError("bad number: '" + s + "'");
  }
  size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  for (size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw StructuralError("bad number: '" + s + "'");
    }
  }
  bool negative = s[0] == '-';
  s = s.substr(start);
  // GMP reads a leading 0 as an octal prefix.
  size_t nz = s.find_first_not_of('0');
  s = nz == std::string::npos ? "0" : s.substr(nz);
  Integer value(s);
  return negative ? Integer(-value) : value;
}

Integer pow10(int e) {
  Integer r = 1;
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw StructuralError("zero denominator");
    return Rational(num, den);
  }
  std::string s(text);
  bool negative = false;
  size_t pos = 0;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string digits;
  int frac_digits = 0;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty()) throw StructuralError("bad number: '" + s + "'");
  int exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') {
      throw StructuralError("bad number: '" + s + "'");
    }
    exponent = static_cast<int>(parse_integer(s.substr(pos + 1)).convert_to<long>());
  }
  Rational r{parse_integer(digits)};
  int shift = exponent - frac_digits;
  if (shift >= 0) {
    r *= pow10(shift);
  } else {
    r /= pow10(-shift);
  }
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

Integer floor_integer(const Rational& value) {
  Integer q = numerator(value) / denominator(value);  // truncates
  if (value < 0 && Rational(q) != value) q -= 1;
  return q;
}

int64_t floor_int64(const Rational& value) {
  return floor_integer(value).convert_to<int64_t>();
}

int64_t ceil_int64(const Rational& value) {
  return -floor_int64(Rational(-value));
}

Rational pow2(int e) {
  Integer p = 1;
  p <<= (e >= 0 ? e : -e);
  return e >= 0 ? Rational(p) : Rational(Integer(1), p);
}

int floor_log2(const Rational& value) {
  if (value <= 0) throw ContractError("floor_log2 of nonpositive value");
  int e = static_cast<int>(boost::multiprecision::msb(numerator(value))) -
          static_cast<int>(boost::multiprecision::msb(denominator(value)));
  while (pow2(e) > value) --e;
  while (pow2(e + 1) <= value) ++e;
  return e;
}

bool is_power_of_two(const Rational& value) {
  return value > 0 && pow2(floor_log2(value)) == value;
}

int ceil_log2(uint64_t x) {
  int e = 0;
  while (e < 64 && (uint64_t{1} << e) < x) ++e;
  return e;
}

}  // namespace santa
