// Copyright 2026 The rtsg Authors.
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

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "rtsg/error.hpp"

namespace rtsg {

using Rational = mpq_class;

// Parses "3/4", "-2", or a finite decimal such as "0.25" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw DomainError("empty number");
  try {
    if (text.find('/') != std::string::npos) {
      Rational r(text);
      if (r.get_den() == 0) throw DomainError("zero denominator: " + text);
      r.canonicalize();
      return r;
    }
    std::string digits;
    long frac_digits = -1;
    std::size_t i = 0;
    bool negative = false;
    if (text[0] == '-' || text[0] == '+') {
      negative = text[0] == '-';
      i = 1;
    }
    for (; i < text.size(); ++i) {
      const char c = text[i];
      if (c == '.') {
        if (frac_digits >= 0) throw DomainError("bad number: " + text);
        frac_digits = 0;
      } else if (c >= '0' && c <= '9') {
        digits.push_back(c);
        if (frac_digits >= 0) ++frac_digits;
      } else {
        throw DomainError("bad number: " + text);
      }
    }
    if (digits.empty()) throw DomainError("bad number: " + text);
    mpz_class num(digits, 10);
    mpz_class den = 1;
    for (long k = 0; k < frac_digits; ++k) den *= 10;
    Rational r(negative ? mpz_class(-num) : num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw DomainError("bad number: " + text);
  }
}

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(double d) { return d; }

// Conversion used by templates that run on either exact or floating values.
template <class Value>
Value value_from(const Rational& r) {
  if constexpr (std::is_same_v<Value, Rational>) {
    return r;
  } else {
    return static_cast<Value>(r.get_d());
  }
}

template <class Value>
Value value_from_int(long v) {
  return Value(v);
}

// Equality used for argmax sets: exact for rationals, relative tolerance for doubles.
inline bool values_tie(const Rational& a, const Rational& b) { return a == b; }
inline bool values_tie(double a, double b) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= 1e-12 * scale;
}

}  // namespace rtsg
