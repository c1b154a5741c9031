// Copyright (c) 2026 The pba Authors
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

#ifndef PBA_RATIONAL_H_
#define PBA_RATIONAL_H_

#include <cstdint>
#include <numeric>
#include <string>

namespace pba {

// Exact rational used for candidate scores. Ranking compares scores exactly;
// ties such as 5/8 vs 5/8 coming from different paths must be detected as
// equal, which floating point cannot guarantee.
struct Rational {
  int64_t num = 0;
  int64_t den = 1;  // > 0, gcd(|num|, den) == 1

  static Rational Of(int64_t num, int64_t den) {
    Rational r;
    if (den < 0) {
      num = -num;
      den = -den;
    }
    int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    r.num = num / g;
    r.den = den / g;
    return r;
  }

  double ToDouble() const { return static_cast<double>(num) / den; }

  // "5/8" for proper fractions, "1" for integers.
  std::string ToString() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }
};

}  // namespace pba

#endif  // PBA_RATIONAL_H_
