/*
   Copyright 2026 the refleq authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef REFLEQ_RATIONAL_HPP
#define REFLEQ_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace refleq {

/// Exact rational scalar over int64, used by the exact-arithmetic mode of the
/// algebraic defect checks. All bundled structure constants and r-matrix
/// coefficients fit comfortably; overflow throws instead of wrapping.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num_;
    if (r.den_ != 1) os << '/' << r.den_;
    return os;
  }

 private:
  using i128 = __int128;

  static Rational make(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    constexpr i128 lim = INT64_MAX;
    if (n > lim || n < -lim || d > lim)
      throw std::overflow_error("Rational: value exceeds 64-bit range");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }

  void normalize() { *this = make(num_, den_); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational abs(const Rational& r) { return r.num() < 0 ? -r : r; }

}  // namespace refleq

#endif
