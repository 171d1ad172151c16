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

#ifndef REFLEQ_DUAL_HPP
#define REFLEQ_DUAL_HPP

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace refleq {

/// Forward-mode dual number carrying a full gradient vector. An empty
/// gradient means "identically zero gradient" so that plain constants stay
/// cheap; mixed-size operands other than empty-vs-n are a logic error.
class Dual {
 public:
  Dual() : v_(0.0) {}
  Dual(double v) : v_(v) {}  // NOLINT: constants convert implicitly
  Dual(double v, Eigen::VectorXd g) : v_(v), g_(std::move(g)) {}

  /// Seed for coordinate i of an n-coordinate evaluation.
  static Dual variable(double v, int i, int n) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
    g(i) = 1.0;
    return Dual(v, std::move(g));
  }

  double value() const { return v_; }
  const Eigen::VectorXd& grad() const { return g_; }
  bool has_grad() const { return g_.size() > 0; }

  Dual operator-() const { return g_.size() ? Dual(-v_, -g_) : Dual(-v_); }

  friend Dual operator+(const Dual& a, const Dual& b) {
    return Dual(a.v_ + b.v_, combine(a.g_, 1.0, b.g_, 1.0));
  }
  friend Dual operator-(const Dual& a, const Dual& b) {
    return Dual(a.v_ - b.v_, combine(a.g_, 1.0, b.g_, -1.0));
  }
  friend Dual operator*(const Dual& a, const Dual& b) {
    return Dual(a.v_ * b.v_, combine(a.g_, b.v_, b.g_, a.v_));
  }
  friend Dual operator/(const Dual& a, const Dual& b) {
    const double inv = 1.0 / b.v_;
    return Dual(a.v_ * inv, combine(a.g_, inv, b.g_, -a.v_ * inv * inv));
  }

  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }

  friend bool operator<(const Dual& a, const Dual& b) { return a.v_ < b.v_; }
  friend bool operator>(const Dual& a, const Dual& b) { return a.v_ > b.v_; }

 private:
  static Eigen::VectorXd combine(const Eigen::VectorXd& ga, double ca,
                                 const Eigen::VectorXd& gb, double cb) {
    if (ga.size() == 0 && gb.size() == 0) return {};
    if (gb.size() == 0) return ca * ga;
    if (ga.size() == 0) return cb * gb;
    return ca * ga + cb * gb;
  }

  double v_;
  Eigen::VectorXd g_;
};

inline Dual exp(const Dual& a) {
  const double e = std::exp(a.value());
  return a.has_grad() ? Dual(e, e * a.grad()) : Dual(e);
}

inline Dual log(const Dual& a) {
  if (!(a.value() > 0.0)) throw std::domain_error("log: nonpositive argument");
  const double v = std::log(a.value());
  return a.has_grad() ? Dual(v, a.grad() / a.value()) : Dual(v);
}

inline Dual sqrt(const Dual& a) {
  const double s = std::sqrt(a.value());
  return a.has_grad() ? Dual(s, a.grad() / (2.0 * s)) : Dual(s);
}

inline Dual pow_int(Dual base, int n) {
  if (n < 0) return Dual(1.0) / pow_int(base, -n);
  Dual result(1.0);
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

inline double value_of(const Dual& d) { return d.value(); }
inline double value_of(double d) { return d; }

/// Seeds a full set of coordinate variables for gradient evaluation.
inline std::vector<Dual> seed_state(const Eigen::VectorXd& s) {
  std::vector<Dual> out;
  out.reserve(static_cast<std::size_t>(s.size()));
  const int n = static_cast<int>(s.size());
  for (int i = 0; i < n; ++i) out.push_back(Dual::variable(s(i), i, n));
  return out;
}

/// Wraps coordinates as gradient-free constants (plain evaluation path).
inline std::vector<Dual> constant_state(const Eigen::VectorXd& s) {
  std::vector<Dual> out;
  out.reserve(static_cast<std::size_t>(s.size()));
  for (int i = 0; i < s.size(); ++i) out.emplace_back(s(i));
  return out;
}

}  // namespace refleq

#endif
