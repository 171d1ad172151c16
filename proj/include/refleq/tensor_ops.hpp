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

#ifndef REFLEQ_TENSOR_OPS_HPP
#define REFLEQ_TENSOR_OPS_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "refleq/lie_algebra.hpp"
#include "refleq/rational.hpp"

namespace refleq {

namespace scalar {

inline double abs_val(double v) { return std::abs(v); }
inline double abs_val(const Rational& v) { return std::abs(v.to_double()); }

}  // namespace scalar

/// Order-2 tensor over the algebra, coefficients on x_i (x) x_j.
template <class S>
struct Tensor2 {
  int dim = 0;
  std::vector<S> a;  // dim^2, index i*dim + j

  Tensor2() = default;
  explicit Tensor2(int d) : dim(d), a(static_cast<std::size_t>(d) * d, S(0)) {}

  const S& at(int i, int j) const { return a[static_cast<std::size_t>(i * dim + j)]; }
  S& at(int i, int j) { return a[static_cast<std::size_t>(i * dim + j)]; }

  Tensor2 transposed() const {  // leg swap, r -> r_21
    Tensor2 t(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const S& v : a) m = std::max(m, scalar::abs_val(v));
    return m;
  }

  friend Tensor2 operator+(const Tensor2& x, const Tensor2& y) {
    Tensor2 t(x.dim);
    for (std::size_t i = 0; i < t.a.size(); ++i) t.a[i] = x.a[i] + y.a[i];
    return t;
  }
  friend Tensor2 operator-(const Tensor2& x, const Tensor2& y) {
    Tensor2 t(x.dim);
    for (std::size_t i = 0; i < t.a.size(); ++i) t.a[i] = x.a[i] - y.a[i];
    return t;
  }
  friend Tensor2 operator*(const S& s, const Tensor2& x) {
    Tensor2 t(x.dim);
    for (std::size_t i = 0; i < t.a.size(); ++i) t.a[i] = s * x.a[i];
    return t;
  }

  Tensor2<double> to_double() const {
    Tensor2<double> t(dim);
    for (std::size_t i = 0; i < a.size(); ++i) t.a[i] = conv(a[i]);
    return t;
  }

 private:
  static double conv(double v) { return v; }
  static double conv(const Rational& v) { return v.to_double(); }
};

/// Order-3 tensor over the algebra.
template <class S>
struct Tensor3 {
  int dim = 0;
  std::vector<S> a;  // dim^3, index (i*dim + j)*dim + k

  Tensor3() = default;
  explicit Tensor3(int d) : dim(d), a(static_cast<std::size_t>(d) * d * d, S(0)) {}

  const S& at(int i, int j, int k) const {
    return a[static_cast<std::size_t>((i * dim + j) * dim + k)];
  }
  S& at(int i, int j, int k) {
    return a[static_cast<std::size_t>((i * dim + j) * dim + k)];
  }

  double max_abs() const {
    double m = 0.0;
    for (const S& v : a) m = std::max(m, scalar::abs_val(v));
    return m;
  }
};

using Tensor2D = Tensor2<double>;
using Tensor2Q = Tensor2<Rational>;
using Tensor3D = Tensor3<double>;
using Tensor3Q = Tensor3<Rational>;

/// Applies a matrix to one tensor leg: leg 0 maps x_a -> sum_i M_{ia} x_i in
/// the first factor, leg 1 in the second.
template <class S>
Tensor2<S> apply_leg(const Tensor2<S>& t, const std::vector<S>& m, int leg) {
  const int n = t.dim;
  if (static_cast<int>(m.size()) != n * n)
    throw std::invalid_argument("apply_leg: matrix size != dim^2");
  Tensor2<S> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const S& v = t.at(i, j);
      if (v == S(0)) continue;
      if (leg == 0) {
        for (int k = 0; k < n; ++k) {
          const S& mk = m[static_cast<std::size_t>(k * n + i)];
          if (!(mk == S(0))) out.at(k, j) += mk * v;
        }
      } else {
        for (int k = 0; k < n; ++k) {
          const S& mk = m[static_cast<std::size_t>(k * n + j)];
          if (!(mk == S(0))) out.at(i, k) += mk * v;
        }
      }
    }
  return out;
}

template <class S>
std::vector<S> matrix_minus_identity(const std::vector<S>& m, int n) {
  std::vector<S> out = m;
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i * n + i)] -= S(1);
  return out;
}

/// delta(x) = (ad_x (x) 1 + 1 (x) ad_x) r, the coboundary cobracket.
template <class S>
Tensor2<S> cobracket(const LieAlgebra<S>& alg, const Tensor2<S>& r, const std::vector<S>& x) {
  if (r.dim != alg.dim) throw std::invalid_argument("cobracket: tensor dim != algebra dim");
  const std::vector<S> adx = alg.ad(x);
  return apply_leg(r, adx, 0) + apply_leg(r, adx, 1);
}

/// C_sigma(r) = (sigma (x) sigma) r + r - (sigma (x) 1 + 1 (x) sigma) r,
/// computed as ((sigma - 1) (x) (sigma - 1)) r.
template <class S>
Tensor2<S> cre_defect(const LieAlgebra<S>& alg, const Tensor2<S>& r,
                      const std::vector<S>& sigma) {
  if (r.dim != alg.dim) throw std::invalid_argument("cre_defect: tensor dim != algebra dim");
  const std::vector<S> a = matrix_minus_identity(sigma, alg.dim);
  return apply_leg(apply_leg(r, a, 0), a, 1);
}

inline Tensor2D cre_defect(const LieAlgebraD& alg, const Tensor2D& r, const Automorphism& sigma) {
  std::vector<double> m(sigma.matrix.data(), sigma.matrix.data() + sigma.matrix.size());
  // Eigen stores column-major; rebuild row-addressable layout m[k*n+i] = M(k,i)
  const int n = alg.dim;
  std::vector<double> rm(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rm[static_cast<std::size_t>(i * n + j)] = sigma.matrix(i, j);
  return cre_defect(alg, r, rm);
}

/// [[r, r]] = [r12, r13] + [r13, r23] + [r12, r23] via structure-constant
/// contraction of the colliding legs.
template <class S>
Tensor3<S> cybe_defect(const LieAlgebra<S>& alg, const Tensor2<S>& r) {
  const int n = alg.dim;
  if (r.dim != n) throw std::invalid_argument("cybe_defect: tensor dim != algebra dim");
  Tensor3<S> out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const S& rab = r.at(a, b);
      if (rab == S(0)) continue;
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          const S& rcd = r.at(c, d);
          if (rcd == S(0)) continue;
          const S prod = rab * rcd;
          for (int m = 0; m < n; ++m) {
            const S& c1 = alg.c(a, c, m);  // [r12, r13]: legs 1 collide
            if (!(c1 == S(0))) out.at(m, b, d) += prod * c1;
            const S& c2 = alg.c(b, d, m);  // [r13, r23]: legs 3 collide
            if (!(c2 == S(0))) out.at(a, c, m) += prod * c2;
            const S& c3 = alg.c(b, c, m);  // [r12, r23]: legs 2 collide
            if (!(c3 == S(0))) out.at(a, m, d) += prod * c3;
          }
        }
    }
  return out;
}

namespace detail {

/// Dense inverse by Gauss-Jordan with partial pivoting; works over any field
/// scalar (double or Rational). Throws std::domain_error on singular input.
template <class S>
std::vector<S> invert_dense(std::vector<S> m, int n) {
  std::vector<S> inv(static_cast<std::size_t>(n) * n, S(0));
  for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i * n + i)] = S(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    double best = 0.0;
    for (int row = col; row < n; ++row) {
      const double mag = scalar::abs_val(m[static_cast<std::size_t>(row * n + col)]);
      if (mag > best) { best = mag; pivot = row; }
    }
    if (pivot < 0 || best == 0.0)
      throw std::domain_error("invert_dense: singular matrix (nondegeneracy violated)");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        std::swap(m[static_cast<std::size_t>(pivot * n + j)], m[static_cast<std::size_t>(col * n + j)]);
        std::swap(inv[static_cast<std::size_t>(pivot * n + j)], inv[static_cast<std::size_t>(col * n + j)]);
      }
    const S diag = m[static_cast<std::size_t>(col * n + col)];
    for (int j = 0; j < n; ++j) {
      m[static_cast<std::size_t>(col * n + j)] /= diag;
      inv[static_cast<std::size_t>(col * n + j)] /= diag;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      const S factor = m[static_cast<std::size_t>(row * n + col)];
      if (factor == S(0)) continue;
      for (int j = 0; j < n; ++j) {
        m[static_cast<std::size_t>(row * n + j)] -= factor * m[static_cast<std::size_t>(col * n + j)];
        inv[static_cast<std::size_t>(row * n + j)] -= factor * inv[static_cast<std::size_t>(col * n + j)];
      }
    }
  }
  return inv;
}

}  // namespace detail

/// Operator on g attached to an order-2 tensor through the trace form:
/// X -> sum_{ab} t^{ab} B(X, x_a) x_b; returned as row-addressable dim x dim.
template <class S>
std::vector<S> operator_form(const LieAlgebra<S>& alg, const Tensor2<S>& t) {
  const int n = alg.dim;
  if (t.dim != n) throw std::invalid_argument("operator_form: tensor dim != algebra dim");
  detail::invert_dense(alg.trace_form, n);  // nondegeneracy gate
  std::vector<S> op(static_cast<std::size_t>(n) * n, S(0));
  // (op)_{b,i} = sum_a B_{i,a} t^{a,b}
  for (int b = 0; b < n; ++b)
    for (int i = 0; i < n; ++i) {
      S s(0);
      for (int a = 0; a < n; ++a) s += alg.form(i, a) * t.at(a, b);
      op[static_cast<std::size_t>(b * n + i)] = s;
    }
  return op;
}

template <class S>
std::vector<S> apply_matrix(const std::vector<S>& m, const std::vector<S>& x, int n) {
  std::vector<S> out(static_cast<std::size_t>(n), S(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out[static_cast<std::size_t>(i)] += m[static_cast<std::size_t>(i * n + j)] * x[static_cast<std::size_t>(j)];
  return out;
}

/// Dual-basis pairing tensor of the trace form; operator_form of it is the
/// identity, and it is ad-invariant.
template <class S>
Tensor2<S> casimir_tensor(const LieAlgebra<S>& alg) {
  const int n = alg.dim;
  std::vector<S> binv = detail::invert_dense(alg.trace_form, n);
  Tensor2<S> t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.at(i, j) = binv[static_cast<std::size_t>(i * n + j)];
  return t;
}

/// Defect of the modified Yang-Baxter identity for the operators attached to
/// the skew part and symmetric part of r:
///   [Rx, Ry] - R([Rx, y] + [x, Ry]) + [Jx, Jy]
template <class S>
std::vector<S> mcybe_defect(const LieAlgebra<S>& alg, const Tensor2<S>& r,
                            const std::vector<S>& x, const std::vector<S>& y) {
  const int n = alg.dim;
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw std::invalid_argument("mcybe_defect: vector length != dim");
  const S half = S(1) / S(2);
  const Tensor2<S> r21 = r.transposed();
  const Tensor2<S> rhat = half * (r - r21);
  const Tensor2<S> jsym = half * (r + r21);
  const std::vector<S> rop = operator_form(alg, rhat);
  const std::vector<S> jop = operator_form(alg, jsym);

  const std::vector<S> rx = apply_matrix(rop, x, n);
  const std::vector<S> ry = apply_matrix(rop, y, n);
  const std::vector<S> jx = apply_matrix(jop, x, n);
  const std::vector<S> jy = apply_matrix(jop, y, n);

  std::vector<S> term1 = alg.bracket(rx, ry);
  std::vector<S> inner = alg.bracket(rx, y);
  const std::vector<S> inner2 = alg.bracket(x, ry);
  for (int i = 0; i < n; ++i) inner[static_cast<std::size_t>(i)] += inner2[static_cast<std::size_t>(i)];
  const std::vector<S> term2 = apply_matrix(rop, inner, n);
  const std::vector<S> term3 = alg.bracket(jx, jy);

  std::vector<S> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] =
        term1[static_cast<std::size_t>(i)] - term2[static_cast<std::size_t>(i)] + term3[static_cast<std::size_t>(i)];
  return out;
}

/// max over subalgebra basis vectors v of |(ad_v (x) 1 + 1 (x) ad_v) C|_inf.
inline double invariance_defect(const LieAlgebraD& alg, const Tensor2D& c,
                                const SubalgebraBasis& sub) {
  double worst = 0.0;
  for (int j = 0; j < sub.vectors.cols(); ++j) {
    const std::vector<double> v = detail::to_std(sub.vectors.col(j));
    worst = std::max(worst, cobracket(alg, c, v).max_abs());
  }
  return worst;
}

/// Block decomposition of r along the fixed/non-fixed splitting of sigma.
struct RBlockDecomposition {
  Tensor2D r_kk;
  Tensor2D r_kp;
  Tensor2D r_pk;
  Tensor2D r_pp;

  double pp_norm() const { return r_pp.max_abs(); }
};

inline RBlockDecomposition r_block_decomposition(const LieAlgebraD& alg, const Tensor2D& r,
                                                 const FixedPointDecomposition& dec) {
  const int n = alg.dim;
  std::vector<double> pk(static_cast<std::size_t>(n) * n), pp(pk);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      pk[static_cast<std::size_t>(i * n + j)] = dec.fixed_projector(i, j);
      pp[static_cast<std::size_t>(i * n + j)] = dec.p_projector(i, j);
    }
  RBlockDecomposition out;
  out.r_kk = apply_leg(apply_leg(r, pk, 0), pk, 1);
  out.r_kp = apply_leg(apply_leg(r, pk, 0), pp, 1);
  out.r_pk = apply_leg(apply_leg(r, pp, 0), pk, 1);
  out.r_pp = apply_leg(apply_leg(r, pp, 0), pp, 1);
  return out;
}

inline RBlockDecomposition r_block_decomposition(const LieAlgebraD& alg, const Tensor2D& r,
                                                 const Automorphism& sigma) {
  return r_block_decomposition(alg, r, fixed_subalgebra(alg, sigma));
}

}  // namespace refleq

#endif
