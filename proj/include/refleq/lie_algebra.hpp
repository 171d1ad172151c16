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

#ifndef REFLEQ_LIE_ALGEBRA_HPP
#define REFLEQ_LIE_ALGEBRA_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "refleq/rational.hpp"

namespace refleq {

/// A finite-dimensional Lie algebra in an explicit basis: structure constants
/// c[i][j][k] with [x_i, x_j] = sum_k c[i][j][k] x_k, an invariant symmetric
/// trace form, and (for the double-precision instantiation) an optional
/// faithful matrix representation used for validation and test oracles.
template <class S>
struct LieAlgebra {
  std::string name;
  int dim = 0;
  std::vector<std::string> basis_labels;
  std::vector<S> structure;   // dim^3, index (i*dim + j)*dim + k
  std::vector<S> trace_form;  // dim^2, index i*dim + j
  std::vector<Eigen::MatrixXd> matrix_rep;  // optional, double regardless of S

  const S& c(int i, int j, int k) const {
    return structure[static_cast<std::size_t>((i * dim + j) * dim + k)];
  }
  S& c(int i, int j, int k) {
    return structure[static_cast<std::size_t>((i * dim + j) * dim + k)];
  }
  const S& form(int i, int j) const {
    return trace_form[static_cast<std::size_t>(i * dim + j)];
  }

  int index_of(const std::string& label) const {
    for (int i = 0; i < dim; ++i)
      if (basis_labels[static_cast<std::size_t>(i)] == label) return i;
    throw std::invalid_argument("LieAlgebra " + name + ": no basis element " + label);
  }

  /// [x, y] in basis coordinates.
  template <class T>
  std::vector<T> bracket(const std::vector<T>& x, const std::vector<T>& y) const {
    if (static_cast<int>(x.size()) != dim || static_cast<int>(y.size()) != dim)
      throw std::invalid_argument("bracket: coordinate vector length != dim");
    std::vector<T> out(static_cast<std::size_t>(dim), T(0));
    for (int i = 0; i < dim; ++i) {
      if (x[static_cast<std::size_t>(i)] == T(0)) continue;
      for (int j = 0; j < dim; ++j) {
        if (y[static_cast<std::size_t>(j)] == T(0)) continue;
        const T xy = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
        for (int k = 0; k < dim; ++k) {
          const S& ck = c(i, j, k);
          if (ck == S(0)) continue;
          out[static_cast<std::size_t>(k)] += xy * T(ck);
        }
      }
    }
    return out;
  }

  /// Matrix of ad_x acting on coordinates: (ad_x)_{k,j} = sum_i x_i c[i][j][k].
  std::vector<S> ad(const std::vector<S>& x) const {
    if (static_cast<int>(x.size()) != dim)
      throw std::invalid_argument("ad: coordinate vector length != dim");
    std::vector<S> m(static_cast<std::size_t>(dim * dim), S(0));
    for (int i = 0; i < dim; ++i) {
      if (x[static_cast<std::size_t>(i)] == S(0)) continue;
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) {
          const S& ck = c(i, j, k);
          if (ck == S(0)) continue;
          m[static_cast<std::size_t>(k * dim + j)] += x[static_cast<std::size_t>(i)] * ck;
        }
    }
    return m;
  }

  LieAlgebra<double> to_double() const {
    LieAlgebra<double> out;
    out.name = name;
    out.dim = dim;
    out.basis_labels = basis_labels;
    out.structure.reserve(structure.size());
    for (const S& v : structure) out.structure.push_back(to_d(v));
    out.trace_form.reserve(trace_form.size());
    for (const S& v : trace_form) out.trace_form.push_back(to_d(v));
    out.matrix_rep = matrix_rep;
    return out;
  }

 private:
  static double to_d(double v) { return v; }
  static double to_d(const Rational& v) { return v.to_double(); }
};

using LieAlgebraD = LieAlgebra<double>;
using LieAlgebraQ = LieAlgebra<Rational>;

/// Basis automorphism, stored as its matrix on coordinates.
struct Automorphism {
  std::string label;
  Eigen::MatrixXd matrix;
  std::optional<int> order_hint;
};

/// Columns span a subspace of the algebra.
struct SubalgebraBasis {
  std::string label;
  Eigen::MatrixXd vectors;  // dim x r

  int subdim() const { return static_cast<int>(vectors.cols()); }
};

namespace detail {

inline Eigen::VectorXd col_to_vec(const Eigen::MatrixXd& m, int j) { return m.col(j); }

inline std::vector<double> to_std(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

inline Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace detail

/// --- structural validation -------------------------------------------------

struct AlgebraDefects {
  double antisymmetry = 0.0;
  double jacobi = 0.0;
  double trace_form_symmetry = 0.0;
  double trace_form_invariance = 0.0;
  double rep_consistency = 0.0;  // NaN when no matrix_rep bundled

  double max() const {
    double m = std::max({antisymmetry, jacobi, trace_form_symmetry, trace_form_invariance});
    if (!std::isnan(rep_consistency)) m = std::max(m, rep_consistency);
    return m;
  }
};

inline AlgebraDefects algebra_defects(const LieAlgebraD& alg) {
  AlgebraDefects d;
  const int n = alg.dim;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        d.antisymmetry = std::max(d.antisymmetry, std::abs(alg.c(i, j, k) + alg.c(j, i, k)));

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m)
            s += alg.c(i, j, m) * alg.c(m, k, l) + alg.c(j, k, m) * alg.c(m, i, l) +
                 alg.c(k, i, m) * alg.c(m, j, l);
          d.jacobi = std::max(d.jacobi, std::abs(s));
        }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d.trace_form_symmetry =
          std::max(d.trace_form_symmetry, std::abs(alg.form(i, j) - alg.form(j, i)));

  // B([x_i, x_j], x_k) + B(x_j, [x_i, x_k]) = 0
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int m = 0; m < n; ++m)
          s += alg.c(i, j, m) * alg.form(m, k) + alg.c(i, k, m) * alg.form(j, m);
        d.trace_form_invariance = std::max(d.trace_form_invariance, std::abs(s));
      }

  if (alg.matrix_rep.empty()) {
    d.rep_consistency = std::nan("");
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Eigen::MatrixXd comm = alg.matrix_rep[static_cast<std::size_t>(i)] *
                                   alg.matrix_rep[static_cast<std::size_t>(j)] -
                               alg.matrix_rep[static_cast<std::size_t>(j)] *
                                   alg.matrix_rep[static_cast<std::size_t>(i)];
        for (int k = 0; k < n; ++k)
          comm -= alg.c(i, j, k) * alg.matrix_rep[static_cast<std::size_t>(k)];
        d.rep_consistency = std::max(d.rep_consistency, comm.cwiseAbs().maxCoeff());
      }
  }
  return d;
}

/// x -> matrix_rep evaluation of a coordinate vector.
inline Eigen::MatrixXd rep_of(const LieAlgebraD& alg, const Eigen::VectorXd& x) {
  if (alg.matrix_rep.empty())
    throw std::invalid_argument("rep_of: algebra " + alg.name + " has no matrix representation");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(alg.matrix_rep[0].rows(), alg.matrix_rep[0].cols());
  for (int i = 0; i < alg.dim; ++i) m += x(i) * alg.matrix_rep[static_cast<std::size_t>(i)];
  return m;
}

/// max_{i,j} | sigma[x_i, x_j] - [sigma x_i, sigma x_j] |_inf
inline double automorphism_defect(const LieAlgebraD& alg, const Automorphism& sigma) {
  const int n = alg.dim;
  if (sigma.matrix.rows() != n || sigma.matrix.cols() != n)
    throw std::invalid_argument("automorphism_defect: matrix size != dim");
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<double> ei(static_cast<std::size_t>(n), 0.0), ej(ei);
      ei[static_cast<std::size_t>(i)] = 1.0;
      ej[static_cast<std::size_t>(j)] = 1.0;
      Eigen::VectorXd lhs = sigma.matrix * detail::to_eigen(alg.bracket(ei, ej));
      Eigen::VectorXd rhs = detail::to_eigen(
          alg.bracket(detail::to_std(sigma.matrix.col(i)), detail::to_std(sigma.matrix.col(j))));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

inline double automorphism_order_defect(const Automorphism& sigma) {
  if (!sigma.order_hint) return std::nan("");
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(sigma.matrix.rows(), sigma.matrix.cols());
  for (int i = 0; i < *sigma.order_hint; ++i) p = sigma.matrix * p;
  return (p - Eigen::MatrixXd::Identity(p.rows(), p.cols())).cwiseAbs().maxCoeff();
}

/// --- fixed subalgebra and eigenspace decomposition --------------------------

struct EigenspaceBlock {
  std::complex<double> eigenvalue;  // conjugate pairs reported once (Im > 0)
  Eigen::MatrixXd vectors;          // real basis of the invariant subspace
};

struct FixedPointDecomposition {
  SubalgebraBasis fixed;                   // ker(sigma - 1)
  std::vector<EigenspaceBlock> nonfixed;   // eigenvalue != 1 blocks
  Eigen::MatrixXd fixed_projector;         // onto k along p
  Eigen::MatrixXd p_projector;             // complement
};

namespace detail {

inline Eigen::MatrixXd range_basis(const Eigen::MatrixXd& m, double tol = 1e-9) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(tol);
  const Eigen::Index rank = qr.rank();
  Eigen::MatrixXd q = qr.householderQ();
  return q.leftCols(rank);
}

}  // namespace detail

/// Decomposes g into the sigma-fixed subalgebra k and the eigenspaces of the
/// remaining eigenvalues, via the averaged projectors of a finite-order map.
inline FixedPointDecomposition fixed_subalgebra(const LieAlgebraD& alg,
                                                const Automorphism& sigma) {
  if (!sigma.order_hint || *sigma.order_hint < 1)
    throw std::invalid_argument(
        "fixed_subalgebra: eigenspace decomposition requires a finite-order automorphism "
        "(order_hint not set)");
  const int n = alg.dim;
  const int m = *sigma.order_hint;
  if (automorphism_order_defect(sigma) > 1e-8)
    throw std::invalid_argument("fixed_subalgebra: sigma^order differs from identity");

  std::vector<Eigen::MatrixXd> powers(static_cast<std::size_t>(m));
  powers[0] = Eigen::MatrixXd::Identity(n, n);
  for (int j = 1; j < m; ++j) powers[static_cast<std::size_t>(j)] = sigma.matrix * powers[static_cast<std::size_t>(j - 1)];

  FixedPointDecomposition out;
  Eigen::MatrixXd p1 = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < m; ++j) p1 += powers[static_cast<std::size_t>(j)];
  p1 /= static_cast<double>(m);
  out.fixed_projector = p1;
  out.p_projector = Eigen::MatrixXd::Identity(n, n) - p1;
  out.fixed = {"fixed(" + sigma.label + ")", detail::range_basis(p1)};

  const double two_pi = 2.0 * M_PI;
  for (int k = 1; k <= m / 2; ++k) {
    // real projector onto the lambda = exp(2 pi i k / m) block (paired with its
    // conjugate when complex)
    Eigen::MatrixXd pk = Eigen::MatrixXd::Zero(n, n);
    const bool is_real = (2 * k == m);
    for (int j = 0; j < m; ++j) {
      const double w = std::cos(two_pi * k * j / m) * (is_real ? 1.0 : 2.0);
      pk += w / m * powers[static_cast<std::size_t>(j)];
    }
    Eigen::MatrixXd basis = detail::range_basis(pk);
    if (basis.cols() == 0) continue;
    EigenspaceBlock block;
    block.eigenvalue = std::polar(1.0, two_pi * k / m);
    if (is_real) block.eigenvalue = std::complex<double>(-1.0, 0.0);
    block.vectors = basis;
    out.nonfixed.push_back(std::move(block));
  }
  return out;
}

/// Closure defect: how far each pairwise bracket of the basis falls outside
/// the spanned subspace.
inline double subalgebra_closure_defect(const LieAlgebraD& alg, const SubalgebraBasis& sub) {
  const Eigen::MatrixXd& v = sub.vectors;
  if (v.cols() == 0) return 0.0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(v);
  double worst = 0.0;
  for (int i = 0; i < v.cols(); ++i)
    for (int j = i + 1; j < v.cols(); ++j) {
      Eigen::VectorXd w = detail::to_eigen(
          alg.bracket(detail::to_std(v.col(i)), detail::to_std(v.col(j))));
      Eigen::VectorXd res = w - v * qr.solve(w);
      worst = std::max(worst, res.cwiseAbs().maxCoeff());
    }
  return worst;
}

inline int subspace_rank(const SubalgebraBasis& sub, double tol = 1e-9) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sub.vectors);
  qr.setThreshold(tol);
  return static_cast<int>(qr.rank());
}

/// Direct sum g1 (+) g2 with block structure constants and trace form.
template <class S>
LieAlgebra<S> direct_sum(const LieAlgebra<S>& a, const LieAlgebra<S>& b) {
  LieAlgebra<S> out;
  out.name = a.name + "+" + b.name;
  out.dim = a.dim + b.dim;
  for (const auto& l : a.basis_labels) out.basis_labels.push_back(l + "_1");
  for (const auto& l : b.basis_labels) out.basis_labels.push_back(l + "_2");
  out.structure.assign(static_cast<std::size_t>(out.dim) * out.dim * out.dim, S(0));
  out.trace_form.assign(static_cast<std::size_t>(out.dim) * out.dim, S(0));
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j) {
      for (int k = 0; k < a.dim; ++k) out.c(i, j, k) = a.c(i, j, k);
      out.trace_form[static_cast<std::size_t>(i * out.dim + j)] = a.form(i, j);
    }
  for (int i = 0; i < b.dim; ++i)
    for (int j = 0; j < b.dim; ++j) {
      for (int k = 0; k < b.dim; ++k) out.c(a.dim + i, a.dim + j, a.dim + k) = b.c(i, j, k);
      out.trace_form[static_cast<std::size_t>((a.dim + i) * out.dim + (a.dim + j))] =
          b.form(i, j);
    }
  if (!a.matrix_rep.empty() && !b.matrix_rep.empty()) {
    const auto ra = static_cast<Eigen::Index>(a.matrix_rep[0].rows());
    const auto rb = static_cast<Eigen::Index>(b.matrix_rep[0].rows());
    for (int i = 0; i < a.dim; ++i) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ra + rb, ra + rb);
      m.topLeftCorner(ra, ra) = a.matrix_rep[static_cast<std::size_t>(i)];
      out.matrix_rep.push_back(std::move(m));
    }
    for (int i = 0; i < b.dim; ++i) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ra + rb, ra + rb);
      m.bottomRightCorner(rb, rb) = b.matrix_rep[static_cast<std::size_t>(i)];
      out.matrix_rep.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace refleq

#endif
