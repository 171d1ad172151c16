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

#ifndef REFLEQ_PRESETS_HPP
#define REFLEQ_PRESETS_HPP

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "refleq/lie_algebra.hpp"
#include "refleq/tensor_ops.hpp"

namespace refleq {

/// A bundled algebra together with its named automorphisms and r-matrices,
/// kept in exact rational arithmetic with a double-precision mirror.
struct AlgebraPreset {
  LieAlgebraQ exact;
  LieAlgebraD dbl;
  std::map<std::string, Automorphism> automorphisms;
  std::map<std::string, std::vector<Rational>> automorphisms_exact;  // row-major
  std::map<std::string, Tensor2Q> tensors;

  const Automorphism& automorphism(const std::string& name) const {
    auto it = automorphisms.find(name);
    if (it == automorphisms.end())
      throw std::invalid_argument("preset " + dbl.name + ": no automorphism " + name);
    return it->second;
  }
  const Tensor2Q& tensor(const std::string& name) const {
    auto it = tensors.find(name);
    if (it == tensors.end())
      throw std::invalid_argument("preset " + dbl.name + ": no tensor " + name);
    return it->second;
  }
};

namespace detail {

inline Eigen::MatrixXd exact_to_eigen(const std::vector<Rational>& m, int n) {
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = m[static_cast<std::size_t>(i * n + j)].to_double();
  return out;
}

}  // namespace detail

/// sl(N) in the basis of off-diagonal matrix units E_ij followed by the
/// Chevalley Cartan elements H_k = E_kk - E_{k+1,k+1}. All data exact.
inline AlgebraPreset make_sl_preset(int matrix_size) {
  const int N = matrix_size;
  if (N < 2) throw std::invalid_argument("make_sl_preset: size must be >= 2");
  const int dim = N * N - 1;

  // basis bookkeeping
  struct OffDiag { int i, j; };
  std::vector<OffDiag> offdiag;
  std::vector<std::vector<int>> off_index(static_cast<std::size_t>(N),
                                          std::vector<int>(static_cast<std::size_t>(N), -1));
  LieAlgebraQ alg;
  alg.name = "sl" + std::to_string(N);
  alg.dim = dim;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      if (i == j) continue;
      off_index[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          static_cast<int>(offdiag.size());
      offdiag.push_back({i, j});
      alg.basis_labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  const int n_off = static_cast<int>(offdiag.size());
  for (int k = 0; k < N - 1; ++k) alg.basis_labels.push_back("H" + std::to_string(k + 1));

  // exact basis matrices
  auto zero = [&] { return std::vector<Rational>(static_cast<std::size_t>(N) * N, Rational(0)); };
  std::vector<std::vector<Rational>> basis_mats;
  for (const auto& od : offdiag) {
    auto m = zero();
    m[static_cast<std::size_t>(od.i * N + od.j)] = Rational(1);
    basis_mats.push_back(std::move(m));
  }
  for (int k = 0; k < N - 1; ++k) {
    auto m = zero();
    m[static_cast<std::size_t>(k * N + k)] = Rational(1);
    m[static_cast<std::size_t>((k + 1) * N + (k + 1))] = Rational(-1);
    basis_mats.push_back(std::move(m));
  }

  auto coordinatize = [&](const std::vector<Rational>& m) {
    std::vector<Rational> coeff(static_cast<std::size_t>(dim), Rational(0));
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        if (i != j)
          coeff[static_cast<std::size_t>(off_index[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])] =
              m[static_cast<std::size_t>(i * N + j)];
    Rational partial(0);
    for (int k = 0; k < N - 1; ++k) {
      partial += m[static_cast<std::size_t>(k * N + k)];
      coeff[static_cast<std::size_t>(n_off + k)] = partial;
    }
    return coeff;
  };

  auto matmul = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    auto out = zero();
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < N; ++k) {
        const Rational& av = a[static_cast<std::size_t>(i * N + k)];
        if (av == Rational(0)) continue;
        for (int j = 0; j < N; ++j)
          out[static_cast<std::size_t>(i * N + j)] += av * b[static_cast<std::size_t>(k * N + j)];
      }
    return out;
  };

  alg.structure.assign(static_cast<std::size_t>(dim) * dim * dim, Rational(0));
  alg.trace_form.assign(static_cast<std::size_t>(dim) * dim, Rational(0));
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      const auto ab = matmul(basis_mats[static_cast<std::size_t>(a)], basis_mats[static_cast<std::size_t>(b)]);
      const auto ba = matmul(basis_mats[static_cast<std::size_t>(b)], basis_mats[static_cast<std::size_t>(a)]);
      std::vector<Rational> comm(static_cast<std::size_t>(N) * N);
      Rational tr(0);
      for (int t = 0; t < N * N; ++t) comm[static_cast<std::size_t>(t)] = ab[static_cast<std::size_t>(t)] - ba[static_cast<std::size_t>(t)];
      for (int t = 0; t < N; ++t) tr += ab[static_cast<std::size_t>(t * N + t)];
      const auto coeff = coordinatize(comm);
      for (int k = 0; k < dim; ++k) alg.c(a, b, k) = coeff[static_cast<std::size_t>(k)];
      alg.trace_form[static_cast<std::size_t>(a * dim + b)] = tr;
    }

  AlgebraPreset preset;
  preset.exact = alg;
  preset.dbl = alg.to_double();
  for (const auto& m : basis_mats) {
    Eigen::MatrixXd md(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) md(i, j) = m[static_cast<std::size_t>(i * N + j)].to_double();
    preset.dbl.matrix_rep.push_back(std::move(md));
  }

  // identity and the negative-transpose involution
  std::vector<Rational> id(static_cast<std::size_t>(dim) * dim, Rational(0));
  for (int i = 0; i < dim; ++i) id[static_cast<std::size_t>(i * dim + i)] = Rational(1);
  preset.automorphisms_exact["identity"] = id;
  preset.automorphisms["identity"] = {"identity", detail::exact_to_eigen(id, dim), 1};

  std::vector<Rational> theta(static_cast<std::size_t>(dim) * dim, Rational(0));
  for (int t = 0; t < n_off; ++t) {
    const int partner = off_index[static_cast<std::size_t>(offdiag[static_cast<std::size_t>(t)].j)]
                                 [static_cast<std::size_t>(offdiag[static_cast<std::size_t>(t)].i)];
    theta[static_cast<std::size_t>(partner * dim + t)] = Rational(-1);
  }
  for (int k = 0; k < N - 1; ++k)
    theta[static_cast<std::size_t>((n_off + k) * dim + (n_off + k))] = Rational(-1);
  preset.automorphisms_exact["cartan"] = theta;
  preset.automorphisms["cartan"] = {"cartan", detail::exact_to_eigen(theta, dim), 2};

  // skew r-matrix: sum over positive roots of E_ij /\ E_ji (i < j)
  Tensor2Q rhat(dim);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      const int up = off_index[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const int lo = off_index[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      rhat.at(up, lo) += Rational(1);
      rhat.at(lo, up) -= Rational(1);
    }
  preset.tensors["r_hat"] = rhat;

  // quasitriangular r-matrix: upper (x) lower plus half the Cartan pairing in
  // the dual basis of the restricted trace form
  const int nc = N - 1;
  std::vector<Rational> gram(static_cast<std::size_t>(nc) * nc, Rational(0));
  for (int k = 0; k < nc; ++k)
    for (int l = 0; l < nc; ++l)
      gram[static_cast<std::size_t>(k * nc + l)] = alg.form(n_off + k, n_off + l);
  const auto gram_inv = detail::invert_dense(gram, nc);
  Tensor2Q rstd(dim);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      const int up = off_index[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const int lo = off_index[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      rstd.at(up, lo) += Rational(1);
    }
  const Rational half(1, 2);
  for (int k = 0; k < nc; ++k)
    for (int l = 0; l < nc; ++l)
      rstd.at(n_off + k, n_off + l) += half * gram_inv[static_cast<std::size_t>(k * nc + l)];
  preset.tensors["r_standard"] = rstd;
  preset.tensors["casimir"] = casimir_tensor(preset.exact);
  return preset;
}

/// gl2 in the basis E, H, F, I.
inline AlgebraPreset make_gl2_preset() {
  LieAlgebraQ alg;
  alg.name = "gl2";
  alg.dim = 4;
  alg.basis_labels = {"E", "H", "F", "I"};
  alg.structure.assign(4 * 4 * 4, Rational(0));
  alg.trace_form.assign(4 * 4, Rational(0));
  const int E = 0, H = 1, F = 2;
  auto set_bracket = [&](int i, int j, int k, std::int64_t v) {
    alg.c(i, j, k) = Rational(v);
    alg.c(j, i, k) = Rational(-v);
  };
  set_bracket(H, E, E, 2);
  set_bracket(H, F, F, -2);
  set_bracket(E, F, H, 1);
  alg.trace_form[0 * 4 + 2] = Rational(1);
  alg.trace_form[2 * 4 + 0] = Rational(1);
  alg.trace_form[1 * 4 + 1] = Rational(2);
  alg.trace_form[3 * 4 + 3] = Rational(2);

  AlgebraPreset preset;
  preset.exact = alg;
  preset.dbl = alg.to_double();
  Eigen::MatrixXd me(2, 2), mh(2, 2), mf(2, 2), mi(2, 2);
  me << 0, 1, 0, 0;
  mh << 1, 0, 0, -1;
  mf << 0, 0, 1, 0;
  mi << 1, 0, 0, 1;
  preset.dbl.matrix_rep = {me, mh, mf, mi};

  std::vector<Rational> id(16, Rational(0));
  for (int i = 0; i < 4; ++i) id[static_cast<std::size_t>(i * 4 + i)] = Rational(1);
  preset.automorphisms_exact["identity"] = id;
  preset.automorphisms["identity"] = {"identity", detail::exact_to_eigen(id, 4), 1};

  std::vector<Rational> theta(16, Rational(0));
  theta[static_cast<std::size_t>(2 * 4 + 0)] = Rational(-1);  // E -> -F
  theta[static_cast<std::size_t>(0 * 4 + 2)] = Rational(-1);  // F -> -E
  theta[static_cast<std::size_t>(1 * 4 + 1)] = Rational(-1);  // H -> -H
  theta[static_cast<std::size_t>(3 * 4 + 3)] = Rational(-1);  // I -> -I
  preset.automorphisms_exact["cartan"] = theta;
  preset.automorphisms["cartan"] = {"cartan", detail::exact_to_eigen(theta, 4), 2};

  preset.tensors["casimir"] = casimir_tensor(preset.exact);
  return preset;
}

/// sl2 (+) sl2 with the factor-swap involution and the double r-matrix
///   r_d = sum_i (x_i, x_i) (x) (r_+(xi_i), r_-(xi_i))
/// built from the quasitriangular r-matrix of the summand.
inline AlgebraPreset make_sl2sl2_preset() {
  AlgebraPreset sl2 = make_sl_preset(2);
  const int d = sl2.exact.dim;  // 3

  AlgebraPreset preset;
  preset.exact = direct_sum(sl2.exact, sl2.exact);
  LieAlgebraD dsum_dbl = direct_sum(sl2.dbl, sl2.dbl);
  preset.dbl = preset.exact.to_double();
  preset.dbl.matrix_rep = dsum_dbl.matrix_rep;
  const int dim = preset.exact.dim;  // 6

  std::vector<Rational> id(static_cast<std::size_t>(dim) * dim, Rational(0));
  for (int i = 0; i < dim; ++i) id[static_cast<std::size_t>(i * dim + i)] = Rational(1);
  preset.automorphisms_exact["identity"] = id;
  preset.automorphisms["identity"] = {"identity", detail::exact_to_eigen(id, dim), 1};

  std::vector<Rational> swap(static_cast<std::size_t>(dim) * dim, Rational(0));
  for (int i = 0; i < d; ++i) {
    swap[static_cast<std::size_t>(i * dim + (d + i))] = Rational(1);
    swap[static_cast<std::size_t>((d + i) * dim + i)] = Rational(1);
  }
  preset.automorphisms_exact["swap"] = swap;
  preset.automorphisms["swap"] = {"swap", detail::exact_to_eigen(swap, dim), 2};

  const auto& theta_half = sl2.automorphisms_exact.at("cartan");
  std::vector<Rational> theta(static_cast<std::size_t>(dim) * dim, Rational(0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      theta[static_cast<std::size_t>(i * dim + j)] = theta_half[static_cast<std::size_t>(i * d + j)];
      theta[static_cast<std::size_t>((d + i) * dim + (d + j))] = theta_half[static_cast<std::size_t>(i * d + j)];
    }
  preset.automorphisms_exact["cartan"] = theta;
  preset.automorphisms["cartan"] = {"cartan", detail::exact_to_eigen(theta, dim), 2};

  const Tensor2Q& r = sl2.tensors.at("r_standard");
  Tensor2Q rd(dim);
  for (int i = 0; i < d; ++i)
    for (int b = 0; b < d; ++b) {
      const Rational rp = r.at(i, b);   // r_+(xi_i) component
      const Rational rm = -r.at(b, i);  // r_-(xi_i) component
      if (!(rp == Rational(0))) {
        rd.at(i, b) += rp;
        rd.at(d + i, b) += rp;
      }
      if (!(rm == Rational(0))) {
        rd.at(i, d + b) += rm;
        rd.at(d + i, d + b) += rm;
      }
    }
  preset.tensors["r_double"] = rd;
  preset.tensors["casimir"] = casimir_tensor(preset.exact);
  return preset;
}

inline std::vector<std::string> algebra_preset_names() {
  return {"sl2", "sl3", "sl4", "sl5", "gl2", "sl2sl2"};
}

inline AlgebraPreset make_preset(const std::string& name) {
  if (name == "sl2") return make_sl_preset(2);
  if (name == "sl3") return make_sl_preset(3);
  if (name == "sl4") return make_sl_preset(4);
  if (name == "sl5") return make_sl_preset(5);
  if (name == "gl2") return make_gl2_preset();
  if (name == "sl2sl2") return make_sl2sl2_preset();
  throw std::invalid_argument("unknown algebra preset: " + name);
}

/// --- algebra definition files ----------------------------------------------

/// Loads an algebra from a JSON definition: name, dim, basis labels,
/// structure constants as (i,j,k,value) quadruples, optional trace form and
/// row-major matrix representation.
inline LieAlgebraD load_algebra_json(const nlohmann::json& j) {
  LieAlgebraD alg;
  alg.name = j.at("name").get<std::string>();
  alg.dim = j.at("dim").get<int>();
  if (alg.dim <= 0) throw std::invalid_argument("algebra file: dim must be positive");
  alg.basis_labels = j.at("basis_labels").get<std::vector<std::string>>();
  if (static_cast<int>(alg.basis_labels.size()) != alg.dim)
    throw std::invalid_argument("algebra file: basis_labels length != dim");
  alg.structure.assign(static_cast<std::size_t>(alg.dim) * alg.dim * alg.dim, 0.0);
  for (const auto& quad : j.at("structure_constants")) {
    if (!quad.is_array() || quad.size() != 4)
      throw std::invalid_argument("algebra file: structure constant entries must be [i,j,k,value]");
    const int i = quad[0].get<int>(), jj = quad[1].get<int>(), k = quad[2].get<int>();
    if (i < 0 || i >= alg.dim || jj < 0 || jj >= alg.dim || k < 0 || k >= alg.dim)
      throw std::invalid_argument("algebra file: structure constant index out of range");
    alg.c(i, jj, k) = quad[3].get<double>();
  }
  if (j.contains("matrix_rep")) {
    const auto& rep = j.at("matrix_rep");
    const int size = rep.at("size").get<int>();
    for (const auto& flat : rep.at("matrices")) {
      const auto vals = flat.get<std::vector<double>>();
      if (static_cast<int>(vals.size()) != size * size)
        throw std::invalid_argument("algebra file: matrix_rep entry has wrong length");
      Eigen::MatrixXd m(size, size);
      for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) m(r, c) = vals[static_cast<std::size_t>(r * size + c)];
      alg.matrix_rep.push_back(std::move(m));
    }
    if (static_cast<int>(alg.matrix_rep.size()) != alg.dim)
      throw std::invalid_argument("algebra file: matrix_rep count != dim");
  }
  if (j.contains("trace_form")) {
    const auto rows = j.at("trace_form").get<std::vector<std::vector<double>>>();
    alg.trace_form.assign(static_cast<std::size_t>(alg.dim) * alg.dim, 0.0);
    if (static_cast<int>(rows.size()) != alg.dim)
      throw std::invalid_argument("algebra file: trace_form must be dim x dim");
    for (int r = 0; r < alg.dim; ++r) {
      if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != alg.dim)
        throw std::invalid_argument("algebra file: trace_form must be dim x dim");
      for (int c = 0; c < alg.dim; ++c)
        alg.trace_form[static_cast<std::size_t>(r * alg.dim + c)] = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  } else if (!alg.matrix_rep.empty()) {
    alg.trace_form.assign(static_cast<std::size_t>(alg.dim) * alg.dim, 0.0);
    for (int a = 0; a < alg.dim; ++a)
      for (int b = 0; b < alg.dim; ++b)
        alg.trace_form[static_cast<std::size_t>(a * alg.dim + b)] =
            (alg.matrix_rep[static_cast<std::size_t>(a)] * alg.matrix_rep[static_cast<std::size_t>(b)]).trace();
  } else {
    throw std::invalid_argument("algebra file: need trace_form or matrix_rep");
  }
  return alg;
}

inline LieAlgebraD load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open algebra file: " + path);
  nlohmann::json j;
  in >> j;
  return load_algebra_json(j);
}

}  // namespace refleq

#endif
