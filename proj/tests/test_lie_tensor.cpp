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

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <unsupported/Eigen/KroneckerProduct>

#include "refleq/lie_algebra.hpp"
#include "refleq/presets.hpp"
#include "refleq/rng.hpp"
#include "refleq/tensor_ops.hpp"

using namespace refleq;

namespace {

std::vector<double> random_vector(Rng& rng, int dim, double lo = -1.0, double hi = 1.0) {
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (auto& x : v) x = rng.uniform(lo, hi);
  return v;
}

Tensor2D random_tensor2(Rng& rng, int dim) {
  Tensor2D t(dim);
  for (auto& x : t.a) x = rng.uniform(-1.0, 1.0);
  return t;
}

std::vector<double> basis_vector(int dim, int i) {
  std::vector<double> v(static_cast<std::size_t>(dim), 0.0);
  v[static_cast<std::size_t>(i)] = 1.0;
  return v;
}

/// Independent CYBE oracle: push the tensors into End(V)^(x)3 through the
/// matrix representation and take honest matrix commutators there.
Eigen::MatrixXd cybe_in_rep(const LieAlgebraD& alg, const Tensor2D& r) {
  const auto rows = alg.matrix_rep[0].rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(rows, rows);
  const auto dim3 = rows * rows * rows;
  Eigen::MatrixXd r12 = Eigen::MatrixXd::Zero(dim3, dim3);
  Eigen::MatrixXd r13 = r12, r23 = r12;
  for (int a = 0; a < alg.dim; ++a)
    for (int b = 0; b < alg.dim; ++b) {
      const double v = r.at(a, b);
      if (v == 0.0) continue;
      const auto& ma = alg.matrix_rep[static_cast<std::size_t>(a)];
      const auto& mb = alg.matrix_rep[static_cast<std::size_t>(b)];
      r12 += v * Eigen::kroneckerProduct(ma, Eigen::kroneckerProduct(mb, id)).eval();
      r13 += v * Eigen::kroneckerProduct(ma, Eigen::kroneckerProduct(id, mb)).eval();
      r23 += v * Eigen::kroneckerProduct(id, Eigen::kroneckerProduct(ma, mb)).eval();
    }
  auto comm = [](const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) { return x * y - y * x; };
  return comm(r12, r13) + comm(r13, r23) + comm(r12, r23);
}

Eigen::MatrixXd tensor3_in_rep(const LieAlgebraD& alg, const Tensor3D& t) {
  const auto rows = alg.matrix_rep[0].rows();
  const auto dim3 = rows * rows * rows;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim3, dim3);
  for (int a = 0; a < alg.dim; ++a)
    for (int b = 0; b < alg.dim; ++b)
      for (int c = 0; c < alg.dim; ++c) {
        const double v = t.at(a, b, c);
        if (v == 0.0) continue;
        out += v * Eigen::kroneckerProduct(
                       alg.matrix_rep[static_cast<std::size_t>(a)],
                       Eigen::kroneckerProduct(alg.matrix_rep[static_cast<std::size_t>(b)],
                                               alg.matrix_rep[static_cast<std::size_t>(c)]))
                       .eval();
      }
  return out;
}

std::vector<double> to_row_major(const Eigen::MatrixXd& m) {
  std::vector<double> out(static_cast<std::size_t>(m.rows() * m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i * m.cols() + j)] = m(i, j);
  return out;
}

}  // namespace

TEST_CASE("bundled algebras satisfy the structural invariants") {
  for (const auto& name : algebra_preset_names()) {
    const AlgebraPreset preset = make_preset(name);
    CAPTURE(name);
    const AlgebraDefects d = algebra_defects(preset.dbl);
    CHECK(d.antisymmetry <= 1e-12);
    CHECK(d.jacobi <= 1e-12);
    CHECK(d.trace_form_symmetry <= 1e-12);
    CHECK(d.trace_form_invariance <= 1e-12);
    if (!preset.dbl.matrix_rep.empty()) CHECK(d.rep_consistency <= 1e-12);
    for (const auto& [aname, sigma] : preset.automorphisms) {
      CAPTURE(aname);
      CHECK(automorphism_defect(preset.dbl, sigma) <= 1e-12);
      CHECK(automorphism_order_defect(sigma) <= 1e-12);
      CHECK(std::abs(sigma.matrix.determinant()) > 1e-12);
    }
  }
}

TEST_CASE("bracket reproduces the sl2 commutators") {
  const AlgebraPreset sl2 = make_preset("sl2");
  const int iE = sl2.dbl.index_of("E12");
  const int iF = sl2.dbl.index_of("E21");
  const int iH = sl2.dbl.index_of("H1");
  const int d = sl2.dbl.dim;

  auto he = sl2.dbl.bracket(basis_vector(d, iH), basis_vector(d, iE));
  CHECK(he[static_cast<std::size_t>(iE)] == Catch::Approx(2.0));
  CHECK(std::abs(he[static_cast<std::size_t>(iF)]) < 1e-15);
  CHECK(std::abs(he[static_cast<std::size_t>(iH)]) < 1e-15);

  auto ef = sl2.dbl.bracket(basis_vector(d, iE), basis_vector(d, iF));
  CHECK(ef[static_cast<std::size_t>(iH)] == Catch::Approx(1.0));
  CHECK(std::abs(ef[static_cast<std::size_t>(iE)]) < 1e-15);
}

TEST_CASE("bracket is antisymmetric and matches the matrix representation") {
  const AlgebraPreset sl3 = make_preset("sl3");
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_vector(rng, sl3.dbl.dim);
    const auto y = random_vector(rng, sl3.dbl.dim);
    const auto xx = sl3.dbl.bracket(x, x);
    for (double v : xx) CHECK(std::abs(v) < 1e-14);

    const auto br = sl3.dbl.bracket(x, y);
    const Eigen::MatrixXd mx = rep_of(sl3.dbl, detail::to_eigen(x));
    const Eigen::MatrixXd my = rep_of(sl3.dbl, detail::to_eigen(y));
    const Eigen::MatrixXd expect = mx * my - my * mx;
    const Eigen::MatrixXd got = rep_of(sl3.dbl, detail::to_eigen(br));
    CHECK((expect - got).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(sl3.dbl.bracket(std::vector<double>(3, 0.0), random_vector(rng, sl3.dbl.dim)),
                  std::invalid_argument);
}

TEST_CASE("cobracket of the skew r-matrix reproduces the Chevalley table") {
  // delta(H_i) = 0, delta(E_i) = E_i (x) H_i - H_i (x) E_i, same shape for F_i
  for (const auto& name : {std::string("sl2"), std::string("sl3"), std::string("sl4")}) {
    const AlgebraPreset preset = make_preset(name);
    const LieAlgebraD& alg = preset.dbl;
    const Tensor2D rhat = preset.tensor("r_hat").to_double();
    const int nsimple = (name == "sl2") ? 1 : (name == "sl3" ? 2 : 3);
    for (int i = 1; i <= nsimple; ++i) {
      const int iE = alg.index_of("E" + std::to_string(i) + std::to_string(i + 1));
      const int iF = alg.index_of("E" + std::to_string(i + 1) + std::to_string(i));
      const int iH = alg.index_of("H" + std::to_string(i));
      CAPTURE(name, i);

      CHECK(cobracket(alg, rhat, basis_vector(alg.dim, iH)).max_abs() < 1e-13);

      Tensor2D de = cobracket(alg, rhat, basis_vector(alg.dim, iE));
      Tensor2D expected_e(alg.dim);
      expected_e.at(iE, iH) = 1.0;
      expected_e.at(iH, iE) = -1.0;
      CHECK((de - expected_e).max_abs() < 1e-13);

      Tensor2D df = cobracket(alg, rhat, basis_vector(alg.dim, iF));
      Tensor2D expected_f(alg.dim);
      expected_f.at(iF, iH) = 1.0;
      expected_f.at(iH, iF) = -1.0;
      CHECK((df - expected_f).max_abs() < 1e-13);
    }
  }
}

TEST_CASE("cobracket is linear and vanishes on the zero tensor") {
  const AlgebraPreset sl2 = make_preset("sl2");
  Rng rng(7);
  const Tensor2D zero(sl2.dbl.dim);
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = random_vector(rng, sl2.dbl.dim);
    CHECK(cobracket(sl2.dbl, zero, x).max_abs() == 0.0);
  }
}

TEST_CASE("classical reflection defect vanishes where it must") {
  SECTION("identity automorphism kills every tensor") {
    const AlgebraPreset sl3 = make_preset("sl3");
    Rng rng(11);
    const auto& id = sl3.automorphism("identity");
    for (int trial = 0; trial < 1000; ++trial) {
      const Tensor2D r = random_tensor2(rng, sl3.dbl.dim);
      CHECK(cre_defect(sl3.dbl, r, id).max_abs() == 0.0);
    }
  }

  SECTION("(sl_{n+1}, r_hat, cartan) solves the reflection equation exactly") {
    for (const auto& name : {std::string("sl2"), std::string("sl3"), std::string("sl4"),
                             std::string("sl5")}) {
      const AlgebraPreset preset = make_preset(name);
      CAPTURE(name);
      const Tensor2Q defect =
          cre_defect(preset.exact, preset.tensor("r_hat"), preset.automorphisms_exact.at("cartan"));
      CHECK(defect.max_abs() == 0.0);  // exact rational arithmetic
      const Tensor2D defect_d = cre_defect(preset.dbl, preset.tensor("r_hat").to_double(),
                                           preset.automorphism("cartan"));
      CHECK(defect_d.max_abs() <= 1e-12);
    }
  }

  SECTION("the double algebra with the swap involution solves it exactly") {
    const AlgebraPreset dd = make_preset("sl2sl2");
    const Tensor2Q defect =
        cre_defect(dd.exact, dd.tensor("r_double"), dd.automorphisms_exact.at("swap"));
    CHECK(defect.max_abs() == 0.0);
  }

  SECTION("defect is linear in r") {
    const AlgebraPreset sl2 = make_preset("sl2");
    Rng rng(13);
    const auto& theta = sl2.automorphism("cartan");
    for (int trial = 0; trial < 10; ++trial) {
      const Tensor2D r1 = random_tensor2(rng, sl2.dbl.dim);
      const Tensor2D r2 = random_tensor2(rng, sl2.dbl.dim);
      const double a = rng.uniform(-2.0, 2.0);
      const Tensor2D lhs = cre_defect(sl2.dbl, a * r1 + r2, theta);
      const Tensor2D rhs = a * cre_defect(sl2.dbl, r1, theta) + cre_defect(sl2.dbl, r2, theta);
      CHECK((lhs - rhs).max_abs() < 1e-13);
    }
  }
}

TEST_CASE("Yang-Baxter defect: quasitriangular r-matrices pass, the skew part fails") {
  SECTION("zero tensor") {
    const AlgebraPreset sl2 = make_preset("sl2");
    CHECK(cybe_defect(sl2.dbl, Tensor2D(sl2.dbl.dim)).max_abs() == 0.0);
  }

  SECTION("standard r-matrix solves the equation exactly, n = 2, 3, 4") {
    for (const auto& name : {std::string("sl2"), std::string("sl3"), std::string("sl4")}) {
      const AlgebraPreset preset = make_preset(name);
      CAPTURE(name);
      CHECK(cybe_defect(preset.exact, preset.tensor("r_standard")).max_abs() == 0.0);
      CHECK(cybe_defect(preset.dbl, preset.tensor("r_standard").to_double()).max_abs() <= 1e-12);
    }
  }

  SECTION("skew part alone has defect with unit max coefficient on sl2") {
    const AlgebraPreset sl2 = make_preset("sl2");
    const Tensor3Q defect = cybe_defect(sl2.exact, sl2.tensor("r_hat"));
    CHECK(defect.max_abs() == 1.0);  // regression value
    const int iE = sl2.exact.index_of("E12");
    const int iF = sl2.exact.index_of("E21");
    const int iH = sl2.exact.index_of("H1");
    CHECK(defect.at(iH, iE, iF) == Rational(1));
    CHECK(defect.at(iH, iF, iE) == Rational(-1));
    CHECK(defect.at(iE, iH, iF) == Rational(-1));
  }

  SECTION("structure-constant contraction agrees with the representation oracle") {
    for (const auto& name : {std::string("sl2"), std::string("sl3")}) {
      const AlgebraPreset preset = make_preset(name);
      Rng rng(17);
      for (int trial = 0; trial < 3; ++trial) {
        const Tensor2D r = random_tensor2(rng, preset.dbl.dim);
        const Eigen::MatrixXd via_struct = tensor3_in_rep(preset.dbl, cybe_defect(preset.dbl, r));
        const Eigen::MatrixXd via_rep = cybe_in_rep(preset.dbl, r);
        CAPTURE(name, trial);
        CHECK((via_struct - via_rep).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("modified Yang-Baxter defect vanishes for factorizable standard r-matrices") {
  SECTION("exact check at rational arguments on sl2") {
    const AlgebraPreset sl2 = make_preset("sl2");
    const std::vector<Rational> x = {Rational(1), Rational(2), Rational(-1)};
    const std::vector<Rational> y = {Rational(1, 2), Rational(-3), Rational(5, 7)};
    const auto defect = mcybe_defect(sl2.exact, sl2.tensor("r_standard"), x, y);
    for (const auto& v : defect) CHECK(v == Rational(0));
  }

  SECTION("floating check on sl2 and sl3") {
    for (const auto& name : {std::string("sl2"), std::string("sl3")}) {
      const AlgebraPreset preset = make_preset(name);
      const Tensor2D r = preset.tensor("r_standard").to_double();
      Rng rng(19);
      CAPTURE(name);
      for (int trial = 0; trial < 100; ++trial) {
        const auto x = random_vector(rng, preset.dbl.dim);
        const auto y = random_vector(rng, preset.dbl.dim);
        const auto defect = mcybe_defect(preset.dbl, r, x, y);
        for (double v : defect) CHECK(std::abs(v) <= 1e-10);
      }
    }
  }

  SECTION("x = y gives zero, and the defect is bilinear") {
    const AlgebraPreset sl2 = make_preset("sl2");
    const Tensor2D r = sl2.tensor("r_standard").to_double();
    Rng rng(23);
    const auto x = random_vector(rng, 3);
    const auto defect_xx = mcybe_defect(sl2.dbl, r, x, x);
    for (double v : defect_xx) CHECK(std::abs(v) < 1e-13);

    const auto y = random_vector(rng, 3);
    std::vector<double> x2 = x;
    for (auto& v : x2) v *= 2.0;
    const auto d1 = mcybe_defect(sl2.dbl, r, x2, y);
    const auto d2 = mcybe_defect(sl2.dbl, r, x, y);
    for (std::size_t i = 0; i < d1.size(); ++i) CHECK(d1[i] == Catch::Approx(2.0 * d2[i]).margin(1e-12));
  }

  SECTION("singular trace form is rejected") {
    AlgebraPreset sl2 = make_preset("sl2");
    LieAlgebraD degenerate = sl2.dbl;
    std::fill(degenerate.trace_form.begin(), degenerate.trace_form.end(), 0.0);
    const std::vector<double> x = {1.0, 0.0, 0.0}, y = {0.0, 1.0, 0.0};
    CHECK_THROWS_AS(mcybe_defect(degenerate, sl2.tensor("r_standard").to_double(), x, y),
                    std::domain_error);
  }
}

TEST_CASE("operator form maps the dual-pairing tensor to the identity") {
  for (const auto& name : {std::string("sl2"), std::string("sl3"), std::string("gl2")}) {
    const AlgebraPreset preset = make_preset(name);
    CAPTURE(name);
    const auto op = operator_form(preset.exact, preset.tensor("casimir"));
    for (int i = 0; i < preset.exact.dim; ++i)
      for (int j = 0; j < preset.exact.dim; ++j)
        CHECK(op[static_cast<std::size_t>(i * preset.exact.dim + j)] == Rational(i == j ? 1 : 0));
  }

  SECTION("zero tensor and linearity") {
    const AlgebraPreset sl2 = make_preset("sl2");
    const auto op0 = operator_form(sl2.dbl, Tensor2D(3));
    for (double v : op0) CHECK(v == 0.0);

    Rng rng(29);
    const Tensor2D t1 = random_tensor2(rng, 3);
    const Tensor2D t2 = random_tensor2(rng, 3);
    const double a = rng.uniform(-2.0, 2.0);
    const auto lhs = operator_form(sl2.dbl, a * t1 + t2);
    const auto r1 = operator_form(sl2.dbl, t1);
    const auto r2 = operator_form(sl2.dbl, t2);
    for (std::size_t i = 0; i < lhs.size(); ++i)
      CHECK(lhs[i] == Catch::Approx(a * r1[i] + r2[i]).margin(1e-13));
  }
}

TEST_CASE("fixed subalgebra and eigenspace decomposition") {
  SECTION("sl2 under the negative-transpose involution") {
    const AlgebraPreset sl2 = make_preset("sl2");
    const auto dec = fixed_subalgebra(sl2.dbl, sl2.automorphism("cartan"));
    REQUIRE(dec.fixed.subdim() == 1);
    // fixed line is spanned by E - F
    Eigen::VectorXd v = dec.fixed.vectors.col(0);
    const int iE = sl2.dbl.index_of("E12");
    const int iF = sl2.dbl.index_of("E21");
    const int iH = sl2.dbl.index_of("H1");
    CHECK(std::abs(v(iE) + v(iF)) < 1e-12);
    CHECK(std::abs(v(iH)) < 1e-12);
    REQUIRE(dec.nonfixed.size() == 1);
    CHECK(dec.nonfixed[0].eigenvalue.real() == Catch::Approx(-1.0));
    CHECK(dec.nonfixed[0].vectors.cols() == 2);
  }

  SECTION("fixed-point dimension count for sl3, sl4, sl5") {
    for (const auto& [name, expected] :
         std::vector<std::pair<std::string, int>>{{"sl3", 3}, {"sl4", 6}, {"sl5", 10}}) {
      const AlgebraPreset preset = make_preset(name);
      const auto dec = fixed_subalgebra(preset.dbl, preset.automorphism("cartan"));
      CAPTURE(name);
      CHECK(dec.fixed.subdim() == expected);
      CHECK(subalgebra_closure_defect(preset.dbl, dec.fixed) < 1e-12);
      CHECK(subspace_rank(dec.fixed) == dec.fixed.subdim());
      int total = dec.fixed.subdim();
      for (const auto& block : dec.nonfixed) total += static_cast<int>(block.vectors.cols());
      CHECK(total == preset.dbl.dim);
    }
  }

  SECTION("swap fixes the diagonal copy") {
    const AlgebraPreset dd = make_preset("sl2sl2");
    const auto dec = fixed_subalgebra(dd.dbl, dd.automorphism("swap"));
    REQUIRE(dec.fixed.subdim() == 3);
    for (int j = 0; j < 3; ++j) {
      Eigen::VectorXd v = dec.fixed.vectors.col(j);
      for (int i = 0; i < 3; ++i) CHECK(std::abs(v(i) - v(i + 3)) < 1e-12);
    }
    CHECK(subalgebra_closure_defect(dd.dbl, dec.fixed) < 1e-12);
  }

  SECTION("infinite order is rejected") {
    const AlgebraPreset sl2 = make_preset("sl2");
    Automorphism nofinite{"scaling", Eigen::MatrixXd::Identity(3, 3), std::nullopt};
    CHECK_THROWS_AS(fixed_subalgebra(sl2.dbl, nofinite), std::invalid_argument);
  }
}

TEST_CASE("r-matrix block decomposition") {
  const AlgebraPreset sl2 = make_preset("sl2");
  const auto& theta = sl2.automorphism("cartan");
  const auto dec = fixed_subalgebra(sl2.dbl, theta);

  SECTION("blocks always sum back to r") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
      const Tensor2D r = random_tensor2(rng, 3);
      const auto blocks = r_block_decomposition(sl2.dbl, r, dec);
      const Tensor2D sum = blocks.r_kk + blocks.r_kp + blocks.r_pk + blocks.r_pp;
      CHECK((sum - r).max_abs() < 1e-12);
    }
  }

  SECTION("reflection solutions have vanishing pp block") {
    for (const auto& name : {std::string("sl2"), std::string("sl3"), std::string("sl4"),
                             std::string("sl5")}) {
      const AlgebraPreset preset = make_preset(name);
      const auto blocks = r_block_decomposition(preset.dbl, preset.tensor("r_hat").to_double(),
                                                preset.automorphism("cartan"));
      CAPTURE(name);
      CHECK(blocks.pp_norm() <= 1e-12);
    }
  }

  SECTION("identity automorphism puts everything in the kk block") {
    Rng rng(37);
    const Tensor2D r = random_tensor2(rng, 3);
    const auto blocks = r_block_decomposition(sl2.dbl, r, sl2.automorphism("identity"));
    CHECK(blocks.pp_norm() == 0.0);
    CHECK(blocks.r_kp.max_abs() == 0.0);
    CHECK(blocks.r_pk.max_abs() == 0.0);
    CHECK((blocks.r_kk - r).max_abs() < 1e-13);
  }

  SECTION("the symmetric part of the standard r-matrix obstructs") {
    const Tensor2D rstd = sl2.tensor("r_standard").to_double();
    const auto blocks = r_block_decomposition(sl2.dbl, rstd, dec);
    CHECK(blocks.pp_norm() > 0.1);

    // independent projector route: P_p = (1 - theta)/2 applied to both legs
    const Eigen::MatrixXd pp_mat = 0.5 * (Eigen::MatrixXd::Identity(3, 3) - theta.matrix);
    const auto pp_rm = to_row_major(pp_mat);
    const Tensor2D expected = apply_leg(apply_leg(rstd, pp_rm, 0), pp_rm, 1);
    CHECK((blocks.r_pp - expected).max_abs() < 1e-12);
  }
}

TEST_CASE("invariance defect distinguishes invariants from non-invariants") {
  const AlgebraPreset sl2 = make_preset("sl2");
  const LieAlgebraD& alg = sl2.dbl;

  SECTION("the dual-pairing tensor is invariant under all of g") {
    SubalgebraBasis full{"g", Eigen::MatrixXd::Identity(3, 3)};
    CHECK(invariance_defect(alg, sl2.tensor("casimir").to_double(), full) < 1e-12);
  }

  SECTION("C_theta of the symmetric part is k-invariant") {
    const Tensor2D rstd = sl2.tensor("r_standard").to_double();
    const Tensor2D jsym = 0.5 * (rstd + rstd.transposed());
    const Tensor2D c = cre_defect(alg, jsym, sl2.automorphism("cartan"));
    const auto dec = fixed_subalgebra(alg, sl2.automorphism("cartan"));
    CHECK(invariance_defect(alg, c, dec.fixed) < 1e-12);
  }

  SECTION("E (x) E is not k-invariant") {
    Tensor2D t(3);
    t.at(alg.index_of("E12"), alg.index_of("E12")) = 1.0;
    const auto dec = fixed_subalgebra(alg, sl2.automorphism("cartan"));
    CHECK(invariance_defect(alg, t, dec.fixed) > 0.1);
  }
}

TEST_CASE("coideal equivalence: reflection defect vanishes iff the pp block does") {
  Rng rng(41);
  for (const auto& [algname, autoname] :
       std::vector<std::pair<std::string, std::string>>{{"sl2", "cartan"},
                                                        {"sl3", "cartan"},
                                                        {"sl2sl2", "swap"}}) {
    const AlgebraPreset preset = make_preset(algname);
    const auto& sigma = preset.automorphism(autoname);
    const auto dec = fixed_subalgebra(preset.dbl, sigma);
    CAPTURE(algname, autoname);
    for (int trial = 0; trial < 40; ++trial) {
      const Tensor2D r = random_tensor2(rng, preset.dbl.dim);
      const auto blocks = r_block_decomposition(preset.dbl, r, dec);
      const double cre = cre_defect(preset.dbl, r, sigma).max_abs();
      CHECK((cre <= 1e-10) == (blocks.pp_norm() <= 1e-10));

      // removing the pp block always produces a solution
      const Tensor2D projected = blocks.r_kk + blocks.r_kp + blocks.r_pk;
      const auto blocks2 = r_block_decomposition(preset.dbl, projected, dec);
      CHECK(blocks2.pp_norm() <= 1e-12);
      CHECK(cre_defect(preset.dbl, projected, sigma).max_abs() <= 1e-12);
    }
  }
}

TEST_CASE("algebra definitions load from structured files") {
  const AlgebraPreset sl2 = make_preset("sl2");
  nlohmann::json j;
  j["name"] = "sl2_from_file";
  j["dim"] = 3;
  j["basis_labels"] = {"E12", "E21", "H1"};
  nlohmann::json quads = nlohmann::json::array();
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) {
        const double v = sl2.dbl.c(i, k, l);
        if (v != 0.0) quads.push_back({i, k, l, v});
      }
  j["structure_constants"] = quads;
  nlohmann::json mats = nlohmann::json::array();
  for (const auto& m : sl2.dbl.matrix_rep) {
    std::vector<double> flat;
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
    mats.push_back(flat);
  }
  j["matrix_rep"] = {{"size", 2}, {"matrices", mats}};

  const std::string path = "loaded_algebra_test.json";
  {
    std::ofstream out(path);
    out << j.dump(2);
  }
  const LieAlgebraD loaded = load_algebra_file(path);
  std::remove(path.c_str());

  CHECK(loaded.dim == 3);
  CHECK(algebra_defects(loaded).max() <= 1e-12);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l) CHECK(loaded.c(i, k, l) == sl2.dbl.c(i, k, l));
  // trace form defaults to the representation pairing
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      CHECK(loaded.trace_form[static_cast<std::size_t>(i * 3 + k)] ==
            Catch::Approx(sl2.dbl.form(i, k)));

  CHECK_THROWS_AS(load_algebra_file("no_such_file.json"), std::invalid_argument);
}

TEST_CASE("gl2 has a central element and nondegenerate pairing") {
  const AlgebraPreset gl2 = make_preset("gl2");
  const int iI = gl2.dbl.index_of("I");
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = random_vector(rng, 4);
    const auto br = gl2.dbl.bracket(basis_vector(4, iI), x);
    for (double v : br) CHECK(std::abs(v) < 1e-14);
  }
}
