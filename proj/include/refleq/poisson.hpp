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

#ifndef REFLEQ_POISSON_HPP
#define REFLEQ_POISSON_HPP

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "refleq/dual.hpp"

namespace refleq {

/// Scalar observable on a phase space. Evaluation runs in dual arithmetic, so
/// exact first derivatives come with every call that seeds gradients.
struct Observable {
  std::string label;
  std::function<Dual(const std::vector<Dual>&)> fn;

  Dual operator()(const std::vector<Dual>& state) const { return fn(state); }
};

/// Phase space with an explicit coordinate Poisson tensor Pi(state).
/// tensor(state, out) fills the row-major n x n matrix; it must be evaluable
/// in dual arithmetic so that derivatives of Pi are available as well.
struct PoissonStructure {
  int n_coords = 0;
  std::vector<std::string> coord_labels;
  std::function<void(const std::vector<Dual>&, std::vector<Dual>&)> tensor;
};

/// Canonical structure on pairs (p_k, q_k) with {p_k, q_k} = 1. Coordinates
/// are ordered p_1..p_n, q_1..q_n.
inline PoissonStructure canonical_structure(int n_pairs) {
  PoissonStructure ps;
  ps.n_coords = 2 * n_pairs;
  for (int k = 1; k <= n_pairs; ++k) ps.coord_labels.push_back("p" + std::to_string(k));
  for (int k = 1; k <= n_pairs; ++k) ps.coord_labels.push_back("q" + std::to_string(k));
  const int n = ps.n_coords;
  ps.tensor = [n, n_pairs](const std::vector<Dual>&, std::vector<Dual>& out) {
    out.assign(static_cast<std::size_t>(n) * n, Dual(0.0));
    for (int k = 0; k < n_pairs; ++k) {
      out[static_cast<std::size_t>(k * n + (n_pairs + k))] = Dual(1.0);
      out[static_cast<std::size_t>((n_pairs + k) * n + k)] = Dual(-1.0);
    }
  };
  return ps;
}

inline double value(const Observable& f, const Eigen::VectorXd& state) {
  const Dual d = f(constant_state(state));
  if (!std::isfinite(d.value()))
    throw std::runtime_error("observable " + f.label + ": non-finite value");
  return d.value();
}

inline Eigen::VectorXd gradient(const Observable& f, const Eigen::VectorXd& state) {
  const Dual d = f(seed_state(state));
  Eigen::VectorXd g = d.has_grad() ? d.grad() : Eigen::VectorXd::Zero(state.size());
  if (!g.allFinite() || !std::isfinite(d.value()))
    throw std::runtime_error("observable " + f.label + ": non-finite derivative");
  return g;
}

namespace detail {

inline void eval_tensor_values(const PoissonStructure& ps, const Eigen::VectorXd& state,
                               Eigen::MatrixXd& pi) {
  std::vector<Dual> out;
  ps.tensor(constant_state(state), out);
  const int n = ps.n_coords;
  pi.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) pi(i, j) = out[static_cast<std::size_t>(i * n + j)].value();
}

/// Contraction over the strict upper triangle keeps the bracket exactly
/// antisymmetric in (F, G) at the floating-point level; accumulation runs in
/// extended precision because commuting observables cancel large terms.
inline double contract_bracket(const Eigen::MatrixXd& pi, const Eigen::VectorXd& gf,
                               const Eigen::VectorXd& gg) {
  long double acc = 0.0L;
  const int n = static_cast<int>(pi.rows());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double w = pi(i, j);
      if (w == 0.0) continue;
      acc += static_cast<long double>(w) *
             (static_cast<long double>(gf(i)) * static_cast<long double>(gg(j)) -
              static_cast<long double>(gf(j)) * static_cast<long double>(gg(i)));
    }
  return static_cast<double>(acc);
}

}  // namespace detail

/// {F, G}(s) = sum_{ij} Pi^{ij}(s) dF_i dG_j with exact dual derivatives.
inline double poisson_bracket(const PoissonStructure& ps, const Observable& f,
                              const Observable& g, const Eigen::VectorXd& state) {
  const Eigen::VectorXd gf = gradient(f, state);
  const Eigen::VectorXd gg = gradient(g, state);
  Eigen::MatrixXd pi;
  detail::eval_tensor_values(ps, state, pi);
  return detail::contract_bracket(pi, gf, gg);
}

/// Flow field of H under the convention df/dt = {H, f}:
/// v_j = {H, x_j} = sum_i Pi^{ij} dH_i.
inline Eigen::VectorXd hamiltonian_vector_field(const PoissonStructure& ps, const Observable& h,
                                                const Eigen::VectorXd& state) {
  const Eigen::VectorXd gh = gradient(h, state);
  Eigen::MatrixXd pi;
  detail::eval_tensor_values(ps, state, pi);
  return pi.transpose() * gh;
}

/// Antisymmetry defect of Pi at a state.
inline double tensor_antisymmetry_defect(const PoissonStructure& ps,
                                         const Eigen::VectorXd& state) {
  Eigen::MatrixXd pi;
  detail::eval_tensor_values(ps, state, pi);
  return (pi + pi.transpose()).cwiseAbs().maxCoeff();
}

/// Jacobi defect of Pi at a state: max over coordinate triples of the cyclic
/// sum  sum_l ( Pi^{il} d_l Pi^{jk} + Pi^{jl} d_l Pi^{ki} + Pi^{kl} d_l Pi^{ij} ).
inline double jacobi_defect(const PoissonStructure& ps, const Eigen::VectorXd& state) {
  const int n = ps.n_coords;
  std::vector<Dual> out;
  ps.tensor(seed_state(state), out);
  Eigen::MatrixXd pi(n, n);
  std::vector<Eigen::VectorXd> dpi(static_cast<std::size_t>(n) * n,
                                   Eigen::VectorXd::Zero(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Dual& d = out[static_cast<std::size_t>(i * n + j)];
      pi(i, j) = d.value();
      if (d.has_grad()) dpi[static_cast<std::size_t>(i * n + j)] = d.grad();
    }
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        long double s = 0.0L;
        for (int l = 0; l < n; ++l)
          s += static_cast<long double>(pi(i, l)) * dpi[static_cast<std::size_t>(j * n + k)](l) +
               static_cast<long double>(pi(j, l)) * dpi[static_cast<std::size_t>(k * n + i)](l) +
               static_cast<long double>(pi(k, l)) * dpi[static_cast<std::size_t>(i * n + j)](l);
        worst = std::max(worst, std::abs(static_cast<double>(s)));
      }
  return worst;
}

/// Output of a flow integration: states plus recorded invariant observables
/// at each output time.
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<std::string> invariant_labels;
  std::vector<Eigen::VectorXd> invariants;  // one vector per output time
};

struct StepControl {
  double dt = 1e-3;  // output interval; also the trial step
  double tol = 0.0;  // 0 disables step-halving error control
};

namespace detail {

inline Eigen::VectorXd rk4_step(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                const Eigen::VectorXd& y, double h) {
  const Eigen::VectorXd k1 = f(y);
  const Eigen::VectorXd k2 = f(y + 0.5 * h * k1);
  const Eigen::VectorXd k3 = f(y + 0.5 * h * k2);
  const Eigen::VectorXd k4 = f(y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace detail

/// Classic fourth-order one-step integration of df/dt = {H, f} with fixed
/// output interval dt and optional step-halving error control to tol.
inline Trajectory integrate_flow(const PoissonStructure& ps, const Observable& h,
                                 const Eigen::VectorXd& s0, double t_final,
                                 const StepControl& ctrl,
                                 const std::vector<Observable>& recorded = {}) {
  if (!(t_final > 0.0)) throw std::invalid_argument("integrate_flow: t_final must be positive");
  if (!(ctrl.dt > 0.0)) throw std::invalid_argument("integrate_flow: dt must be positive");

  auto field = [&](const Eigen::VectorXd& y) { return hamiltonian_vector_field(ps, h, y); };

  Trajectory traj;
  for (const auto& obs : recorded) traj.invariant_labels.push_back(obs.label);
  auto record = [&](double t, const Eigen::VectorXd& y) {
    traj.times.push_back(t);
    traj.states.push_back(y);
    Eigen::VectorXd inv(static_cast<Eigen::Index>(recorded.size()));
    for (std::size_t i = 0; i < recorded.size(); ++i)
      inv(static_cast<Eigen::Index>(i)) = value(recorded[i], y);
    traj.invariants.push_back(std::move(inv));
  };

  Eigen::VectorXd y = s0;
  record(0.0, y);
  const auto n_out = static_cast<long>(std::ceil(t_final / ctrl.dt - 1e-12));
  double t = 0.0;
  for (long step = 0; step < n_out; ++step) {
    const double t_next = std::min(t_final, (step + 1) * ctrl.dt);
    if (ctrl.tol <= 0.0) {
      y = detail::rk4_step(field, y, t_next - t);
    } else {
      double remaining = t_next - t;
      double hstep = remaining;
      while (remaining > 1e-15 * t_final) {
        hstep = std::min(hstep, remaining);
        if (hstep < 1e-14)
          throw std::runtime_error("integrate_flow: step underflow (stiffness)");
        const Eigen::VectorXd full = detail::rk4_step(field, y, hstep);
        const Eigen::VectorXd half =
            detail::rk4_step(field, detail::rk4_step(field, y, 0.5 * hstep), 0.5 * hstep);
        const double err = (full - half).cwiseAbs().maxCoeff();
        if (err > ctrl.tol) {
          hstep *= 0.5;
          continue;
        }
        y = half;
        remaining -= hstep;
        if (err < 0.01 * ctrl.tol) hstep *= 2.0;
      }
    }
    if (!y.allFinite()) throw std::runtime_error("integrate_flow: state diverged");
    t = t_next;
    record(t, y);
  }
  return traj;
}

/// Pairwise bracket magnitudes: entry (i, j) is the max over samples of
/// |{F_i, F_j}|. The diagonal is exactly zero and the matrix symmetric.
inline Eigen::MatrixXd commutation_report(const PoissonStructure& ps,
                                          const std::vector<Observable>& observables,
                                          const std::vector<Eigen::VectorXd>& samples) {
  if (samples.empty())
    throw std::invalid_argument("commutation_report: need at least one sample state");
  const auto m = static_cast<Eigen::Index>(observables.size());
  Eigen::MatrixXd report = Eigen::MatrixXd::Zero(m, m);
  for (const auto& s : samples) {
    std::vector<Eigen::VectorXd> grads;
    grads.reserve(observables.size());
    for (const auto& obs : observables) grads.push_back(gradient(obs, s));
    Eigen::MatrixXd pi;
    detail::eval_tensor_values(ps, s, pi);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = i + 1; j < m; ++j) {
        const double b = std::abs(detail::contract_bracket(
            pi, grads[static_cast<std::size_t>(i)], grads[static_cast<std::size_t>(j)]));
        report(i, j) = std::max(report(i, j), b);
        report(j, i) = report(i, j);
      }
  }
  return report;
}

/// Number of independent observables at a state: singular values of the
/// gradient matrix above 1e-8 times the largest.
inline int independence_rank(const PoissonStructure& ps,
                             const std::vector<Observable>& observables,
                             const Eigen::VectorXd& state) {
  const auto m = static_cast<Eigen::Index>(observables.size());
  Eigen::MatrixXd grads(m, ps.n_coords);
  for (Eigen::Index i = 0; i < m; ++i)
    grads.row(i) = gradient(observables[static_cast<std::size_t>(i)], state).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(grads);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-8 * sv(0)) ++rank;
  return rank;
}

}  // namespace refleq

#endif
