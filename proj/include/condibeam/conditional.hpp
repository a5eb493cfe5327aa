// Copyright 2026 The condibeam Authors
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

// Closed-form conditional beam-splitter operator
//   Y = <Psi_out2| U |Psi_in2>
// for reference preparations D(alpha) F(a^dagger)|0> and measured states
// D(beta) G(a^dagger)|0>:
//   Y = D(eps) [sum_{m,n} f_m g_n^* R^m (-R^*/T)^n {(a^dagger)^m a^n}_s] T^n_hat D(delta),
//   eps = (alpha - T beta) / R^*,  delta = (beta - T^* alpha) / R^*,  s = 2/|R|^2 - 1.
//
// The sandwich is evaluated at a wider working cutoff and cut back, so the
// displacements do not see the truncation edge.

#pragma once

#include <algorithm>
#include <cmath>
#include <iostream>
#include <vector>

#include "condibeam/beam_splitter.hpp"
#include "condibeam/fock.hpp"
#include "condibeam/ordering.hpp"
#include "condibeam/reference.hpp"
#include "condibeam/two_mode.hpp"

namespace condibeam {

/// Below this |R|^2 the s-ordered coefficients grow fast enough that the
/// closed form is cross-checked against the two-mode oracle.
inline constexpr double kConditioningThreshold = 0.05;

namespace detail {

inline void require_displacement_budget(Complex d, const TruncationPolicy& policy) {
  const double mass = coherent_tail_mass(d, policy.tail_start());
  if (mass > policy.tail_tol()) {
    throw TruncationError("conditional operator: displacement too large for cutoff", mass);
  }
}

/// sum_{m,n} f_m g_n^* R^m (lowering_sign R^*/T)^n {(a^dagger)^m a^n}_s T^n_hat
/// at the working cutoff. lowering_sign is -1 for the physical operator.
inline Eigen::MatrixXcd y_core(const OperatorPolynomial& f, const OperatorPolynomial& g,
                               const BeamSplitterParams& bs, const TruncationPolicy& work,
                               double lowering_sign) {
  const Complex t = bs.transmittance();
  const Complex r = bs.reflectance();
  const double s = bs.ordering_parameter();
  const Complex lower = lowering_sign * std::conj(r) / t;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(work.dim(), work.dim());
  for (int m = 0; m <= f.degree(); ++m) {
    if (f[m] == Complex(0.0)) continue;
    for (int n = 0; n <= g.degree(); ++n) {
      if (g[n] == Complex(0.0)) continue;
      const Complex c = f[m] * std::conj(g[n]) * std::pow(r, m) * std::pow(lower, n);
      acc += c * s_ordered_monomial({m, n, s}, work).mat();
    }
  }
  return acc * attenuation_op(t, work).mat().diagonal().asDiagonal();
}

/// D(eps) core D(delta), evaluated at a working cutoff wide enough for both
/// displacements, then cut to the policy cutoff.
inline FockOperator displaced_sandwich(const OperatorPolynomial& f, const OperatorPolynomial& g,
                                       Complex alpha, Complex beta, const BeamSplitterParams& bs,
                                       const TruncationPolicy& policy, double lowering_sign) {
  bs.require_nondegenerate();
  if (2 * (f.degree() + g.degree()) > policy.cutoff()) {
    throw CutoffExceeded("conditional operator: deg F + deg G exceeds half the cutoff");
  }
  const Complex t = bs.transmittance();
  const Complex rc = std::conj(bs.reflectance());
  const Complex eps = (alpha - t * beta) / rc;
  const Complex delta = (beta - std::conj(t) * alpha) / rc;
  require_displacement_budget(eps, policy);
  require_displacement_budget(delta, policy);
  const int work_cutoff =
      spread_cutoff(policy.cutoff(), std::max(std::abs(eps), std::abs(delta)));
  const TruncationPolicy work = policy.with_cutoff(work_cutoff);
  Eigen::MatrixXcd y = y_core(f, g, bs, work, lowering_sign);
  if (eps != Complex(0.0)) y = displacement_matrix(eps, work_cutoff) * y;
  if (delta != Complex(0.0)) y = y * displacement_matrix(delta, work_cutoff);
  return FockOperator(y.topLeftCorner(policy.dim(), policy.dim()));
}

/// Relative Frobenius distance on the leading `levels` x `levels` block.
inline double relative_block_distance(const FockOperator& a, const FockOperator& b, int levels) {
  const Eigen::MatrixXcd da = a.mat().topLeftCorner(levels, levels);
  const Eigen::MatrixXcd db = b.mat().topLeftCorner(levels, levels);
  const double scale = std::max(db.norm(), 1e-300);
  return (da - db).norm() / scale;
}

/// Cross-checks a closed-form result against the oracle when |R|^2 is small.
inline FockOperator guard_conditioning(FockOperator closed, const ReferencePrep& in,
                                       const ReferencePrep& out, const BeamSplitterParams& bs,
                                       const TruncationPolicy& policy) {
  if (std::norm(bs.reflectance()) >= kConditioningThreshold) return closed;
  std::clog << "condibeam: warning: |R|^2 < " << kConditioningThreshold
            << ", closed-form conditional operator is ill-conditioned; cross-checking\n";
  FockOperator oracle = oracle_y(in, out, bs, policy);
  if (relative_block_distance(closed, oracle, policy.safe_levels()) > 1e-8) {
    std::clog << "condibeam: warning: closed form disagrees with the oracle; using the oracle\n";
    return oracle;
  }
  return closed;
}

}  // namespace detail

/// Y for Fock reference |m> displaced by alpha and detected state D(beta)|n>:
///   D(eps) R^m (-R^*)^n / (T^n sqrt(m! n!)) {(a^dagger)^m a^n}_s T^n_hat D(delta).
inline FockOperator y_displaced_fock(int m, int n, Complex alpha, Complex beta,
                                     const BeamSplitterParams& bs, const TruncationPolicy& policy) {
  if (m < 0 || n < 0) throw InvalidArgument("y_displaced_fock: negative photon number");
  if (4 * std::max(m, n) > policy.cutoff()) {
    throw CutoffExceeded("y_displaced_fock: photon numbers exceed a quarter of the cutoff");
  }
  FockOperator closed = detail::displaced_sandwich(OperatorPolynomial::fock(m),
                                                   OperatorPolynomial::fock(n), alpha, beta, bs,
                                                   policy, -1.0);
  return detail::guard_conditioning(std::move(closed), ReferencePrep::displaced_fock(m, alpha),
                                    ReferencePrep::displaced_fock(n, beta), bs, policy);
}

/// Y for undisplaced preparations F(a^dagger)|0> in and G(a^dagger)|0> detected.
inline FockOperator y_general(const OperatorPolynomial& f, const OperatorPolynomial& g,
                              const BeamSplitterParams& bs, const TruncationPolicy& policy) {
  FockOperator closed = detail::displaced_sandwich(f, g, 0.0, 0.0, bs, policy, -1.0);
  return detail::guard_conditioning(std::move(closed), {f, 0.0}, {g, 0.0}, bs, policy);
}

/// Y for displaced preparations D(alpha) F(a^dagger)|0> in and D(beta) G(a^dagger)|0> detected.
inline FockOperator y_displaced_general(const ReferencePrep& in, const ReferencePrep& measured,
                                        const BeamSplitterParams& bs,
                                        const TruncationPolicy& policy) {
  FockOperator closed = detail::displaced_sandwich(in.poly, measured.poly, in.displacement,
                                                   measured.displacement, bs, policy, -1.0);
  return detail::guard_conditioning(std::move(closed), in, measured, bs, policy);
}

struct ConditionalResult {
  FockVector state;
  double probability;
};

/// Normalized output Y|psi> / ||Y|psi>|| and its probability ||Y|psi>||^2.
inline ConditionalResult apply_conditional(const FockOperator& y, const FockVector& psi) {
  if (y.dim() != psi.dim()) throw DimensionMismatch("apply_conditional: cutoff mismatch");
  if (std::abs(norm(psi) - 1.0) > 1e-10) {
    throw InvalidArgument("apply_conditional: input state is not normalized");
  }
  const Eigen::VectorXcd out = y.mat() * psi.amps();
  const double amp = out.norm();
  if (!(amp >= 1e-14)) throw ZeroProbabilityOutcome("apply_conditional: outcome has zero probability");
  const double p = amp * amp;
  if (p > 1.0 + 1e-9) throw ConsistencyError("apply_conditional: probability exceeds one");
  return {FockVector(out / amp), p};
}

}  // namespace condibeam
