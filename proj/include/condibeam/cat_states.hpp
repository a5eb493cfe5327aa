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

// Schroedinger-cat-like states produced by conditional measurement.
//
// chi(n, beta) is the output of a balanced splitter with |n> on the signal
// port, vacuum on the reference port and D(beta')|n> detected, where
// beta = beta' e^{i(phi_T + phi_R + pi)}:
//   chi = N^{-1/2} sum_{k=0}^n L_{n-k}^k(|beta|^2) (-beta)^k / sqrt(k!) |k>,
//   N   = sum_{k=0}^n |beta|^{2k} / k! L_{n-k}^k(|beta|^2)^2,
//   p   = 2^{-n} e^{-|beta|^2} N.

#pragma once

#include <cmath>
#include <numbers>

#include "condibeam/beam_splitter.hpp"
#include "condibeam/conditional.hpp"
#include "condibeam/fock.hpp"
#include "condibeam/polynomials.hpp"

namespace condibeam {

struct CatSpec {
  int n = 0;
  Complex beta{0.0};
  int k = 1;  ///< multiplicity, multi-cat states only

  void validate() const {
    if (n < 0) throw InvalidArgument("CatSpec: n must be nonnegative");
    if (k < 1) throw InvalidArgument("CatSpec: k must be >= 1");
  }
};

/// beta from the detected displacement beta'.
inline Complex beta_from_measured(Complex beta_prime, const BeamSplitterParams& bs) {
  return beta_prime * std::polar(1.0, bs.phi_t + bs.phi_r + std::numbers::pi);
}

/// beta' that produces a given beta.
inline Complex measured_from_beta(Complex beta, const BeamSplitterParams& bs) {
  return beta * std::polar(1.0, -(bs.phi_t + bs.phi_r + std::numbers::pi));
}

struct CatNorm {
  double norm;         ///< N
  double probability;  ///< 2^{-n} e^{-|beta|^2} N
};

inline CatNorm cat_norm_and_prob(const CatSpec& spec) {
  spec.validate();
  const double x = std::norm(spec.beta);
  double sum = 0.0;
  double weight = 1.0;  // x^k / k!
  for (int k = 0; k <= spec.n; ++k) {
    const double lag = assoc_laguerre(spec.n - k, static_cast<double>(k), x);
    sum += weight * lag * lag;
    weight *= x / (k + 1);
  }
  return {sum, std::ldexp(std::exp(-x) * sum, -spec.n)};
}

namespace detail {

inline void require_cat_fits(int top, const TruncationPolicy& policy) {
  if (top >= policy.tail_start()) {
    throw CutoffExceeded("cat state: photon-number support reaches the top 10% of the cutoff");
  }
}

}  // namespace detail

/// chi(n, beta) from the Laguerre amplitude sum. The norm is taken from
/// cat_norm_and_prob and checked against the vector's own norm.
inline FockVector chi_state(const CatSpec& spec, const TruncationPolicy& policy) {
  spec.validate();
  detail::require_cat_fits(spec.n, policy);
  const double x = std::norm(spec.beta);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(policy.dim());
  Complex power(1.0);  // (-beta)^k / sqrt(k!)
  for (int k = 0; k <= spec.n; ++k) {
    amps(k) = assoc_laguerre(spec.n - k, static_cast<double>(k), x) * power;
    power *= -spec.beta / std::sqrt(static_cast<double>(k + 1));
  }
  const double expected = cat_norm_and_prob(spec).norm;
  const double direct = amps.squaredNorm();
  if (std::abs(direct - expected) > 1e-9 * std::max(1.0, expected)) {
    throw ConsistencyError("chi_state: Laguerre norm disagrees with the amplitude sum");
  }
  return FockVector(amps / std::sqrt(expected));
}

/// (a - beta)^n (a^dagger + beta^*)^n |0> / n!, normalized.
inline FockVector chi_state_operator_route(const CatSpec& spec, const TruncationPolicy& policy) {
  spec.validate();
  detail::require_cat_fits(spec.n, policy);
  const FockOperator a = annihilation_op(policy);
  const FockOperator ad = creation_op(policy);
  const FockOperator id = identity_op(policy);
  const FockOperator raise = ad + std::conj(spec.beta) * id;
  const FockOperator lower = a - spec.beta * id;
  Eigen::VectorXcd v = fock_state(0, policy).amps();
  for (int i = 0; i < spec.n; ++i) v = raise.mat() * v;
  for (int i = 0; i < spec.n; ++i) v = lower.mat() * v / static_cast<double>(i + 1);
  return normalize(FockVector(v));
}

/// L_n[beta D^dagger(beta) a^dagger D(beta)] |0>, normalized. The operator
/// argument is formed from displacement matrices at a wider cutoff and the
/// Laguerre polynomial is applied with its three-term recurrence.
inline FockVector chi_state_displaced_route(const CatSpec& spec, const TruncationPolicy& policy) {
  spec.validate();
  detail::require_cat_fits(spec.n, policy);
  const int work = detail::spread_cutoff(policy.cutoff(), std::abs(spec.beta));
  const TruncationPolicy wide = policy.with_cutoff(work);
  const Eigen::MatrixXcd x = spec.beta * detail::displacement_matrix(-spec.beta, work) *
                             creation_op(wide).mat() *
                             detail::displacement_matrix(spec.beta, work);
  Eigen::VectorXcd prev = fock_state(0, wide).amps();
  Eigen::VectorXcd cur = prev - x * prev;
  if (spec.n == 0) cur = prev;
  for (int k = 1; k < spec.n; ++k) {
    const Eigen::VectorXcd next = ((2.0 * k + 1.0) * cur - x * cur - static_cast<double>(k) * prev) /
                                  static_cast<double>(k + 1);
    prev = cur;
    cur = next;
  }
  return normalize(FockVector(cur.head(policy.dim())));
}

/// Photon-subtraction pipeline: |n> on the signal port, vacuum reference, D(beta')|n>
/// detected, with beta' derived from spec.beta and the splitter phases.
inline ConditionalResult scheme_a_state(const CatSpec& spec, const BeamSplitterParams& bs,
                                        const TruncationPolicy& policy) {
  spec.validate();
  const Complex beta_prime = measured_from_beta(spec.beta, bs);
  const FockOperator y = y_displaced_fock(0, spec.n, 0.0, beta_prime, bs, policy);
  return apply_conditional(y, fock_state(spec.n, policy));
}

/// Coherent-input pipeline: coherent signal |beta/T>, reference |n> in, |n>
/// detected. The output equals D(beta) chi(n, beta) up to a global phase.
inline ConditionalResult scheme_b_state(const CatSpec& spec, const BeamSplitterParams& bs,
                                        const TruncationPolicy& policy) {
  spec.validate();
  if (!bs.is_balanced(1e-12)) throw InvalidArgument("scheme_b_state: beam splitter must be balanced");
  const FockOperator y = y_displaced_fock(spec.n, spec.n, 0.0, 0.0, bs, policy);
  return apply_conditional(y, coherent_state(spec.beta / bs.transmittance(), policy));
}

/// N_k = sum_j C(n,j)^2 |beta|^{2k(n-j)} (kj)!.
inline double multi_cat_norm(const CatSpec& spec) {
  spec.validate();
  const double x = std::norm(spec.beta);
  double sum = 0.0;
  for (int j = 0; j <= spec.n; ++j) {
    const double c = gen_binomial(spec.n, j);
    const double bpow = (spec.n == j) ? 1.0 : std::pow(x, spec.k * (spec.n - j));
    sum += c * c * bpow * factorial(spec.k * j);
  }
  return sum;
}

/// N_k^{-1/2} [(a^dagger)^k - (beta^*)^k]^n |0>, built by repeated operator
/// application. The vector's norm is checked against multi_cat_norm.
inline FockVector multi_cat_state(const CatSpec& spec, const TruncationPolicy& policy) {
  spec.validate();
  if (2 * spec.k * spec.n > policy.cutoff()) {
    throw CutoffExceeded("multi_cat_state: k n exceeds half the cutoff");
  }
  const FockOperator step =
      power(creation_op(policy), spec.k) -
      std::pow(std::conj(spec.beta), spec.k) * identity_op(policy);
  Eigen::VectorXcd v = fock_state(0, policy).amps();
  for (int i = 0; i < spec.n; ++i) v = step.mat() * v;
  const double nk = multi_cat_norm(spec);
  if (std::abs(v.squaredNorm() - nk) > 1e-9 * nk) {
    throw ConsistencyError("multi_cat_state: N_k disagrees with the amplitude sum");
  }
  return FockVector(v / std::sqrt(nk));
}

}  // namespace condibeam
