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

// s-ordered monomials {(a^dagger)^m a^n}_s as truncated matrices.
//
// Three independent constructions live here:
//  * s_ordered_monomial: the closed Jacobi-polynomial form, with the operator
//    parameter (n_hat - n) evaluated level by level as a diagonal matrix;
//  * s_to_t_convert: the Cahill-Glauber ordering change s -> t, recursed down
//    to normal order (t = 1), where the monomial is a plain matrix product;
//  * normal_reorder: a^m (a^dagger)^n rewritten in normal order.
//
// All three are exact in the truncated basis (lowering before raising never
// leaves the retained levels), except the direct product a^m (a^dagger)^n,
// which loses the top n levels.
//
// For large s (small |R|) the coefficients [-(s+1)/2]^m grow quickly. The
// conditional-operator builders therefore only trust the closed form for
// |R|^2 >= 0.05 and cross-check against the two-mode oracle below that.

#pragma once

#include <algorithm>

#include "condibeam/fock.hpp"
#include "condibeam/polynomials.hpp"

namespace condibeam {

struct OrderedMonomialSpec {
  int m = 0;       ///< power of a^dagger
  int n = 0;       ///< power of a
  double s = 1.0;  ///< ordering parameter (1 normal, 0 symmetric, -1 antinormal)

  void validate() const {
    if (m < 0 || n < 0) throw InvalidArgument("OrderedMonomialSpec: negative power");
  }
};

namespace detail {

inline void require_monomial_fits(int m, int n, const TruncationPolicy& policy) {
  if (m < 0 || n < 0) throw InvalidArgument("ordered monomial: negative power");
  if (2 * (m + n) > policy.cutoff()) {
    throw CutoffExceeded("ordered monomial: m + n exceeds half the cutoff");
  }
}

/// (a^dagger)^m a^n as a matrix product.
inline FockOperator normal_product(int m, int n, const TruncationPolicy& policy) {
  return power(creation_op(policy), m) * power(annihilation_op(policy), n);
}

}  // namespace detail

/// Closed Jacobi form:
///   m <= n:  m! [-(s+1)/2]^m a^(n-m)          P_m^(n-m, n_hat-n)((s-3)/(s+1))
///   m >= n:  n! [-(s+1)/2]^n (a^dagger)^(m-n) P_n^(m-n, n_hat-n)((s-3)/(s+1))
inline FockOperator s_ordered_monomial(const OrderedMonomialSpec& spec,
                                       const TruncationPolicy& policy) {
  spec.validate();
  detail::require_monomial_fits(spec.m, spec.n, policy);
  if (spec.s == -1.0) throw InvalidArgument("s_ordered_monomial: s = -1 is singular in the Jacobi form");
  const int m = spec.m;
  const int n = spec.n;
  const int degree = std::min(m, n);
  const int shift = std::abs(n - m);
  const double z = (spec.s - 3.0) / (spec.s + 1.0);
  double prefactor = factorial(degree) * std::pow(-(spec.s + 1.0) / 2.0, degree);

  // ladder power times the diagonal, filled in directly: a^k |q> = sqrt(q!/(q-k)!) |q-k>
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(policy.dim(), policy.dim());
  for (int q = 0; q < policy.dim(); ++q) {
    const int row = (m <= n) ? q - shift : q + shift;
    if (row < 0 || row >= policy.dim()) continue;
    const int hi = std::max(q, row), lo = std::min(q, row);
    const double ladder = std::exp(0.5 * (log_factorial(hi) - log_factorial(lo)));
    out(row, q) = ladder * prefactor * jacobi(degree, shift, static_cast<double>(q - n), z);
  }
  return FockOperator(std::move(out));
}

/// {(a^dagger)^m a^n}_s = sum_k k! C(m,k) C(n,k) ((t-s)/2)^k {(a^dagger)^(m-k) a^(n-k)}_t,
/// with the t-ordered terms expanded the same way down to normal order.
inline FockOperator s_to_t_convert(int m, int n, double s, double t,
                                   const TruncationPolicy& policy) {
  detail::require_monomial_fits(m, n, policy);
  if (t == 1.0) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(policy.dim(), policy.dim());
    for (int k = 0; k <= std::min(m, n); ++k) {
      const double c = factorial(k) * gen_binomial(m, k) * gen_binomial(n, k) *
                       std::pow((1.0 - s) / 2.0, k);
      acc += c * detail::normal_product(m - k, n - k, policy).mat();
    }
    return FockOperator(std::move(acc));
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(policy.dim(), policy.dim());
  for (int k = 0; k <= std::min(m, n); ++k) {
    const double c = factorial(k) * gen_binomial(m, k) * gen_binomial(n, k) *
                     std::pow((t - s) / 2.0, k);
    acc += c * s_to_t_convert(m - k, n - k, t, 1.0, policy).mat();
  }
  return FockOperator(std::move(acc));
}

/// a^m (a^dagger)^n = sum_l C(m,l) n!/(n-l)! (a^dagger)^(n-l) a^(m-l).
inline FockOperator normal_reorder(int m, int n, const TruncationPolicy& policy) {
  detail::require_monomial_fits(m, n, policy);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(policy.dim(), policy.dim());
  for (int l = 0; l <= std::min(m, n); ++l) {
    const double c = gen_binomial(m, l) * factorial(n) / factorial(n - l);
    acc += c * detail::normal_product(n - l, m - l, policy).mat();
  }
  return FockOperator(std::move(acc));
}

/// a^m (a^dagger)^n as a direct product of truncated matrices. Agrees with
/// normal_reorder only below level N_c - n.
inline FockOperator antinormal_product(int m, int n, const TruncationPolicy& policy) {
  detail::require_monomial_fits(m, n, policy);
  return power(annihilation_op(policy), m) * power(creation_op(policy), n);
}

}  // namespace condibeam
