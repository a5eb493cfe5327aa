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

// Reference-mode preparations D(alpha) F(a^dagger)|0>.

#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "condibeam/fock.hpp"

namespace condibeam {

/// F(a^dagger) = sum_k c_k (a^dagger)^k.
class OperatorPolynomial {
 public:
  OperatorPolynomial() : coeffs_{Complex(1.0)} {}

  explicit OperatorPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw InvalidArgument("OperatorPolynomial: no coefficients");
    if (coeffs_.size() > 1 && coeffs_.back() == Complex(0.0)) {
      throw InvalidArgument("OperatorPolynomial: trailing coefficient is zero");
    }
  }

  /// (a^dagger)^n / sqrt(n!), which generates |n> from the vacuum.
  static OperatorPolynomial fock(int n) {
    if (n < 0) throw InvalidArgument("OperatorPolynomial::fock: negative photon number");
    std::vector<Complex> c(n + 1, Complex(0.0));
    c[n] = std::exp(-0.5 * log_factorial(n));
    return OperatorPolynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex operator[](int k) const { return coeffs_[k]; }

  /// Fock amplitudes of F(a^dagger)|0>: c_k sqrt(k!).
  Eigen::VectorXcd vacuum_image(int cutoff) const {
    if (degree() > cutoff) throw CutoffExceeded("OperatorPolynomial: degree exceeds the cutoff");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(cutoff + 1);
    for (int k = 0; k <= degree(); ++k) v(k) = coeffs_[k] * std::exp(0.5 * log_factorial(k));
    return v;
  }

 private:
  std::vector<Complex> coeffs_;
};

/// D(displacement) F(a^dagger)|0>. Not normalized unless F is.
struct ReferencePrep {
  OperatorPolynomial poly;
  Complex displacement{0.0};

  static ReferencePrep vacuum() { return {}; }
  static ReferencePrep fock(int n) { return {OperatorPolynomial::fock(n), Complex(0.0)}; }
  static ReferencePrep displaced_fock(int n, Complex alpha) {
    return {OperatorPolynomial::fock(n), alpha};
  }
  static ReferencePrep coherent(Complex alpha) { return {OperatorPolynomial(), alpha}; }

  /// Amplitudes in the truncated basis, built at a wider cutoff and cut back.
  /// Throws TruncationError if the state leaks into the top 10% of levels.
  FockVector to_state(const TruncationPolicy& policy) const {
    if (poly.degree() > policy.cutoff()) {
      throw CutoffExceeded("ReferencePrep: polynomial degree exceeds the cutoff");
    }
    const int work = detail::spread_cutoff(std::max(poly.degree(), policy.cutoff()),
                                           std::abs(displacement));
    Eigen::VectorXcd wide = poly.vacuum_image(work);
    if (displacement != Complex(0.0)) {
      wide = detail::displacement_matrix(displacement, work) * wide;
    }
    const double total = wide.squaredNorm();
    const int from = policy.tail_start();
    const double leaked = wide.tail(wide.size() - from).squaredNorm() / total;
    if (leaked > policy.tail_tol()) {
      throw TruncationError("ReferencePrep: state leaks past the cutoff", leaked);
    }
    return FockVector(wide.head(policy.dim()));
  }
};

}  // namespace condibeam
