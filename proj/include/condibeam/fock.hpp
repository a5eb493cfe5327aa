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

// Single-mode linear algebra in the Fock basis truncated at photon number
// N_c. Vectors have N_c + 1 amplitudes, operators are (N_c + 1)^2 matrices.
//
// Truncation is never exact for displacements, so identities are asserted on
// the "safe block": the lowest ceil(N_c / 2) levels.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "condibeam/errors.hpp"
#include "condibeam/polynomials.hpp"

namespace condibeam {

using Complex = std::complex<double>;

/// Cutoff plus the tolerated probability mass in the top 10% of levels.
class TruncationPolicy {
 public:
  static constexpr double kDefaultTailTol = 1e-12;

  explicit TruncationPolicy(int cutoff, double tail_tol = kDefaultTailTol)
      : cutoff_(cutoff), tail_tol_(tail_tol) {
    if (cutoff < 8) throw InvalidArgument("TruncationPolicy: cutoff must be >= 8");
    if (!(tail_tol > 0.0)) throw InvalidArgument("TruncationPolicy: tail_tol must be > 0");
  }

  int cutoff() const { return cutoff_; }
  int dim() const { return cutoff_ + 1; }
  double tail_tol() const { return tail_tol_; }

  /// Number of levels in the safe block, ceil(N_c / 2).
  int safe_levels() const { return (cutoff_ + 1) / 2; }

  /// First level counted as "tail": the top 10% of the N_c + 1 levels.
  int tail_start() const {
    const int top = std::max(1, (dim() + 9) / 10);
    return dim() - top;
  }

  /// Same tolerance, different cutoff.
  TruncationPolicy with_cutoff(int cutoff) const {
    return TruncationPolicy(cutoff, tail_tol_);
  }

 private:
  int cutoff_;
  double tail_tol_;
};

/// Pure single-mode state (normalization is up to the caller's context).
class FockVector {
 public:
  explicit FockVector(Eigen::VectorXcd amps) : amps_(std::move(amps)) {
    if (amps_.size() < 1) throw InvalidArgument("FockVector: empty amplitude list");
  }

  int cutoff() const { return static_cast<int>(amps_.size()) - 1; }
  int dim() const { return static_cast<int>(amps_.size()); }
  const Eigen::VectorXcd& amps() const { return amps_; }
  Complex operator[](int k) const { return amps_(k); }

  /// Keeps levels 0..cutoff, zero-padding when growing.
  FockVector resized(int cutoff) const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(cutoff + 1);
    const int n = std::min(cutoff + 1, dim());
    out.head(n) = amps_.head(n);
    return FockVector(std::move(out));
  }

 private:
  Eigen::VectorXcd amps_;
};

/// Operator in the truncated Fock basis.
class FockOperator {
 public:
  explicit FockOperator(Eigen::MatrixXcd mat) : mat_(std::move(mat)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() < 1) {
      throw InvalidArgument("FockOperator: matrix must be square and nonempty");
    }
  }

  int cutoff() const { return static_cast<int>(mat_.rows()) - 1; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXcd& mat() const { return mat_; }
  Complex operator()(int row, int col) const { return mat_(row, col); }

  FockOperator adjoint() const { return FockOperator(mat_.adjoint()); }

  /// Top-left block up to photon number `cutoff`, zero-padded when growing.
  FockOperator resized(int cutoff) const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
    const int n = std::min(cutoff + 1, dim());
    out.topLeftCorner(n, n) = mat_.topLeftCorner(n, n);
    return FockOperator(std::move(out));
  }

  friend FockOperator operator*(const FockOperator& a, const FockOperator& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("FockOperator product: cutoff mismatch");
    return FockOperator(a.mat_ * b.mat_);
  }
  friend FockOperator operator+(const FockOperator& a, const FockOperator& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("FockOperator sum: cutoff mismatch");
    return FockOperator(a.mat_ + b.mat_);
  }
  friend FockOperator operator-(const FockOperator& a, const FockOperator& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("FockOperator difference: cutoff mismatch");
    return FockOperator(a.mat_ - b.mat_);
  }
  friend FockOperator operator*(Complex c, const FockOperator& a) {
    return FockOperator(c * a.mat_);
  }

 private:
  Eigen::MatrixXcd mat_;
};

// --- basic linear algebra ----------------------------------------------------

inline FockVector apply(const FockOperator& op, const FockVector& v) {
  if (op.dim() != v.dim()) throw DimensionMismatch("apply: cutoff mismatch");
  return FockVector(op.mat() * v.amps());
}

/// <u|v>, antilinear in the first argument.
inline Complex inner(const FockVector& u, const FockVector& v) {
  if (u.dim() != v.dim()) throw DimensionMismatch("inner: cutoff mismatch");
  return u.amps().dot(v.amps());
}

inline double norm(const FockVector& v) { return v.amps().norm(); }

inline FockVector normalize(const FockVector& v) {
  const double n = norm(v);
  if (!(n > 0.0)) throw InvalidArgument("normalize: zero vector");
  return FockVector(v.amps() / n);
}

/// |<u|v>| for normalized u, v.
inline double fidelity(const FockVector& u, const FockVector& v) {
  return std::abs(inner(u, v));
}

/// Probability mass from level `from` upward, relative to the total.
inline double tail_mass(const FockVector& v, int from) {
  const double total = v.amps().squaredNorm();
  if (!(total > 0.0)) return 0.0;
  if (from > v.cutoff()) return 0.0;
  return v.amps().tail(v.dim() - from).squaredNorm() / total;
}

inline void require_tail(const FockVector& v, const TruncationPolicy& policy,
                         const char* what) {
  const double mass = tail_mass(v, policy.tail_start());
  if (mass > policy.tail_tol()) throw TruncationError(what, mass);
}

// --- ladder and diagonal operators -------------------------------------------

inline FockOperator identity_op(const TruncationPolicy& policy) {
  return FockOperator(Eigen::MatrixXcd::Identity(policy.dim(), policy.dim()));
}

inline FockOperator annihilation_op(const TruncationPolicy& policy) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(policy.dim(), policy.dim());
  for (int k = 1; k < policy.dim(); ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
  return FockOperator(std::move(m));
}

inline FockOperator creation_op(const TruncationPolicy& policy) {
  return annihilation_op(policy).adjoint();
}

inline FockOperator number_op(const TruncationPolicy& policy) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(policy.dim(), policy.dim());
  for (int k = 0; k < policy.dim(); ++k) m(k, k) = static_cast<double>(k);
  return FockOperator(std::move(m));
}

/// op^p by repeated multiplication (p >= 0).
inline FockOperator power(const FockOperator& op, int p) {
  if (p < 0) throw InvalidArgument("power: negative exponent");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(op.dim(), op.dim());
  for (int i = 0; i < p; ++i) out = out * op.mat();
  return FockOperator(std::move(out));
}

// --- states -------------------------------------------------------------------

inline FockVector fock_state(int n, const TruncationPolicy& policy) {
  if (n < 0) throw InvalidArgument("fock_state: negative photon number");
  if (n > policy.cutoff()) throw CutoffExceeded("fock_state: n exceeds the cutoff");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(policy.dim());
  amps(n) = 1.0;
  return FockVector(std::move(amps));
}

/// Probability mass of the Poisson(|alpha|^2) distribution at k >= from.
inline double coherent_tail_mass(Complex alpha, int from) {
  const double x = std::norm(alpha);
  if (from <= 0) return 1.0;
  if (x == 0.0) return 0.0;
  const double log_x = std::log(x);
  double sum = 0.0;
  for (int k = from;; ++k) {
    const double term = std::exp(k * log_x - x - log_factorial(k));
    sum += term;
    if (k > x && term < 1e-30 * sum) break;
    if (k > from + 100000) break;
  }
  return sum;
}

namespace detail {

/// Exact coherent amplitudes e^{-|a|^2/2} a^k / sqrt(k!) for k <= cutoff,
/// without renormalization.
inline Eigen::VectorXcd coherent_amplitudes(Complex alpha, int cutoff) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(cutoff + 1);
  const double r = std::abs(alpha);
  if (r == 0.0) {
    amps(0) = 1.0;
    return amps;
  }
  const double phase = std::arg(alpha);
  const double log_r = std::log(r);
  for (int k = 0; k <= cutoff; ++k) {
    const double log_mag = -0.5 * r * r + k * log_r - 0.5 * log_factorial(k);
    amps(k) = std::polar(std::exp(log_mag), k * phase);
  }
  return amps;
}

/// Displacement matrix elements <m|D(alpha)|n>, 0 <= m, n <= cutoff, from the
/// associated-Laguerre closed form. Each element is exact; only the
/// truncation of the basis is approximate.
inline Eigen::MatrixXcd displacement_matrix(Complex alpha, int cutoff) {
  const int dim = cutoff + 1;
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(dim, dim);
  const double r = std::abs(alpha);
  if (r == 0.0) return Eigen::MatrixXcd::Identity(dim, dim);
  const double x = r * r;
  const double log_r = std::log(r);
  const double phase = std::arg(alpha);
  // <n + a|D|n> = sqrt(n!/(n+a)!) alpha^a e^{-x/2} L_n^a(x), a >= 0, and
  // <n|D|n + a> = sqrt(n!/(n+a)!) (-alpha*)^a e^{-x/2} L_n^a(x).
  for (int a = 0; a < dim; ++a) {
    double prev = 1.0;
    double cur = 1.0 + a - x;
    for (int n = 0; n + a < dim; ++n) {
      double lag;
      if (n == 0) {
        lag = 1.0;
      } else if (n == 1) {
        lag = cur;
      } else {
        const double next = ((2.0 * (n - 1) + 1.0 + a - x) * cur - (n - 1.0 + a) * prev) / n;
        prev = cur;
        cur = next;
        lag = cur;
      }
      const double log_mag =
          0.5 * (log_factorial(n) - log_factorial(n + a)) - 0.5 * x + a * log_r;
      const double mag = std::exp(log_mag) * lag;
      d(n + a, n) = std::polar(1.0, a * phase) * mag;
      if (a > 0) {
        const double sign = (a % 2 == 0) ? 1.0 : -1.0;
        d(n, n + a) = std::polar(sign, -a * phase) * mag;
      }
    }
  }
  return d;
}

/// Extra Fock levels needed so that D(alpha) acting on levels <= base is
/// represented without edge loss: the classical turning point
/// (sqrt(base) + |alpha|)^2 plus a margin of several widths.
inline int spread_cutoff(int base, double displacement) {
  const double edge = std::sqrt(static_cast<double>(base)) + displacement + 6.0;
  return std::max(base, static_cast<int>(std::ceil(edge * edge)) + 8);
}

}  // namespace detail

/// |alpha>, truncated and renormalized. Throws TruncationError when the
/// Poisson mass above the top-10% threshold exceeds the policy tolerance.
inline FockVector coherent_state(Complex alpha, const TruncationPolicy& policy) {
  const double mass = coherent_tail_mass(alpha, policy.tail_start());
  if (mass > policy.tail_tol()) throw TruncationError("coherent_state: amplitude too large for cutoff", mass);
  return normalize(FockVector(detail::coherent_amplitudes(alpha, policy.cutoff())));
}

/// D(alpha) = exp(alpha a^dagger - alpha^* a) in the truncated basis.
inline FockOperator displacement_op(Complex alpha, const TruncationPolicy& policy) {
  const double mass = coherent_tail_mass(alpha, policy.tail_start());
  if (mass > policy.tail_tol()) throw TruncationError("displacement_op: amplitude too large for cutoff", mass);
  return FockOperator(detail::displacement_matrix(alpha, policy.cutoff()));
}

/// T^n: diagonal with entries T^k.
inline FockOperator attenuation_op(Complex t, const TruncationPolicy& policy) {
  if (t == Complex(0.0)) throw DegenerateBeamSplitter("attenuation_op: T = 0");
  if (std::abs(t) > 1.0 + 1e-12) throw InvalidArgument("attenuation_op: |T| > 1");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(policy.dim(), policy.dim());
  Complex p(1.0);
  for (int k = 0; k < policy.dim(); ++k) {
    m(k, k) = p;
    p *= t;
  }
  return FockOperator(std::move(m));
}

/// Hermite functions h_k(x) = pi^{-1/4} e^{-x^2/2} H_k(x) / sqrt(2^k k!),
/// k = 0..cutoff, by the normalized (overflow-free) recurrence.
inline std::vector<double> hermite_functions(double x, int cutoff) {
  std::vector<double> h(cutoff + 1);
  h[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (cutoff >= 1) h[1] = std::sqrt(2.0) * x * h[0];
  for (int k = 1; k < cutoff; ++k) {
    h[k + 1] = std::sqrt(2.0 / (k + 1)) * x * h[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * h[k - 1];
  }
  return h;
}

/// Quadrature eigenstate |x, phi> projected on the truncated basis:
/// amps_k = e^{i k phi} h_k(x). Rejects |x| beyond the classical turning
/// point sqrt(2 N_c + 1) of the top level, where the basis cannot resolve x.
inline FockVector quadrature_state(double x, double phi, const TruncationPolicy& policy) {
  if (std::abs(x) > std::sqrt(2.0 * policy.cutoff() + 1.0)) {
    throw TruncationError("quadrature_state: |x| beyond the turning point of the top level",
                          1.0);
  }
  const auto h = hermite_functions(x, policy.cutoff());
  Eigen::VectorXcd amps(policy.dim());
  for (int k = 0; k < policy.dim(); ++k) amps(k) = std::polar(h[k], k * phi);
  return FockVector(std::move(amps));
}

/// Mean photon number of a (not necessarily normalized) state.
inline double mean_photon_number(const FockVector& v) {
  double num = 0.0;
  for (int k = 0; k < v.dim(); ++k) num += k * std::norm(v[k]);
  return num / v.amps().squaredNorm();
}

}  // namespace condibeam
